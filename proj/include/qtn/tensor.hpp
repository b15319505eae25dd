// Copyright 2026 The qtn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qtn {

using Complex = std::complex<double>;

/// Label of a network index. Every index has dimension 2.
enum class IndexId : std::uint32_t {};

constexpr std::uint32_t value_of(IndexId id) { return static_cast<std::uint32_t>(id); }
constexpr IndexId make_index(std::uint32_t v) { return static_cast<IndexId>(v); }

/// Dense complex tensor over binary indices.
///
/// Data is row-major with the last listed index varying fastest, so the
/// element for assignment (b_0, ..., b_{r-1}) lives at sum_k b_k << (r-1-k).
class Tensor {
   public:
    /// Rank-0 tensor holding `value`.
    explicit Tensor(Complex value = Complex{1.0, 0.0});
    Tensor(std::vector<IndexId> indices, std::vector<Complex> data);

    std::span<const IndexId> indices() const { return indices_; }
    std::span<const Complex> data() const { return data_; }
    int rank() const { return static_cast<int>(indices_.size()); }
    std::size_t size() const { return data_.size(); }
    std::size_t bytes() const { return data_.size() * sizeof(Complex); }

    bool contains(IndexId id) const;
    /// Position of `id` in indices(), or -1.
    int position_of(IndexId id) const;

    /// Value of a rank-0 tensor.
    Complex scalar() const;

    /// Same data under different labels (must have the same rank, no duplicates).
    Tensor relabeled(std::vector<IndexId> indices) const;

    /// Restriction to id == value; the result drops `id`.
    Tensor fixed(IndexId id, int value) const;

    /// Element-wise complex conjugate.
    Tensor conjugated() const;

   private:
    std::vector<IndexId> indices_;
    std::vector<Complex> data_;
};

/// A bucket index together with every tensor that carries it.
struct Bucket {
    IndexId index{};
    std::vector<Tensor> tensors;
};

/// Kernel selection for bucket contraction.
struct Backend {
    enum class Kind { Reference, Fast, Mixed };

    static constexpr int kDefaultThreshold = 11;

    Kind kind = Kind::Reference;
    /// Only meaningful for Mixed: result rank <= threshold runs Reference.
    int threshold = kDefaultThreshold;

    static Backend reference() { return {Kind::Reference, kDefaultThreshold}; }
    static Backend fast() { return {Kind::Fast, kDefaultThreshold}; }
    static Backend mixed(int threshold = kDefaultThreshold);

    /// Kernel actually used for a bucket whose result has rank `width`.
    Kind route(int width) const;
};

std::string_view to_string(Backend::Kind kind);
/// Parses "reference", "fast" or "mixed".
Backend::Kind parse_backend_kind(std::string_view name);

struct BucketStats {
    IndexId bucket_index{};
    /// Rank of the bucket's result tensor.
    int width = 0;
    std::int64_t elapsed_ns = 0;
    /// Reference or Fast; never Mixed.
    Backend::Kind backend_used = Backend::Kind::Reference;
};

/// Bytes needed to hold a complex128 tensor of the given rank: 16 * 2^width.
std::uint64_t memory_estimate(int width);

/// Reorders `t` so that its indices appear in `new_order`.
Tensor permute(const Tensor& t, std::span<const IndexId> new_order);

/// Sorted union of the member indices minus the bucket index.
std::vector<IndexId> bucket_result_indices(const Bucket& b);

namespace kernels {

/// Serial nested-assignment contraction. Kept as the ground truth for testing.
Tensor contract_reference(const Bucket& b);

/// Permute-and-broadcast contraction, parallel over output elements.
Tensor contract_fast(const Bucket& b);

}  // namespace kernels

/// Contracts a bucket with the requested backend and times the numeric kernel.
std::pair<Tensor, BucketStats> contract_bucket(const Bucket& b, const Backend& backend);

}  // namespace qtn
