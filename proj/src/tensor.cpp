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

#include "qtn/tensor.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qtn {

namespace {

void check_unique(std::span<const IndexId> indices) {
    std::vector<IndexId> sorted(indices.begin(), indices.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("duplicate index in tensor");
    }
}

}  // namespace

Tensor::Tensor(Complex value) : data_{value} {}

Tensor::Tensor(std::vector<IndexId> indices, std::vector<Complex> data)
    : indices_(std::move(indices)), data_(std::move(data)) {
    if (indices_.size() >= 63) {
        throw std::invalid_argument("tensor rank too large");
    }
    if (data_.size() != (std::size_t{1} << indices_.size())) {
        throw std::invalid_argument("tensor data length " + std::to_string(data_.size()) +
                                    " does not match rank " + std::to_string(indices_.size()));
    }
    check_unique(indices_);
}

bool Tensor::contains(IndexId id) const { return position_of(id) >= 0; }

int Tensor::position_of(IndexId id) const {
    auto it = std::find(indices_.begin(), indices_.end(), id);
    return it == indices_.end() ? -1 : static_cast<int>(it - indices_.begin());
}

Complex Tensor::scalar() const {
    if (!indices_.empty()) {
        throw std::logic_error("scalar() on a tensor of rank " + std::to_string(rank()));
    }
    return data_[0];
}

Tensor Tensor::relabeled(std::vector<IndexId> indices) const {
    if (indices.size() != indices_.size()) {
        throw std::invalid_argument("relabel rank mismatch");
    }
    return Tensor(std::move(indices), data_);
}

Tensor Tensor::fixed(IndexId id, int value) const {
    const int pos = position_of(id);
    if (pos < 0) {
        throw std::invalid_argument("fixed index not in tensor");
    }
    if (value != 0 && value != 1) {
        throw std::invalid_argument("index value must be 0 or 1");
    }
    const int r = rank();
    const std::size_t stride = std::size_t{1} << (r - 1 - pos);
    std::vector<IndexId> out_indices;
    out_indices.reserve(r - 1);
    for (int k = 0; k < r; ++k) {
        if (k != pos) out_indices.push_back(indices_[k]);
    }
    std::vector<Complex> out(data_.size() / 2);
    // Split each flat index around the removed bit.
    for (std::size_t o = 0; o < out.size(); ++o) {
        std::size_t lo = o & (stride - 1);
        std::size_t hi = (o - lo) << 1;
        out[o] = data_[hi | (value ? stride : 0) | lo];
    }
    return Tensor(std::move(out_indices), std::move(out));
}

Tensor Tensor::conjugated() const {
    std::vector<Complex> out(data_.size());
    std::transform(data_.begin(), data_.end(), out.begin(), [](Complex z) { return std::conj(z); });
    return Tensor(indices_, std::move(out));
}

Backend Backend::mixed(int threshold) {
    if (threshold < 0) {
        throw std::invalid_argument("mixed threshold must be >= 0");
    }
    return {Kind::Mixed, threshold};
}

Backend::Kind Backend::route(int width) const {
    switch (kind) {
        case Kind::Reference:
            return Kind::Reference;
        case Kind::Fast:
            return Kind::Fast;
        case Kind::Mixed:
            return width > threshold ? Kind::Fast : Kind::Reference;
    }
    return Kind::Reference;
}

std::string_view to_string(Backend::Kind kind) {
    switch (kind) {
        case Backend::Kind::Reference:
            return "reference";
        case Backend::Kind::Fast:
            return "fast";
        case Backend::Kind::Mixed:
            return "mixed";
    }
    return "?";
}

Backend::Kind parse_backend_kind(std::string_view name) {
    if (name == "reference") return Backend::Kind::Reference;
    if (name == "fast") return Backend::Kind::Fast;
    if (name == "mixed") return Backend::Kind::Mixed;
    throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

std::uint64_t memory_estimate(int width) {
    if (width < 0 || width > 59) {
        throw std::invalid_argument("width out of range: " + std::to_string(width));
    }
    return std::uint64_t{16} << width;
}

Tensor permute(const Tensor& t, std::span<const IndexId> new_order) {
    const int r = t.rank();
    if (static_cast<int>(new_order.size()) != r) {
        throw std::invalid_argument("permutation has wrong length");
    }
    // stride in the source for each destination axis
    std::vector<std::size_t> src_stride(r);
    std::vector<bool> seen(r, false);
    for (int k = 0; k < r; ++k) {
        const int pos = t.position_of(new_order[k]);
        if (pos < 0 || seen[pos]) {
            throw std::invalid_argument("new order is not a permutation of the tensor indices");
        }
        seen[pos] = true;
        src_stride[k] = std::size_t{1} << (r - 1 - pos);
    }
    auto src = t.data();
    std::vector<Complex> out(src.size());
    // Odometer over destination assignments, tracking the source offset.
    std::vector<int> digit(r, 0);
    std::size_t offset = 0;
    for (std::size_t o = 0; o < out.size(); ++o) {
        out[o] = src[offset];
        for (int k = r - 1; k >= 0; --k) {
            if (digit[k] == 0) {
                digit[k] = 1;
                offset += src_stride[k];
                break;
            }
            digit[k] = 0;
            offset -= src_stride[k];
        }
    }
    return Tensor(std::vector<IndexId>(new_order.begin(), new_order.end()), std::move(out));
}

std::vector<IndexId> bucket_result_indices(const Bucket& b) {
    std::vector<IndexId> out;
    for (const auto& t : b.tensors) {
        for (IndexId id : t.indices()) {
            if (id != b.index) out.push_back(id);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace qtn
