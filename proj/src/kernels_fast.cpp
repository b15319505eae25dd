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

#include <algorithm>
#include <cstdint>
#include <vector>

#include "kernels_common.hpp"
#include "qtn/tensor.hpp"

namespace qtn::kernels {

namespace {

// Gathers the bits of x selected by mask into the low bits of the result,
// preserving their order.
std::size_t extract_bits(std::size_t x, std::size_t mask) {
    std::size_t out = 0;
    std::size_t bit = 1;
    while (mask != 0) {
        std::size_t low = mask & (~mask + 1);
        if (x & low) out |= bit;
        bit <<= 1;
        mask &= mask - 1;
    }
    return out;
}

constexpr std::size_t kParallelMinElements = 1 << 12;

}  // namespace

Tensor contract_fast(const Bucket& b) {
    detail::check_bucket(b);
    std::vector<IndexId> result = bucket_result_indices(b);
    const int r = static_cast<int>(result.size());
    const std::size_t n_tensors = b.tensors.size();

    // Bring every member into the common order [bucket, result...]: the bucket
    // axis becomes the slowest one and the remaining axes follow the output.
    std::vector<Tensor> members;
    members.reserve(n_tensors);
    std::vector<std::size_t> masks(n_tensors, 0);
    std::vector<std::size_t> bucket_stride(n_tensors, 0);
    for (std::size_t t = 0; t < n_tensors; ++t) {
        const Tensor& src = b.tensors[t];
        std::vector<IndexId> order;
        order.reserve(src.rank());
        order.push_back(b.index);
        for (IndexId id : src.indices()) {
            if (id != b.index) order.push_back(id);
        }
        std::sort(order.begin() + 1, order.end());
        for (auto it = order.begin() + 1; it != order.end(); ++it) {
            auto pos = std::lower_bound(result.begin(), result.end(), *it) - result.begin();
            masks[t] |= std::size_t{1} << (r - 1 - pos);
        }
        bucket_stride[t] = std::size_t{1} << (src.rank() - 1);
        members.push_back(std::equal(order.begin(), order.end(), src.indices().begin())
                              ? src
                              : permute(src, order));
    }

    // Offsets split over low/high halves of the output index so that the
    // lookup tables stay O(2^(r/2)).
    const int lo_bits = r / 2;
    const std::size_t n_lo = std::size_t{1} << lo_bits;
    const std::size_t n_hi = std::size_t{1} << (r - lo_bits);
    std::vector<std::size_t> lo_tab(n_tensors * n_lo);
    std::vector<std::size_t> hi_tab(n_tensors * n_hi);
    for (std::size_t t = 0; t < n_tensors; ++t) {
        for (std::size_t x = 0; x < n_lo; ++x) {
            lo_tab[t * n_lo + x] = extract_bits(x, masks[t] & (n_lo - 1));
        }
        for (std::size_t y = 0; y < n_hi; ++y) {
            hi_tab[t * n_hi + y] = extract_bits(y << lo_bits, masks[t]);
        }
    }

    std::vector<const Complex*> ptr(n_tensors);
    for (std::size_t t = 0; t < n_tensors; ++t) ptr[t] = members[t].data().data();

    std::vector<Complex> out(std::size_t{1} << r);
    const auto total = static_cast<std::int64_t>(n_hi);

#pragma omp parallel if (out.size() >= kParallelMinElements)
    {
        std::vector<std::size_t> base(n_tensors);
#pragma omp for schedule(static)
        for (std::int64_t hi = 0; hi < total; ++hi) {
            for (std::size_t t = 0; t < n_tensors; ++t) base[t] = hi_tab[t * n_hi + hi];
            Complex* dst = out.data() + (static_cast<std::size_t>(hi) << lo_bits);
            for (std::size_t lo = 0; lo < n_lo; ++lo) {
                Complex p0{1.0, 0.0};
                Complex p1{1.0, 0.0};
                for (std::size_t t = 0; t < n_tensors; ++t) {
                    const std::size_t off = base[t] + lo_tab[t * n_lo + lo];
                    p0 = detail::cmul(p0, ptr[t][off]);
                    p1 = detail::cmul(p1, ptr[t][off + bucket_stride[t]]);
                }
                dst[lo] = p0 + p1;
            }
        }
    }
    return Tensor(std::move(result), std::move(out));
}

}  // namespace qtn::kernels
