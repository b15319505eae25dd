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
#include <stdexcept>

#include "kernels_common.hpp"
#include "qtn/tensor.hpp"

namespace qtn::kernels {

Tensor contract_reference(const Bucket& b) {
    detail::check_bucket(b);
    std::vector<IndexId> result = bucket_result_indices(b);
    const int r = static_cast<int>(result.size());

    // For each member, the source of every axis: -1 for the bucket index,
    // otherwise the bit of the output assignment (last index fastest).
    std::vector<std::vector<int>> axis_bit(b.tensors.size());
    for (std::size_t t = 0; t < b.tensors.size(); ++t) {
        for (IndexId id : b.tensors[t].indices()) {
            if (id == b.index) {
                axis_bit[t].push_back(-1);
            } else {
                auto pos = std::lower_bound(result.begin(), result.end(), id) - result.begin();
                axis_bit[t].push_back(r - 1 - static_cast<int>(pos));
            }
        }
    }

    std::vector<Complex> out(std::size_t{1} << r);
    for (std::size_t o = 0; o < out.size(); ++o) {
        Complex acc{0.0, 0.0};
        for (std::size_t bucket_value = 0; bucket_value < 2; ++bucket_value) {
            Complex prod{1.0, 0.0};
            for (std::size_t t = 0; t < b.tensors.size(); ++t) {
                const auto& bits = axis_bit[t];
                const int rank = static_cast<int>(bits.size());
                std::size_t offset = 0;
                for (int k = 0; k < rank; ++k) {
                    std::size_t v = bits[k] < 0 ? bucket_value : (o >> bits[k]) & 1U;
                    offset |= v << (rank - 1 - k);
                }
                prod = detail::cmul(prod, b.tensors[t].data()[offset]);
            }
            acc += prod;
        }
        out[o] = acc;
    }
    return Tensor(std::move(result), std::move(out));
}

}  // namespace qtn::kernels
