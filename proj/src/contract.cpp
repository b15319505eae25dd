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

#include <chrono>

#include "qtn/tensor.hpp"

namespace qtn {

std::pair<Tensor, BucketStats> contract_bucket(const Bucket& b, const Backend& backend) {
    if (b.tensors.empty()) {
        throw std::invalid_argument("empty bucket");
    }
    BucketStats stats;
    stats.bucket_index = b.index;
    stats.width = static_cast<int>(bucket_result_indices(b).size());
    stats.backend_used = backend.route(stats.width);

    const auto start = std::chrono::steady_clock::now();
    Tensor out = stats.backend_used == Backend::Kind::Fast ? kernels::contract_fast(b)
                                                           : kernels::contract_reference(b);
    const auto stop = std::chrono::steady_clock::now();
    stats.elapsed_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
    return {std::move(out), stats};
}

}  // namespace qtn
