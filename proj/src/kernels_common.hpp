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

#include <stdexcept>

#include "qtn/tensor.hpp"

namespace qtn::kernels::detail {

// Plain complex product. Both kernels use it so their results agree bitwise
// and avoid the NaN-recovery path of std::complex operator*.
inline Complex cmul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline void check_bucket(const Bucket& b) {
    if (b.tensors.empty()) {
        throw std::invalid_argument("empty bucket");
    }
    for (const auto& t : b.tensors) {
        if (!t.contains(b.index)) {
            throw std::invalid_argument("bucket member does not carry the bucket index");
        }
    }
}

}  // namespace qtn::kernels::detail
