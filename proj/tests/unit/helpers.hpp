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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qtn/random.hpp"
#include "qtn/tensor.hpp"

namespace qtn::testing {

inline std::vector<Complex> random_data(std::size_t n, Rng& rng) {
    std::vector<Complex> d(n);
    for (auto& x : d) x = {rng.uniform() * 2 - 1, rng.uniform() * 2 - 1};
    return d;
}

inline Tensor random_tensor(std::vector<IndexId> ids, Rng& rng) {
    auto d = random_data(std::size_t{1} << ids.size(), rng);
    return Tensor(std::move(ids), std::move(d));
}

inline std::vector<IndexId> ids(std::initializer_list<std::uint32_t> v) {
    std::vector<IndexId> out;
    for (auto x : v) out.push_back(make_index(x));
    return out;
}

// Element of t at the assignment given by value_at(id) for each of its indices.
template <typename F>
Complex element(const Tensor& t, F value_at) {
    std::size_t off = 0;
    for (IndexId id : t.indices()) off = (off << 1) | static_cast<std::size_t>(value_at(id));
    return t.data()[off];
}

// Bucket contraction by enumerating every joint assignment of all indices.
inline Tensor brute_force_bucket(const Bucket& b) {
    std::vector<IndexId> all;
    for (const auto& t : b.tensors) all.insert(all.end(), t.indices().begin(), t.indices().end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<IndexId> result;
    for (IndexId id : all) {
        if (id != b.index) result.push_back(id);
    }
    std::vector<Complex> out(std::size_t{1} << result.size());
    for (std::size_t a = 0; a < (std::size_t{1} << all.size()); ++a) {
        auto value_at = [&](IndexId id) {
            const auto pos = std::lower_bound(all.begin(), all.end(), id) - all.begin();
            return (a >> (all.size() - 1 - pos)) & 1U;
        };
        Complex prod = 1.0;
        for (const auto& t : b.tensors) prod *= element(t, value_at);
        std::size_t o = 0;
        for (IndexId id : result) o = (o << 1) | value_at(id);
        out[o] += prod;
    }
    return Tensor(result, out);
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace qtn::testing
