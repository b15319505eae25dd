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
#include <exception>
#include <stdexcept>

#include "ordering_internal.hpp"
#include "qtn/ordering.hpp"

namespace qtn {

namespace {

int max_width(const std::vector<detail::SymbolicStep>& steps) {
    int w = 0;
    for (const auto& s : steps) w = std::max(w, s.width);
    return w;
}

}  // namespace

std::vector<IndexId> suggest_slicing(const TensorNetwork& tn, const EliminationOrder& order, int target_width) {
    if (target_width < 1) throw std::invalid_argument("target width must be >= 1");
    detail::PositionMap pos(tn, order);
    const auto sets = detail::position_sets(tn, pos);
    const std::size_t n = order.order.size();
    std::vector<char> removed(n, 0);
    std::vector<IndexId> picked;

    while (true) {
        const auto steps = detail::symbolic_elimination(sets, n, removed);
        if (max_width(steps) <= target_width) return picked;

        const auto widest = std::max_element(steps.begin(), steps.end(),
                                             [](const auto& a, const auto& b) { return a.width < b.width; });
        std::vector<int> candidates = widest->result;
        candidates.push_back(widest->position);

        int best = -1;
        int best_width = 0;
        for (int c : candidates) {
            removed[c] = 1;
            const int w = max_width(detail::symbolic_elimination(sets, n, removed));
            removed[c] = 0;
            if (best < 0 || w < best_width || (w == best_width && order.order[c] < order.order[best])) {
                best = c;
                best_width = w;
            }
        }
        removed[best] = 1;
        picked.push_back(order.order[best]);
    }
}

TensorNetwork slice_network(const TensorNetwork& tn, std::span<const IndexId> sliced, std::uint64_t assignment) {
    const std::size_t s = sliced.size();
    if (s >= 64) throw std::invalid_argument("too many sliced indices");
    TensorNetwork out;
    out.index_count = tn.index_count;
    out.open_indices = tn.open_indices;
    out.tensors.reserve(tn.tensors.size());
    for (const auto& t : tn.tensors) {
        Tensor cur = t;
        for (std::size_t k = 0; k < s; ++k) {
            if (cur.contains(sliced[k])) {
                cur = cur.fixed(sliced[k], static_cast<int>((assignment >> (s - 1 - k)) & 1U));
            }
        }
        out.tensors.push_back(std::move(cur));
    }
    return out;
}

EliminationOrder remove_indices(const EliminationOrder& order, std::span<const IndexId> removed) {
    EliminationOrder out;
    for (IndexId id : order.order) {
        if (std::find(removed.begin(), removed.end(), id) == removed.end()) out.order.push_back(id);
    }
    return out;
}

Complex contract_sliced(const TensorNetwork& tn, const EliminationOrder& order, std::span<const IndexId> sliced,
                        const Backend& backend, std::uint64_t mem_cap) {
    if (sliced.size() >= 31) throw std::invalid_argument("too many sliced indices");
    const EliminationOrder reduced = remove_indices(order, sliced);
    const auto n_slices = static_cast<std::int64_t>(1) << sliced.size();
    std::vector<Complex> partial(n_slices);
    std::vector<std::exception_ptr> errors(n_slices);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t a = 0; a < n_slices; ++a) {
        try {
            partial[a] = contract_network(slice_network(tn, sliced, a), reduced, backend, mem_cap).value;
        } catch (...) {
            errors[a] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    Complex sum{0.0, 0.0};
    for (const auto& v : partial) sum += v;
    return sum;
}

}  // namespace qtn
