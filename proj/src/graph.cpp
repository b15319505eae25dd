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
#include <string>

#include "qtn/circuit.hpp"
#include "qtn/random.hpp"

namespace qtn {

Graph::Graph(int n_nodes, std::vector<std::pair<int, int>> edges) : n_nodes_(n_nodes) {
    if (n_nodes < 0) throw std::invalid_argument("negative node count");
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n_nodes || v >= n_nodes) {
            throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                        ") out of range");
        }
        if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw std::invalid_argument("duplicate edge");
    }
    edges_ = std::move(edges);
}

int Graph::degree(int node) const {
    return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                          [&](const auto& e) { return e.first == node || e.second == node; }));
}

Graph random_regular_graph(int n, int d, std::uint64_t seed) {
    if (n < 1 || d < 0 || d >= n || (static_cast<long>(n) * d) % 2 != 0) {
        throw std::invalid_argument("degree sequence infeasible");
    }
    constexpr int kMaxAttempts = 1'000'000;
    Rng rng(seed);
    std::vector<int> points(static_cast<std::size_t>(n) * d);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<int>(i) / d;
        for (std::size_t i = points.size(); i > 1; --i) {
            std::swap(points[i - 1], points[rng.below(i)]);
        }
        std::vector<std::pair<int, int>> edges;
        edges.reserve(points.size() / 2);
        bool simple = true;
        for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
            int u = std::min(points[i], points[i + 1]);
            int v = std::max(points[i], points[i + 1]);
            if (u == v) {
                simple = false;
                break;
            }
            edges.emplace_back(u, v);
        }
        if (!simple) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        return Graph(n, std::move(edges));
    }
    throw std::runtime_error("pairing model did not produce a simple graph");
}

}  // namespace qtn
