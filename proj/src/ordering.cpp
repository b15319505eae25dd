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

#include "qtn/ordering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

#include "ordering_internal.hpp"
#include "qtn/errors.hpp"

namespace qtn {

std::string_view to_string(Heuristic h) { return h == Heuristic::MinFill ? "minfill" : "mindegree"; }

Heuristic parse_heuristic(std::string_view name) {
    if (name == "minfill") return Heuristic::MinFill;
    if (name == "mindegree") return Heuristic::MinDegree;
    throw std::invalid_argument("unknown heuristic '" + std::string(name) + "'");
}

LineGraph line_graph(const TensorNetwork& tn) {
    LineGraph g;
    for (const auto& t : tn.tensors) {
        for (IndexId a : t.indices()) {
            auto& row = g.adjacency[a];
            for (IndexId b : t.indices()) {
                if (a != b) row.insert(b);
            }
        }
    }
    return g;
}

namespace {

// Adjacency as one bitset row per vertex.
class BitGraph {
   public:
    explicit BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    std::uint64_t* row(std::size_t v) { return bits_.data() + v * words_; }
    const std::uint64_t* row(std::size_t v) const { return bits_.data() + v * words_; }

    void connect(std::size_t a, std::size_t b) {
        row(a)[b / 64] |= std::uint64_t{1} << (b % 64);
        row(b)[a / 64] |= std::uint64_t{1} << (a % 64);
    }
    void clear_bit(std::size_t v, std::size_t b) { row(v)[b / 64] &= ~(std::uint64_t{1} << (b % 64)); }

    std::vector<std::size_t> neighbors(std::size_t v) const {
        std::vector<std::size_t> out;
        const auto* r = row(v);
        for (std::size_t w = 0; w < words_; ++w) {
            for (std::uint64_t bits = r[w]; bits != 0; bits &= bits - 1) {
                out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            }
        }
        return out;
    }

    int common(std::size_t a, std::size_t b) const {
        int c = 0;
        const auto* ra = row(a);
        const auto* rb = row(b);
        for (std::size_t w = 0; w < words_; ++w) c += std::popcount(ra[w] & rb[w]);
        return c;
    }

    std::size_t words() const { return words_; }

   private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

std::int64_t score_of(const BitGraph& g, std::size_t v, Heuristic h) {
    auto nbrs = g.neighbors(v);
    const auto d = static_cast<std::int64_t>(nbrs.size());
    if (h == Heuristic::MinDegree) return d;
    std::int64_t linked = 0;
    for (std::size_t a : nbrs) linked += g.common(v, a);
    return (d * (d - 1) - linked) / 2;
}

void require_closed(const TensorNetwork& tn) {
    if (!tn.closed()) throw std::invalid_argument("network has open indices");
}

}  // namespace

EliminationOrder greedy_order(const TensorNetwork& tn, Heuristic heuristic) {
    require_closed(tn);
    const std::vector<IndexId> ids = tn.all_indices();
    const std::size_t n = ids.size();
    BitGraph g(n);
    auto dense = [&](IndexId id) { return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()); };
    for (const auto& t : tn.tensors) {
        std::vector<std::size_t> v;
        for (IndexId id : t.indices()) v.push_back(dense(id));
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = i + 1; j < v.size(); ++j) g.connect(v[i], v[j]);
        }
    }

    std::vector<std::int64_t> score(n);
    std::set<std::pair<std::int64_t, std::size_t>> queue;
    for (std::size_t v = 0; v < n; ++v) {
        score[v] = score_of(g, v, heuristic);
        queue.emplace(score[v], v);
    }
    std::vector<char> alive(n, 1);

    EliminationOrder out;
    out.order.reserve(n);
    std::vector<std::uint64_t> clique(g.words());
    while (!queue.empty()) {
        const std::size_t v = queue.begin()->second;
        queue.erase(queue.begin());
        alive[v] = 0;
        out.order.push_back(ids[v]);

        const auto nbrs = g.neighbors(v);
        std::copy(g.row(v), g.row(v) + g.words(), clique.begin());
        std::fill(g.row(v), g.row(v) + g.words(), 0);
        for (std::size_t a : nbrs) {
            auto* r = g.row(a);
            for (std::size_t w = 0; w < g.words(); ++w) r[w] |= clique[w];
            g.clear_bit(a, a);
            g.clear_bit(a, v);
        }

        std::vector<std::size_t> affected = nbrs;
        if (heuristic == Heuristic::MinFill) {
            for (std::size_t a : nbrs) {
                auto second = g.neighbors(a);
                affected.insert(affected.end(), second.begin(), second.end());
            }
            std::sort(affected.begin(), affected.end());
            affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
        }
        for (std::size_t x : affected) {
            if (!alive[x]) continue;
            queue.erase({score[x], x});
            score[x] = score_of(g, x, heuristic);
            queue.emplace(score[x], x);
        }
    }
    return out;
}

namespace detail {

PositionMap::PositionMap(const TensorNetwork& tn, const EliminationOrder& order) {
    require_closed(tn);
    std::uint32_t max_id = 0;
    for (IndexId id : order.order) max_id = std::max(max_id, value_of(id));
    for (const auto& t : tn.tensors) {
        for (IndexId id : t.indices()) max_id = std::max(max_id, value_of(id));
    }
    pos_.assign(static_cast<std::size_t>(max_id) + 1, -1);
    for (std::size_t p = 0; p < order.order.size(); ++p) {
        int& slot = pos_[value_of(order.order[p])];
        if (slot >= 0) throw std::invalid_argument("elimination order repeats an index");
        slot = static_cast<int>(p);
    }
    std::vector<char> used(order.order.size(), 0);
    for (const auto& t : tn.tensors) {
        for (IndexId id : t.indices()) {
            const int p = pos_[value_of(id)];
            if (p < 0) {
                throw std::invalid_argument("elimination order is missing index " + std::to_string(value_of(id)));
            }
            used[p] = 1;
        }
    }
    if (std::find(used.begin(), used.end(), 0) != used.end()) {
        throw std::invalid_argument("elimination order has an index not present in the network");
    }
}

std::vector<std::vector<int>> position_sets(const TensorNetwork& tn, const PositionMap& pos) {
    std::vector<std::vector<int>> sets;
    sets.reserve(tn.tensors.size());
    for (const auto& t : tn.tensors) {
        std::vector<int> s;
        for (IndexId id : t.indices()) s.push_back(pos.at(id));
        std::sort(s.begin(), s.end());
        sets.push_back(std::move(s));
    }
    return sets;
}

std::vector<SymbolicStep> symbolic_elimination(const std::vector<std::vector<int>>& sets, std::size_t n_positions,
                                               const std::vector<char>& removed) {
    std::vector<std::vector<std::vector<int>>> buckets(n_positions);
    auto place = [&](std::vector<int> s) {
        if (!removed.empty()) {
            std::erase_if(s, [&](int p) { return removed[p] != 0; });
        }
        if (!s.empty()) buckets[s.front()].push_back(std::move(s));
    };
    for (const auto& s : sets) place(s);

    std::vector<SymbolicStep> steps;
    steps.reserve(n_positions);
    std::vector<int> merged;
    for (std::size_t p = 0; p < n_positions; ++p) {
        if (!removed.empty() && removed[p]) continue;
        if (buckets[p].empty()) continue;
        merged.clear();
        for (const auto& s : buckets[p]) merged.insert(merged.end(), s.begin(), s.end());
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        std::vector<int> result(merged.begin() + 1, merged.end());
        steps.push_back({static_cast<int>(p), static_cast<int>(result.size()), result});
        buckets[p].clear();
        if (!result.empty()) buckets[result.front()].push_back(std::move(result));
    }
    return steps;
}

}  // namespace detail

WidthProfile dry_run(const TensorNetwork& tn, const EliminationOrder& order) {
    detail::PositionMap pos(tn, order);
    auto steps = detail::symbolic_elimination(detail::position_sets(tn, pos), order.order.size(), {});
    WidthProfile profile;
    for (const auto& s : steps) {
        profile.bucket_indices.push_back(order.order[s.position]);
        profile.per_bucket_widths.push_back(s.width);
        profile.contraction_width = std::max(profile.contraction_width, s.width);
    }
    return profile;
}

void write_width_profile_csv(std::ostream& os, const WidthProfile& profile) {
    os << "step,bucket_index,width\n";
    for (std::size_t k = 0; k < profile.per_bucket_widths.size(); ++k) {
        os << k << ',' << value_of(profile.bucket_indices[k]) << ',' << profile.per_bucket_widths[k] << '\n';
    }
}

ContractionResult contract_network(const TensorNetwork& tn, const EliminationOrder& order, const Backend& backend,
                                   std::uint64_t mem_cap, const BucketObserver& observer) {
    const WidthProfile profile = dry_run(tn, order);
    if (profile.contraction_width > 59) {
        throw ResourceLimitError("memory cap exceeded: width " + std::to_string(profile.contraction_width) +
                                 " is not addressable");
    }
    const std::uint64_t need = memory_estimate(profile.contraction_width);
    if (need > mem_cap) {
        throw ResourceLimitError("memory cap exceeded: width " + std::to_string(profile.contraction_width) +
                                 " needs " + std::to_string(need) + " bytes");
    }
    detail::PositionMap pos(tn, order);
    auto earliest = [&](const Tensor& t) {
        int best = -1;
        for (IndexId id : t.indices()) {
            const int p = pos.at(id);
            if (best < 0 || p < best) best = p;
        }
        return best;
    };

    ContractionResult result;
    Complex scalar{1.0, 0.0};
    std::uint64_t live = 0;
    std::vector<std::vector<Tensor>> buckets(order.order.size());
    for (const auto& t : tn.tensors) {
        live += t.bytes();
        if (t.rank() == 0) {
            scalar *= t.scalar();
        } else {
            buckets[earliest(t)].push_back(t);
        }
    }
    result.peak_live_bytes = live;

    for (std::size_t p = 0; p < buckets.size(); ++p) {
        if (buckets[p].empty()) continue;
        Bucket b{order.order[p], std::move(buckets[p])};
        buckets[p].clear();
        if (observer) observer(b);
        auto [out, stats] = contract_bucket(b, backend);
        result.stats.push_back(stats);
        result.peak_live_bytes = std::max(result.peak_live_bytes, live + out.bytes());
        for (const auto& t : b.tensors) live -= t.bytes();
        if (out.rank() == 0) {
            scalar *= out.scalar();
        } else {
            live += out.bytes();
            buckets[earliest(out)].push_back(std::move(out));
        }
    }
    if (!std::isfinite(scalar.real()) || !std::isfinite(scalar.imag())) {
        throw std::overflow_error("contraction produced a non-finite value");
    }
    result.value = scalar;
    return result;
}

}  // namespace qtn
