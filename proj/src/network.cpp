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

#include "qtn/network.hpp"

namespace qtn {

std::vector<IndexId> TensorNetwork::all_indices() const {
    std::vector<IndexId> out;
    for (const auto& t : tensors) out.insert(out.end(), t.indices().begin(), t.indices().end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Tracks the current index on every qubit wire while gates are appended.
class WireBuilder {
   public:
    explicit WireBuilder(int n_qubits) : wire_(n_qubits, make_index(0)) {}

    void start_zero(int q) {
        wire_[q] = fresh();
        tn_.tensors.emplace_back(std::vector<IndexId>{wire_[q]}, std::vector<Complex>{1.0, 0.0});
    }

    void apply(const Tensor& local, std::span<const int> qubits) {
        std::vector<IndexId> labels;
        labels.reserve(2 * qubits.size());
        std::vector<IndexId> outs;
        for (std::size_t k = 0; k < qubits.size(); ++k) outs.push_back(fresh());
        labels.insert(labels.end(), outs.begin(), outs.end());
        for (int q : qubits) labels.push_back(wire_[q]);
        tn_.tensors.push_back(local.relabeled(std::move(labels)));
        for (std::size_t k = 0; k < qubits.size(); ++k) wire_[qubits[k]] = outs[k];
    }

    // A diagonal gate keeps its qubits' indices: the tensor holds only the diagonal.
    void apply_diagonal(std::vector<Complex> diag, std::span<const int> qubits) {
        std::vector<IndexId> labels;
        for (int q : qubits) labels.push_back(wire_[q]);
        tn_.tensors.emplace_back(std::move(labels), std::move(diag));
    }

    void project(int q, int bit) {
        std::vector<Complex> bra = bit ? std::vector<Complex>{0.0, 1.0} : std::vector<Complex>{1.0, 0.0};
        tn_.tensors.emplace_back(std::vector<IndexId>{wire_[q]}, std::move(bra));
    }

    TensorNetwork finish() { return std::move(tn_); }

   private:
    IndexId fresh() { return make_index(tn_.index_count++); }

    TensorNetwork tn_;
    std::vector<IndexId> wire_;
};

void check_edge(const Circuit& c, std::pair<int, int> edge) {
    auto [u, v] = edge;
    if (u < 0 || v < 0 || u >= c.n_qubits || v >= c.n_qubits || u == v) {
        throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ") invalid for " + std::to_string(c.n_qubits) + " qubits");
    }
}

// Diagonal of a gate's matrix, or empty if the gate is not diagonal.
std::vector<Complex> diagonal_of(const std::vector<Complex>& m, std::size_t dim) {
    std::vector<Complex> d(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if (r != c && m[r * dim + c] != Complex{}) return {};
        }
        d[r] = m[r * dim + r];
    }
    return d;
}

bool is_diagonal(const Gate& g) { return !diagonal_of(gate_matrix(g), std::size_t{1} << g.arity()).empty(); }

void add_gate(WireBuilder& b, const Gate& g, bool adjoint) {
    const std::size_t dim = std::size_t{1} << g.arity();
    auto d = diagonal_of(gate_matrix(g), dim);
    if (d.empty()) {
        b.apply(adjoint ? adjoint_gate_tensor(g) : gate_tensor(g), g.targets());
        return;
    }
    if (adjoint) {
        for (auto& x : d) x = std::conj(x);
    }
    b.apply_diagonal(std::move(d), g.targets());
}

TensorNetwork sandwich(const Circuit& c, std::span<const int> qubits, std::span<const std::size_t> gates,
                       std::pair<int, int> edge) {
    WireBuilder b(c.n_qubits);
    for (int q : qubits) b.start_zero(q);
    for (std::size_t pos : gates) add_gate(b, c.gates[pos], false);
    add_gate(b, Gate::one(GateKind::Z, edge.first), false);
    add_gate(b, Gate::one(GateKind::Z, edge.second), false);
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) add_gate(b, c.gates[*it], true);
    for (int q : qubits) b.project(q, 0);
    return b.finish();
}

}  // namespace

TensorNetwork amplitude_network(const Circuit& c, std::span<const int> bitstring) {
    validate(c);
    if (static_cast<int>(bitstring.size()) != c.n_qubits) {
        throw std::invalid_argument("bitstring length mismatch");
    }
    for (int bit : bitstring) {
        if (bit != 0 && bit != 1) throw std::invalid_argument("bitstring entries must be 0 or 1");
    }
    WireBuilder b(c.n_qubits);
    for (int q = 0; q < c.n_qubits; ++q) b.start_zero(q);
    for (const auto& g : c.gates) b.apply(gate_tensor(g), g.targets());
    for (int q = 0; q < c.n_qubits; ++q) b.project(q, bitstring[q]);
    return b.finish();
}

Lightcone extract_lightcone(const Circuit& c, std::pair<int, int> edge) {
    validate(c);
    check_edge(c, edge);
    // Heisenberg picture, scanning backwards: a qubit is Diagonal while the evolved
    // observable still commutes with its Z, General once a non-diagonal gate hit it.
    enum : char { Outside, Diagonal, General };
    std::vector<char> state(c.n_qubits, Outside);
    state[edge.first] = state[edge.second] = Diagonal;
    Lightcone lc;
    lc.edge = edge;
    for (std::size_t k = c.gates.size(); k-- > 0;) {
        const Gate& g = c.gates[k];
        auto t = g.targets();
        if (std::all_of(t.begin(), t.end(), [&](int q) { return state[q] == Outside; })) continue;
        const bool diagonal = is_diagonal(g);
        if (diagonal && std::none_of(t.begin(), t.end(), [&](int q) { return state[q] == General; })) continue;
        for (int q : t) {
            if (!diagonal) {
                state[q] = General;
            } else if (state[q] == Outside) {
                state[q] = Diagonal;
            }
        }
        lc.gate_positions.push_back(k);
    }
    std::reverse(lc.gate_positions.begin(), lc.gate_positions.end());
    for (int q = 0; q < c.n_qubits; ++q) {
        if (state[q] != Outside) lc.cone_qubits.push_back(q);
    }
    lc.network = sandwich(c, lc.cone_qubits, lc.gate_positions, edge);
    return lc;
}

TensorNetwork full_sandwich_network(const Circuit& c, std::pair<int, int> edge) {
    validate(c);
    check_edge(c, edge);
    std::vector<int> qubits(c.n_qubits);
    for (int q = 0; q < c.n_qubits; ++q) qubits[q] = q;
    std::vector<std::size_t> gates(c.gates.size());
    for (std::size_t k = 0; k < gates.size(); ++k) gates[k] = k;
    return sandwich(c, qubits, gates, edge);
}

}  // namespace qtn
