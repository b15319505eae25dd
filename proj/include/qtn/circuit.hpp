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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qtn/tensor.hpp"

namespace qtn {

enum class GateKind { H, X, Y, Z, RX, RZ, ZZPhase, CX };

std::string_view to_string(GateKind kind);
/// Accepts the names printed by to_string plus "ZZ" for ZZPhase.
GateKind parse_gate_kind(std::string_view name);
int arity(GateKind kind);
bool has_angle(GateKind kind);

/// One gate application. For CX, qubits[0] is the control.
struct Gate {
    GateKind kind = GateKind::H;
    std::array<int, 2> qubits{-1, -1};
    double angle = 0.0;

    int arity() const { return qtn::arity(kind); }
    std::span<const int> targets() const { return {qubits.data(), static_cast<std::size_t>(arity())}; }

    static Gate one(GateKind kind, int q, double angle = 0.0);
    static Gate two(GateKind kind, int a, int b, double angle = 0.0);

    friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {}

    /// Appends after checking arity, qubit range and distinctness.
    Circuit& add(const Gate& g);
};

/// Throws std::invalid_argument if any gate is malformed.
void validate(const Circuit& c);

/// Row-major unitary of the gate: 2x2 or 4x4, rows are outputs. For two-qubit
/// gates qubits[0] is the more significant bit of the row/column index.
std::vector<Complex> gate_matrix(const Gate& g);

/// The gate as a tensor with local labels 0..rank-1 laid out as
/// [out..., in...] (rank 2 or 4).
Tensor gate_tensor(const Gate& g);

/// Conjugate transpose of gate_tensor with the same [out..., in...] layout.
Tensor adjoint_gate_tensor(const Gate& g);

/// Simple undirected graph. Edges are stored as (min, max) in lexicographic order.
class Graph {
   public:
    Graph() = default;
    Graph(int n_nodes, std::vector<std::pair<int, int>> edges);

    int n_nodes() const { return n_nodes_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int degree(int node) const;

   private:
    int n_nodes_ = 0;
    std::vector<std::pair<int, int>> edges_;
};

struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    int depth() const { return static_cast<int>(gammas.size()); }
};

void validate(const QaoaParams& params);

/// H on every qubit, then per layer ZZPhase(2*gamma) on each edge and
/// RX(2*beta) on each qubit.
Circuit qaoa_maxcut_circuit(const Graph& g, const QaoaParams& params);

/// Uniform d-regular simple graph from the pairing model with rejection.
Graph random_regular_graph(int n, int d, std::uint64_t seed);

/// Random circuit over the full gate set with uniformly drawn angles.
Circuit random_circuit(int n_qubits, int n_gates, std::uint64_t seed);

}  // namespace qtn
