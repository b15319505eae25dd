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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qtn/circuit.hpp"
#include "qtn/random.hpp"

namespace qtn {

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::RX: return "RX";
        case GateKind::RZ: return "RZ";
        case GateKind::ZZPhase: return "ZZPhase";
        case GateKind::CX: return "CX";
    }
    return "?";
}

GateKind parse_gate_kind(std::string_view name) {
    for (GateKind k : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::RX, GateKind::RZ,
                       GateKind::ZZPhase, GateKind::CX}) {
        if (name == to_string(k)) return k;
    }
    if (name == "ZZ") return GateKind::ZZPhase;
    if (name == "CNOT") return GateKind::CX;
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

int arity(GateKind kind) { return kind == GateKind::ZZPhase || kind == GateKind::CX ? 2 : 1; }

bool has_angle(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RZ || kind == GateKind::ZZPhase;
}

Gate Gate::one(GateKind kind, int q, double angle) {
    if (qtn::arity(kind) != 1) throw std::invalid_argument("gate is not single-qubit");
    return Gate{kind, {q, -1}, angle};
}

Gate Gate::two(GateKind kind, int a, int b, double angle) {
    if (qtn::arity(kind) != 2) throw std::invalid_argument("gate is not two-qubit");
    return Gate{kind, {a, b}, angle};
}

namespace {

void check_gate(const Gate& g, int n_qubits) {
    if (!std::isfinite(g.angle)) {
        throw std::invalid_argument("gate angle must be finite");
    }
    for (int q : g.targets()) {
        if (q < 0 || q >= n_qubits) {
            throw std::invalid_argument("gate qubit " + std::to_string(q) + " out of range for " +
                                        std::to_string(n_qubits) + " qubits");
        }
    }
    if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
        throw std::invalid_argument("two-qubit gate on a repeated qubit");
    }
}

}  // namespace

Circuit& Circuit::add(const Gate& g) {
    check_gate(g, n_qubits);
    gates.push_back(g);
    return *this;
}

void validate(const Circuit& c) {
    if (c.n_qubits < 0) throw std::invalid_argument("negative qubit count");
    for (const auto& g : c.gates) check_gate(g, c.n_qubits);
}

std::vector<Complex> gate_matrix(const Gate& g) {
    using namespace std::complex_literals;
    const double s = std::numbers::sqrt2 / 2;
    const double half = g.angle / 2;
    switch (g.kind) {
        case GateKind::H:
            return {s, s, s, -s};
        case GateKind::X:
            return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y:
            return {0.0, -1i, 1i, 0.0};
        case GateKind::Z:
            return {1.0, 0.0, 0.0, -1.0};
        case GateKind::RX:
            return {std::cos(half), -1i * std::sin(half), -1i * std::sin(half), std::cos(half)};
        case GateKind::RZ:
            return {std::polar(1.0, -half), 0.0, 0.0, std::polar(1.0, half)};
        case GateKind::ZZPhase: {
            std::vector<Complex> m(16, 0.0);
            m[0] = std::polar(1.0, -half);
            m[5] = std::polar(1.0, half);
            m[10] = std::polar(1.0, half);
            m[15] = std::polar(1.0, -half);
            return m;
        }
        case GateKind::CX:
            return {1, 0, 0, 0,  //
                    0, 1, 0, 0,  //
                    0, 0, 0, 1,  //
                    0, 0, 1, 0};
    }
    throw std::logic_error("unhandled gate kind");
}

namespace {

std::vector<IndexId> local_labels(int rank) {
    std::vector<IndexId> out;
    for (int k = 0; k < rank; ++k) out.push_back(make_index(k));
    return out;
}

}  // namespace

Tensor gate_tensor(const Gate& g) {
    // A dim x dim row-major matrix already is the [out..., in...] tensor.
    return Tensor(local_labels(2 * g.arity()), gate_matrix(g));
}

Tensor adjoint_gate_tensor(const Gate& g) {
    auto m = gate_matrix(g);
    const std::size_t dim = g.arity() == 1 ? 2 : 4;
    std::vector<Complex> adj(m.size());
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) adj[r * dim + c] = std::conj(m[c * dim + r]);
    }
    return Tensor(local_labels(2 * g.arity()), std::move(adj));
}

void validate(const QaoaParams& params) {
    if (params.gammas.empty()) throw std::invalid_argument("QAOA depth must be >= 1");
    if (params.gammas.size() != params.betas.size()) {
        throw std::invalid_argument("gammas and betas must have the same length");
    }
    for (double a : params.gammas) {
        if (!std::isfinite(a)) throw std::invalid_argument("non-finite gamma");
    }
    for (double a : params.betas) {
        if (!std::isfinite(a)) throw std::invalid_argument("non-finite beta");
    }
}

Circuit qaoa_maxcut_circuit(const Graph& g, const QaoaParams& params) {
    validate(params);
    Circuit c(g.n_nodes());
    for (int q = 0; q < g.n_nodes(); ++q) c.add(Gate::one(GateKind::H, q));
    for (int layer = 0; layer < params.depth(); ++layer) {
        for (auto [u, v] : g.edges()) {
            c.add(Gate::two(GateKind::ZZPhase, u, v, 2 * params.gammas[layer]));
        }
        for (int q = 0; q < g.n_nodes(); ++q) {
            c.add(Gate::one(GateKind::RX, q, 2 * params.betas[layer]));
        }
    }
    return c;
}

Circuit random_circuit(int n_qubits, int n_gates, std::uint64_t seed) {
    if (n_qubits < 1) throw std::invalid_argument("random circuit needs at least one qubit");
    static constexpr GateKind kinds[] = {GateKind::H,  GateKind::X,  GateKind::Y,       GateKind::Z,
                                         GateKind::RX, GateKind::RZ, GateKind::ZZPhase, GateKind::CX};
    Rng rng(seed);
    Circuit c(n_qubits);
    while (static_cast<int>(c.gates.size()) < n_gates) {
        GateKind k = kinds[rng.below(std::size(kinds))];
        if (arity(k) == 2 && n_qubits < 2) continue;
        double angle = has_angle(k) ? (rng.uniform() * 2 - 1) * std::numbers::pi * 2 : 0.0;
        int a = static_cast<int>(rng.below(n_qubits));
        if (arity(k) == 1) {
            c.add(Gate::one(k, a, angle));
        } else {
            int b = static_cast<int>(rng.below(n_qubits - 1));
            if (b >= a) ++b;
            c.add(Gate::two(k, a, b, angle));
        }
    }
    return c;
}

}  // namespace qtn
