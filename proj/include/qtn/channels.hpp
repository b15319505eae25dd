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
#include <string_view>
#include <vector>

#include "qtn/circuit.hpp"
#include "qtn/random.hpp"

namespace qtn {

enum class Pauli { I, X, Y, Z };

std::string_view to_string(Pauli p);

/// Single-qubit Pauli channel. Depolarizing2Q is applied as an independent
/// Depolarizing1Q on each qubit of the gate it is attached to.
struct NoiseChannel {
    enum class Kind { BitFlip, Depolarizing1Q, Depolarizing2Q };

    Kind kind = Kind::BitFlip;
    /// p for BitFlip, lambda for the depolarizing kinds.
    double parameter = 0.0;

    static NoiseChannel bit_flip(double p);
    static NoiseChannel depolarizing(double lambda);
    static NoiseChannel depolarizing_2q(double lambda);
};

struct KrausBranch {
    double probability;
    Pauli pauli;
};

/// Squared Kraus coefficients with their Paulis, identity branch first:
/// BitFlip -> I, X; depolarizing -> I, X, Y, Z.
std::vector<KrausBranch> channel_probs(const NoiseChannel& ch);

using Matrix2 = std::array<Complex, 4>;

/// The Kraus matrices sqrt(probability) * Pauli, in channel_probs order.
std::vector<Matrix2> kraus_operators(const NoiseChannel& ch);

Matrix2 pauli_matrix(Pauli p);

/// Which gates a channel is attached to.
struct GateSelector {
    enum class Scope { Kind, AnySingleQubit, AnyTwoQubit, AnyGate };

    Scope scope = Scope::AnyGate;
    GateKind kind = GateKind::H;

    static GateSelector of(GateKind k) { return {Scope::Kind, k}; }
    static GateSelector single_qubit() { return {Scope::AnySingleQubit, GateKind::H}; }
    static GateSelector two_qubit() { return {Scope::AnyTwoQubit, GateKind::H}; }
    static GateSelector all() { return {Scope::AnyGate, GateKind::H}; }

    bool matches(const Gate& g) const;
};

class NoiseModel {
   public:
    struct Rule {
        GateSelector selector;
        NoiseChannel channel;
    };

    NoiseModel& add(GateSelector selector, NoiseChannel channel);

    /// Channels attached to `g`, in the order they were added.
    std::vector<NoiseChannel> channels_for(const Gate& g) const;

    const std::vector<Rule>& rules() const { return rules_; }
    bool empty() const { return rules_.empty(); }

    /// Depolarizing lambda1 on single-qubit gates and lambda2 on two-qubit gates.
    static NoiseModel depolarizing(double lambda1, double lambda2);

    /// Parses the JSON noise config, e.g.
    /// {"single_qubit": {"type": "depolarizing", "lambda": 0.001},
    ///  "two_qubit":    {"type": "bitflip", "p": 0.01}}
    static NoiseModel from_json(std::string_view text);

   private:
    std::vector<Rule> rules_;
};

struct PauliInsertion {
    /// Position of the gate in the base circuit the Pauli follows.
    std::size_t after_gate;
    Pauli pauli;
    int qubit;
};

struct SampledCircuit {
    Circuit base;
    std::vector<PauliInsertion> inserted;

    /// The base circuit with the inserted Paulis as ordinary X/Y/Z gates.
    Circuit materialize() const;
};

/// Walks the gates in order; after each gate, every attached channel draws
/// one uniform u per qubit and picks the branch by cumulative probability.
SampledCircuit sample_noisy_circuit(const Circuit& c, const NoiseModel& nm, Rng& rng);

}  // namespace qtn
