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
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qtn/channels.hpp"

namespace qtn {

std::string_view to_string(Pauli p) {
    switch (p) {
        case Pauli::I: return "I";
        case Pauli::X: return "X";
        case Pauli::Y: return "Y";
        case Pauli::Z: return "Z";
    }
    return "?";
}

namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("bit-flip probability must be in [0, 1], got " + std::to_string(p));
    }
}

void check_lambda(double lambda) {
    // 1 - 3*lambda/4 must stay a probability.
    if (!(lambda >= 0.0 && lambda <= 4.0 / 3.0)) {
        throw std::invalid_argument("depolarizing lambda must be in [0, 4/3], got " + std::to_string(lambda));
    }
}

}  // namespace

NoiseChannel NoiseChannel::bit_flip(double p) {
    check_probability(p);
    return {Kind::BitFlip, p};
}

NoiseChannel NoiseChannel::depolarizing(double lambda) {
    check_lambda(lambda);
    return {Kind::Depolarizing1Q, lambda};
}

NoiseChannel NoiseChannel::depolarizing_2q(double lambda) {
    check_lambda(lambda);
    return {Kind::Depolarizing2Q, lambda};
}

std::vector<KrausBranch> channel_probs(const NoiseChannel& ch) {
    if (ch.kind == NoiseChannel::Kind::BitFlip) {
        check_probability(ch.parameter);
        return {{1.0 - ch.parameter, Pauli::I}, {ch.parameter, Pauli::X}};
    }
    check_lambda(ch.parameter);
    const double q = ch.parameter / 4.0;
    return {{1.0 - 3.0 * q, Pauli::I}, {q, Pauli::X}, {q, Pauli::Y}, {q, Pauli::Z}};
}

Matrix2 pauli_matrix(Pauli p) {
    using namespace std::complex_literals;
    switch (p) {
        case Pauli::I: return {1.0, 0.0, 0.0, 1.0};
        case Pauli::X: return {0.0, 1.0, 1.0, 0.0};
        case Pauli::Y: return {0.0, -1i, 1i, 0.0};
        case Pauli::Z: return {1.0, 0.0, 0.0, -1.0};
    }
    throw std::logic_error("unhandled Pauli");
}

std::vector<Matrix2> kraus_operators(const NoiseChannel& ch) {
    std::vector<Matrix2> out;
    for (const auto& branch : channel_probs(ch)) {
        Matrix2 m = pauli_matrix(branch.pauli);
        const double s = std::sqrt(branch.probability);
        for (auto& z : m) z *= s;
        out.push_back(m);
    }
    return out;
}

bool GateSelector::matches(const Gate& g) const {
    switch (scope) {
        case Scope::Kind: return g.kind == kind;
        case Scope::AnySingleQubit: return g.arity() == 1;
        case Scope::AnyTwoQubit: return g.arity() == 2;
        case Scope::AnyGate: return true;
    }
    return false;
}

NoiseModel& NoiseModel::add(GateSelector selector, NoiseChannel channel) {
    channel_probs(channel);  // validates the parameter
    rules_.push_back({selector, channel});
    return *this;
}

std::vector<NoiseChannel> NoiseModel::channels_for(const Gate& g) const {
    std::vector<NoiseChannel> out;
    for (const auto& r : rules_) {
        if (r.selector.matches(g)) out.push_back(r.channel);
    }
    return out;
}

NoiseModel NoiseModel::depolarizing(double lambda1, double lambda2) {
    NoiseModel nm;
    nm.add(GateSelector::single_qubit(), NoiseChannel::depolarizing(lambda1));
    nm.add(GateSelector::two_qubit(), NoiseChannel::depolarizing_2q(lambda2));
    return nm;
}

namespace {

NoiseChannel channel_from_json(const nlohmann::json& j, bool two_qubit) {
    if (!j.is_object() || !j.contains("type")) {
        throw std::invalid_argument("noise channel needs a \"type\" field");
    }
    const std::string type = j.at("type").get<std::string>();
    if (type == "depolarizing") {
        const double lambda = j.at("lambda").get<double>();
        return two_qubit ? NoiseChannel::depolarizing_2q(lambda) : NoiseChannel::depolarizing(lambda);
    }
    if (type == "bitflip") {
        return NoiseChannel::bit_flip(j.at("p").get<double>());
    }
    throw std::invalid_argument("unknown noise channel type '" + type + "'");
}

}  // namespace

NoiseModel NoiseModel::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed noise config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("noise config must be a JSON object");
    NoiseModel nm;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "single_qubit") {
                nm.add(GateSelector::single_qubit(), channel_from_json(value, false));
            } else if (key == "two_qubit") {
                nm.add(GateSelector::two_qubit(), channel_from_json(value, true));
            } else {
                throw std::invalid_argument("unknown noise config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed noise config: ") + e.what());
    }
    return nm;
}

Circuit SampledCircuit::materialize() const {
    Circuit out(base.n_qubits);
    std::size_t next = 0;
    for (std::size_t k = 0; k < base.gates.size(); ++k) {
        out.add(base.gates[k]);
        for (; next < inserted.size() && inserted[next].after_gate == k; ++next) {
            const auto& ins = inserted[next];
            if (ins.pauli == Pauli::I) continue;
            const GateKind kind = ins.pauli == Pauli::X ? GateKind::X : ins.pauli == Pauli::Y ? GateKind::Y : GateKind::Z;
            out.add(Gate::one(kind, ins.qubit));
        }
    }
    return out;
}

SampledCircuit sample_noisy_circuit(const Circuit& c, const NoiseModel& nm, Rng& rng) {
    SampledCircuit sc{c, {}};
    if (nm.empty()) return sc;
    for (std::size_t k = 0; k < c.gates.size(); ++k) {
        const Gate& g = c.gates[k];
        for (const auto& ch : nm.channels_for(g)) {
            const auto branches = channel_probs(ch);
            for (int q : g.targets()) {
                const double u = rng.uniform();
                double cumulative = 0.0;
                Pauli picked = branches.back().pauli;
                for (const auto& b : branches) {
                    cumulative += b.probability;
                    if (u < cumulative) {
                        picked = b.pauli;
                        break;
                    }
                }
                if (picked != Pauli::I) sc.inserted.push_back({k, picked, q});
            }
        }
    }
    return sc;
}

}  // namespace qtn
