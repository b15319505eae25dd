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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "qtn/channels.hpp"
#include "qtn/ensemble.hpp"
#include "qtn/errors.hpp"
#include "qtn/oracle.hpp"

using namespace qtn;

namespace {

// Sum_k K_k^dagger K_k for 2x2 operators.
Matrix2 completeness(const std::vector<Matrix2>& ks) {
    Matrix2 s{};
    for (const auto& k : ks) {
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                for (int m = 0; m < 2; ++m) s[2 * r + c] += std::conj(k[2 * m + r]) * k[2 * m + c];
            }
        }
    }
    return s;
}

double identity_distance(const Matrix2& m) {
    return std::max({std::abs(m[0] - 1.0), std::abs(m[1]), std::abs(m[2]), std::abs(m[3] - 1.0)});
}

Circuit one_gate(GateKind k) {
    Circuit c(1);
    c.add(Gate::one(k, 0));
    return c;
}

}  // namespace

TEST_SUITE("noise") {

TEST_CASE("channel branch probabilities") {
    auto d = channel_probs(NoiseChannel::depolarizing(0.004));
    REQUIRE(d.size() == 4);
    CHECK(d[0].pauli == Pauli::I);
    CHECK(d[0].probability == doctest::Approx(0.997).epsilon(1e-14));
    for (int k = 1; k < 4; ++k) CHECK(d[k].probability == doctest::Approx(0.001).epsilon(1e-14));
    CHECK(d[1].pauli == Pauli::X);
    CHECK(d[2].pauli == Pauli::Y);
    CHECK(d[3].pauli == Pauli::Z);

    auto b = channel_probs(NoiseChannel::bit_flip(0.0));
    CHECK(b[0].probability == 1.0);
    CHECK(b[1].probability == 0.0);

    CHECK_THROWS_AS(NoiseChannel::bit_flip(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(NoiseChannel::bit_flip(1.1), std::invalid_argument);
    CHECK_THROWS_AS(NoiseChannel::depolarizing(-1e-9), std::invalid_argument);
    CHECK_THROWS_AS(NoiseChannel::depolarizing(1.34), std::invalid_argument);
    CHECK_THROWS_AS(NoiseChannel::depolarizing_2q(NAN), std::invalid_argument);
    CHECK_NOTHROW(NoiseChannel::depolarizing(4.0 / 3.0));
}

TEST_CASE("Kraus sets are trace preserving") {
    Rng rng(100);
    for (int trial = 0; trial < 100; ++trial) {
        const double p = rng.uniform();
        const double lambda = rng.uniform() * 4.0 / 3.0;
        for (const auto& ch : {NoiseChannel::bit_flip(p), NoiseChannel::depolarizing(lambda),
                               NoiseChannel::depolarizing_2q(lambda)}) {
            CHECK(identity_distance(completeness(kraus_operators(ch))) < 1e-12);
        }
    }
}

TEST_CASE("sampling") {
    SUBCASE("empty model inserts nothing") {
        Rng rng(1);
        SampledCircuit sc = sample_noisy_circuit(random_circuit(4, 30, 1), NoiseModel{}, rng);
        CHECK(sc.inserted.empty());
    }
    SUBCASE("certain bit flip") {
        NoiseModel nm;
        nm.add(GateSelector::of(GateKind::H), NoiseChannel::bit_flip(1.0));
        Rng rng(2);
        SampledCircuit sc = sample_noisy_circuit(one_gate(GateKind::H), nm, rng);
        REQUIRE(sc.inserted.size() == 1);
        CHECK(sc.inserted[0].after_gate == 0);
        CHECK(sc.inserted[0].pauli == Pauli::X);
        CHECK(sc.inserted[0].qubit == 0);
        Circuit m = sc.materialize();
        REQUIRE(m.gates.size() == 2);
        CHECK(m.gates[1].kind == GateKind::X);
    }
    SUBCASE("selectors only match their gates") {
        NoiseModel nm;
        nm.add(GateSelector::of(GateKind::RX), NoiseChannel::bit_flip(1.0));
        Rng rng(3);
        CHECK(sample_noisy_circuit(one_gate(GateKind::H), nm, rng).inserted.empty());
        CHECK(GateSelector::two_qubit().matches(Gate::two(GateKind::CX, 0, 1)));
        CHECK_FALSE(GateSelector::two_qubit().matches(Gate::one(GateKind::X, 0)));
        CHECK(GateSelector::all().matches(Gate::one(GateKind::X, 0)));
    }
    SUBCASE("depolarizing insertion frequencies") {
        NoiseModel nm;
        nm.add(GateSelector::all(), NoiseChannel::depolarizing(0.004));
        const Circuit c = one_gate(GateKind::H);
        const int n = 100000;
        int counts[4] = {0, 0, 0, 0};
        for (int k = 0; k < n; ++k) {
            Rng rng(stream_seed(42, k));
            for (const auto& ins : sample_noisy_circuit(c, nm, rng).inserted) ++counts[static_cast<int>(ins.pauli)];
        }
        const double se = std::sqrt(n * 0.001 * 0.999);
        CHECK(counts[0] == 0);
        for (int k = 1; k < 4; ++k) CHECK(std::abs(counts[k] - n * 0.001) < 3 * se);
    }
    SUBCASE("two-qubit draws are independent per qubit") {
        NoiseModel nm;
        nm.add(GateSelector::two_qubit(), NoiseChannel::bit_flip(0.3));
        Circuit c(2);
        c.add(Gate::two(GateKind::CX, 0, 1));
        const int n = 100000;
        int pattern[4] = {0, 0, 0, 0};
        for (int k = 0; k < n; ++k) {
            Rng rng(stream_seed(7, k));
            int bits = 0;
            for (const auto& ins : sample_noisy_circuit(c, nm, rng).inserted) bits |= 1 << ins.qubit;
            ++pattern[bits];
        }
        const double want[4] = {0.49, 0.21, 0.21, 0.09};
        for (int b = 0; b < 4; ++b) {
            const double se = std::sqrt(n * want[b] * (1 - want[b]));
            CHECK(std::abs(pattern[b] - n * want[b]) < 3 * se);
        }
    }
}

TEST_CASE("noise config JSON") {
    NoiseModel nm = NoiseModel::from_json(
        R"({"single_qubit": {"type": "depolarizing", "lambda": 0.001},
            "two_qubit": {"type": "depolarizing", "lambda": 0.004}})");
    auto one = nm.channels_for(Gate::one(GateKind::H, 0));
    REQUIRE(one.size() == 1);
    CHECK(one[0].kind == NoiseChannel::Kind::Depolarizing1Q);
    CHECK(one[0].parameter == 0.001);
    auto two = nm.channels_for(Gate::two(GateKind::ZZPhase, 0, 1));
    REQUIRE(two.size() == 1);
    CHECK(two[0].kind == NoiseChannel::Kind::Depolarizing2Q);
    CHECK(two[0].parameter == 0.004);

    NoiseModel bf = NoiseModel::from_json(R"({"two_qubit": {"type": "bitflip", "p": 0.01}})");
    CHECK(bf.channels_for(Gate::one(GateKind::H, 0)).empty());
    CHECK(bf.channels_for(Gate::two(GateKind::CX, 0, 1))[0].kind == NoiseChannel::Kind::BitFlip);

    CHECK(NoiseModel::from_json("{}").empty());
    CHECK_THROWS_AS(NoiseModel::from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel::from_json("[]"), std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel::from_json(R"({"three_qubit": {"type": "bitflip", "p": 0.1}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel::from_json(R"({"single_qubit": {"type": "damping", "p": 0.1}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel::from_json(R"({"single_qubit": {"type": "bitflip"}})"), std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel::from_json(R"({"single_qubit": {"type": "bitflip", "p": 2}})"),
                    std::invalid_argument);
}

TEST_CASE("ensemble") {
    const Graph g = random_regular_graph(6, 4, 3);
    const Circuit qaoa = qaoa_maxcut_circuit(g, {{0.35, 0.7}, {0.55, 0.3}});

    SUBCASE("noiseless ensemble is the pure distribution") {
        const ProbVector pure = statevector_simulate(qaoa).probabilities();
        for (int K : {1, 7, 100}) {
            ProbVector s = simulate_batch_ensemble(qaoa, NoiseModel::depolarizing(0.0, 0.0), {K, 9});
            CHECK(qtn::testing::max_abs_diff(std::vector<Complex>(s.begin(), s.end()),
                                             std::vector<Complex>(pure.begin(), pure.end())) < 1e-12);
        }
    }
    SUBCASE("depolarized X converges to the analytic diagonal") {
        NoiseModel nm;
        nm.add(GateSelector::all(), NoiseChannel::depolarizing(0.004));
        const int K = 200000;
        ProbVector s = simulate_batch_ensemble(one_gate(GateKind::X), nm, {K, 5});
        const double se = std::sqrt(0.002 * 0.998 / K);
        CHECK(std::abs(s[0] - 0.002) < 3 * se);
        CHECK(std::abs(s[1] - 0.998) < 3 * se);
    }
    SUBCASE("K=1 is a single sampled circuit") {
        const NoiseModel nm = NoiseModel::depolarizing(0.05, 0.1);
        Rng rng(stream_seed(11, 0));
        ProbVector phi = statevector_simulate(sample_noisy_circuit(qaoa, nm, rng)).probabilities();
        ProbVector s = simulate_batch_ensemble(qaoa, nm, {1, 11});
        const double total = std::accumulate(phi.begin(), phi.end(), 0.0);
        for (std::size_t j = 0; j < phi.size(); ++j) {
            CHECK(s[j] == phi[j] / total);
            CHECK(std::abs(s[j] - phi[j]) < 1e-14);
        }
    }
    SUBCASE("normalized and non-negative") {
        ProbVector s = simulate_batch_ensemble(qaoa, NoiseModel::depolarizing(0.01, 0.04), {300, 1});
        CHECK(std::all_of(s.begin(), s.end(), [](double p) { return p >= 0.0; }));
        CHECK(std::abs(std::accumulate(s.begin(), s.end(), 0.0) - 1.0) < 1e-12);
    }
    SUBCASE("bit-identical across thread counts") {
        const NoiseModel nm = NoiseModel::depolarizing(0.01, 0.04);
        const int saved = omp_get_max_threads();
        std::vector<ProbVector> runs;
        for (int t : {1, 2, 8}) {
            omp_set_num_threads(t);
            runs.push_back(simulate_batch_ensemble(qaoa, nm, {150, 77}));
        }
        omp_set_num_threads(saved);
        CHECK(runs[0] == runs[1]);
        CHECK(runs[0] == runs[2]);
        CHECK(runs[0] != simulate_batch_ensemble(qaoa, nm, {150, 78}));
    }
    SUBCASE("custom simulator") {
        int calls = 0;
        StateSimulator sim = [&](const SampledCircuit& sc) {
#pragma omp atomic
            ++calls;
            return statevector_simulate(sc.materialize());
        };
        const NoiseModel nm = NoiseModel::depolarizing(0.01, 0.04);
        CHECK(simulate_batch_ensemble(qaoa, nm, {20, 3}, sim) == simulate_batch_ensemble(qaoa, nm, {20, 3}));
        CHECK(calls == 20);
        StateSimulator wrong = [](const SampledCircuit&) { return Statevector{1, {1.0, 0.0}}; };
        CHECK_THROWS_AS(simulate_batch_ensemble(qaoa, nm, {2, 3}, wrong), std::runtime_error);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(simulate_batch_ensemble(qaoa, NoiseModel{}, {0, 1}), std::invalid_argument);
        CHECK_THROWS_AS(simulate_batch_ensemble(qaoa, NoiseModel{}, {1, 1}, {}, 512), ResourceLimitError);
    }
}

}  // TEST_SUITE
