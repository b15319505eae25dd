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
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "qtn/ensemble.hpp"
#include "qtn/errors.hpp"
#include "qtn/oracle.hpp"

using namespace qtn;

namespace {

const double kInvSqrt2 = 1 / std::numbers::sqrt2;

// Exact mixture over every combination of Kraus branches, using only the
// statevector simulator: rho = sum_combo prob * |psi><psi|.
DensityMatrix enumerate_branches(const Circuit& c, const NoiseModel& nm) {
    struct Site {
        std::size_t after;
        int qubit;
        std::vector<KrausBranch> branches;
    };
    std::vector<Site> sites;
    for (std::size_t k = 0; k < c.gates.size(); ++k) {
        for (const auto& ch : nm.channels_for(c.gates[k])) {
            for (int q : c.gates[k].targets()) sites.push_back({k, q, channel_probs(ch)});
        }
    }
    DensityMatrix rho;
    rho.n_qubits = c.n_qubits;
    rho.rho.assign(rho.dim() * rho.dim(), 0.0);
    std::vector<std::size_t> pick(sites.size(), 0);
    std::function<void(std::size_t, double)> walk = [&](std::size_t s, double prob) {
        if (prob == 0.0) return;
        if (s == sites.size()) {
            SampledCircuit sc{c, {}};
            for (std::size_t i = 0; i < sites.size(); ++i) {
                sc.inserted.push_back({sites[i].after, sites[i].branches[pick[i]].pauli, sites[i].qubit});
            }
            Statevector psi = statevector_simulate(sc);
            for (std::size_t r = 0; r < rho.dim(); ++r) {
                for (std::size_t col = 0; col < rho.dim(); ++col) {
                    rho.rho[r * rho.dim() + col] += prob * psi.amps[r] * std::conj(psi.amps[col]);
                }
            }
            return;
        }
        for (std::size_t b = 0; b < sites[s].branches.size(); ++b) {
            pick[s] = b;
            walk(s + 1, prob * sites[s].branches[b].probability);
        }
    };
    walk(0, 1.0);
    return rho;
}

Circuit one_gate(GateKind k) {
    Circuit c(1);
    c.add(Gate::one(k, 0));
    return c;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("statevector basics") {
    Statevector h = statevector_simulate(one_gate(GateKind::H));
    CHECK(std::abs(h.amps[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(h.amps[1] - kInvSqrt2) < 1e-15);

    Circuit bell(2);
    bell.add(Gate::one(GateKind::H, 0)).add(Gate::two(GateKind::CX, 0, 1));
    Statevector b = statevector_simulate(bell);
    const std::vector<Complex> want{kInvSqrt2, 0.0, 0.0, kInvSqrt2};
    CHECK(qtn::testing::max_abs_diff(b.amps, want) < 1e-15);

    // qubit q is bit q of the basis index
    Circuit x1(3);
    x1.add(Gate::one(GateKind::X, 1));
    CHECK(statevector_simulate(x1).amps[2] == Complex{1.0});
    // CX(control, target): control is the first listed qubit
    Circuit cx(3);
    cx.add(Gate::one(GateKind::X, 2)).add(Gate::two(GateKind::CX, 2, 0));
    CHECK(statevector_simulate(cx).amps[5] == Complex{1.0});

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto p = statevector_simulate(random_circuit(8, 60, seed)).probabilities();
        double norm = 0.0;
        for (double v : p) norm += v;
        CHECK(std::abs(norm - 1.0) < 1e-12);
    }
}

TEST_CASE("statevector errors") {
    CHECK_THROWS_AS(statevector_simulate(random_circuit(12, 5, 1), 1024), ResourceLimitError);
    Statevector psi{3, std::vector<Complex>(8)};
    const std::vector<int> three{0, 1, 2};
    CHECK_THROWS_AS(apply_matrix(psi, std::vector<Complex>(64), three), std::invalid_argument);
}

TEST_CASE("sampled circuits apply their Paulis") {
    SampledCircuit sc{one_gate(GateKind::H), {{0, Pauli::Z, 0}}};
    Statevector psi = statevector_simulate(sc);
    CHECK(std::abs(psi.amps[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(psi.amps[1] + kInvSqrt2) < 1e-15);
    CHECK(qtn::testing::max_abs_diff(psi.amps, statevector_simulate(sc.materialize()).amps) == 0.0);
}

TEST_CASE("density matrix without noise is the pure state") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Circuit c = random_circuit(5, 30, 40 + seed);
        Statevector psi = statevector_simulate(c);
        DensityMatrix rho = density_matrix_simulate(c, NoiseModel{});
        double worst = 0.0;
        for (std::size_t r = 0; r < rho.dim(); ++r) {
            for (std::size_t col = 0; col < rho.dim(); ++col) {
                worst = std::max(worst, std::abs(rho.at(r, col) - psi.amps[r] * std::conj(psi.amps[col])));
            }
        }
        CHECK(worst < 1e-12);
    }
    Circuit big = random_circuit(10, 40, 3);
    ProbVector diag = sigma_exact(density_matrix_simulate(big, NoiseModel{}));
    ProbVector pure = statevector_simulate(big).probabilities();
    double worst = 0.0;
    for (std::size_t j = 0; j < diag.size(); ++j) worst = std::max(worst, std::abs(diag[j] - pure[j]));
    CHECK(worst < 1e-12);
}

TEST_CASE("analytic channel actions") {
    SUBCASE("depolarized |1>") {
        NoiseModel nm;
        nm.add(GateSelector::all(), NoiseChannel::depolarizing(0.004));
        DensityMatrix rho = density_matrix_simulate(one_gate(GateKind::X), nm);
        CHECK(std::abs(rho.at(0, 0) - 0.002) < 1e-12);
        CHECK(std::abs(rho.at(1, 1) - 0.998) < 1e-12);
        Rng rng(1);
        for (int trial = 0; trial < 20; ++trial) {
            const double lambda = rng.uniform();
            NoiseModel m;
            m.add(GateSelector::all(), NoiseChannel::depolarizing(lambda));
            DensityMatrix r = density_matrix_simulate(one_gate(GateKind::X), m);
            CHECK(std::abs(r.at(0, 0) - lambda / 2) < 1e-12);
            CHECK(std::abs(r.at(1, 1) - (1 - lambda / 2)) < 1e-12);
        }
    }
    SUBCASE("bit flip keeps |+> populations") {
        NoiseModel nm;
        nm.add(GateSelector::all(), NoiseChannel::bit_flip(0.5));
        DensityMatrix rho = density_matrix_simulate(one_gate(GateKind::H), nm);
        CHECK(std::abs(rho.at(0, 0) - 0.5) < 1e-12);
        CHECK(std::abs(rho.at(1, 1) - 0.5) < 1e-12);
    }
}

TEST_CASE("density matrix equals the exhaustive branch mixture") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Circuit c = random_circuit(3, 5, 70 + seed);
        NoiseModel nm = NoiseModel::depolarizing(0.2, 0.3);
        nm.add(GateSelector::of(GateKind::H), NoiseChannel::bit_flip(0.25));
        DensityMatrix rho = density_matrix_simulate(c, nm, kDefaultDensityQubitCap, true);
        DensityMatrix want = enumerate_branches(c, nm);
        CHECK(qtn::testing::max_abs_diff(rho.rho, want.rho) < 1e-12);
    }
}

TEST_CASE("density matrix checks") {
    CHECK_THROWS_WITH_AS(density_matrix_simulate(random_circuit(14, 3, 1), NoiseModel{}),
                         "density matrix cap exceeded: 14 qubits > cap 13", ResourceLimitError);
    CHECK_THROWS_AS(density_matrix_simulate(random_circuit(5, 3, 1), NoiseModel{}, 4), ResourceLimitError);
    DensityMatrix bad{1, {0.5, 0.1, 0.0, 0.5}};
    CHECK_THROWS_AS(check_density_matrix(bad), std::logic_error);
    DensityMatrix half{1, {0.25, 0.0, 0.0, 0.25}};
    CHECK_THROWS_AS(check_density_matrix(half), std::logic_error);
    DensityMatrix ok{1, {0.5, Complex{0.0, 0.5}, Complex{0.0, -0.5}, 0.5}};
    CHECK_NOTHROW(check_density_matrix(ok));
}

TEST_CASE("sigma_exact") {
    DensityMatrix zero{2, std::vector<Complex>(16, 0.0)};
    zero.rho[0] = 1.0;
    CHECK(sigma_exact(zero) == ProbVector{1.0, 0.0, 0.0, 0.0});

    Circuit bell(2);
    bell.add(Gate::one(GateKind::H, 0)).add(Gate::two(GateKind::CX, 0, 1));
    ProbVector b = sigma_exact(density_matrix_simulate(bell, NoiseModel{}));
    CHECK(b[0] == doctest::Approx(0.5));
    CHECK(b[1] == doctest::Approx(0.0));
    CHECK(b[2] == doctest::Approx(0.0));
    CHECK(b[3] == doctest::Approx(0.5));

    DensityMatrix mixed{2, std::vector<Complex>(16, 0.0)};
    for (int j = 0; j < 4; ++j) mixed.rho[5 * j] = 0.25;
    CHECK(sigma_exact(mixed) == ProbVector{0.25, 0.25, 0.25, 0.25});

    DensityMatrix negative{1, {1.0 + 1e-16, 0.0, 0.0, -1e-16}};
    ProbVector clipped = sigma_exact(negative);
    CHECK(clipped[1] == 0.0);
    CHECK(clipped[0] == 1.0);

    DensityMatrix imaginary{1, {Complex{0.5, 1e-6}, 0.0, 0.0, 0.5}};
    CHECK_THROWS(sigma_exact(imaginary));
}

TEST_CASE("error metric") {
    const ProbVector a{0.5, 0.5};
    const ProbVector b{0.25, 0.75};
    ErrorReport same = error_metric(a, a);
    CHECK(same.fidelity == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(same.error) < 1e-15);
    ErrorReport orth = error_metric({1.0, 0.0}, {0.0, 1.0});
    CHECK(orth.fidelity == 0.0);
    CHECK(orth.error == 1.0);
    // (sqrt(1/8) + sqrt(3/8))^2 = (2 + sqrt 3) / 4
    ErrorReport r = error_metric(a, b);
    CHECK(r.fidelity == doctest::Approx(0.9330127018922192).epsilon(1e-14));
    CHECK(r.error == doctest::Approx(0.06698729810778081).epsilon(1e-12));
    CHECK(error_metric(b, a).fidelity == r.fidelity);
    CHECK_THROWS_WITH_AS(error_metric(a, {1.0}), "length mismatch: 2 vs 1", std::invalid_argument);

    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        ProbVector p(8), q(8);
        double sp = 0, sq = 0;
        for (int j = 0; j < 8; ++j) {
            p[j] = rng.uniform();
            q[j] = rng.uniform();
            sp += p[j];
            sq += q[j];
        }
        for (int j = 0; j < 8; ++j) {
            p[j] /= sp;
            q[j] /= sq;
        }
        ErrorReport e = error_metric(p, q);
        CHECK(e.fidelity >= 0.0);
        CHECK(e.fidelity <= 1.0);
        CHECK(e.error == doctest::Approx(1.0 - e.fidelity));
        CHECK(e.fidelity == doctest::Approx(error_metric(q, p).fidelity).epsilon(1e-14));
    }
}

TEST_CASE("zz expectation") {
    Circuit c(2);
    c.add(Gate::one(GateKind::X, 1));
    CHECK(zz_expectation(statevector_simulate(c), 0, 1) == -1.0);
    CHECK(zz_expectation(statevector_simulate(Circuit(2)), 0, 1) == 1.0);
}

TEST_CASE("ensemble approaches the exact distribution") {
    const Graph g = random_regular_graph(5, 4, 0);
    const Circuit c = qaoa_maxcut_circuit(g, {{0.35, 0.7}, {0.55, 0.3}});
    const NoiseModel nm = NoiseModel::depolarizing(0.001, 0.004);
    const ProbVector exact = sigma_exact(density_matrix_simulate(c, nm));
    int improved = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const double small = error_metric(simulate_batch_ensemble(c, nm, {50, seed}), exact).error;
        const double large = error_metric(simulate_batch_ensemble(c, nm, {5000, seed}), exact).error;
        if (large < small) ++improved;
    }
    CHECK(improved >= 18);
}

}  // TEST_SUITE
