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

#include "qtn/error_model.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "qtn/ensemble.hpp"
#include "qtn/oracle.hpp"

namespace qtn {

double RegressionFit::predict_error(int n, double K) const { return alpha * std::exp(delta * n - mu * std::log(K)); }

RegressionFit fit(std::span<const SweepRecord> records) {
    std::vector<const SweepRecord*> used;
    RegressionFit out;
    for (const auto& r : records) {
        if (r.K < 1) throw std::invalid_argument("sweep record with K < 1");
        if (!(r.error >= 0.0 && r.error <= 1.0)) throw std::invalid_argument("sweep record error outside [0, 1]");
        if (r.error == 0.0) {
            ++out.excluded;
            continue;
        }
        used.push_back(&r);
    }
    std::set<int> ns;
    std::set<int> ks;
    for (const auto* r : used) {
        ns.insert(r->n_qubits);
        ks.insert(r->K);
    }
    if (used.size() < 3 || ns.size() < 2 || ks.size() < 2) throw std::invalid_argument("degenerate sweep");

    const auto m = static_cast<Eigen::Index>(used.size());
    Eigen::MatrixXd design(m, 3);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = used[i]->n_qubits;
        design(i, 2) = -std::log(static_cast<double>(used[i]->K));
        y(i) = std::log(used[i]->error);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < 3) throw std::invalid_argument("degenerate sweep");
    const Eigen::Vector3d beta = qr.solve(y);

    out.alpha = std::exp(beta(0));
    out.delta = beta(1);
    out.mu = beta(2);
    const Eigen::VectorXd residual = y - design * beta;
    const double ss_res = residual.squaredNorm();
    const double ss_tot = (y.array() - y.mean()).square().sum();
    out.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    return out;
}

std::uint64_t predict_circuits(const RegressionFit& f, int n, double target_error) {
    if (!(f.mu > 0.0)) throw std::invalid_argument("non-decaying model");
    if (!(target_error > 0.0 && target_error < 1.0)) throw std::invalid_argument("target error must be in (0, 1)");
    if (!(f.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    const double exponent = (std::log(f.alpha) + f.delta * n - std::log(target_error)) / f.mu;
    if (exponent > std::log(1e18)) throw std::invalid_argument("predicted ensemble size is out of range");
    const double k = std::exp(exponent);
    if (k <= 1.0) return 1;
    // Exact integer solutions must not be pushed up by rounding in exp/log.
    return static_cast<std::uint64_t>(std::ceil(k * (1.0 - 1e-12)));
}

int feasible_degree(int n, int d) {
    for (int deg = std::min(d, n - 1); deg > 0; --deg) {
        if ((n * deg) % 2 == 0) return deg;
    }
    return 0;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
    if (spec.qubit_counts.empty() || spec.ensemble_sizes.empty() || spec.seeds.empty()) {
        throw std::invalid_argument("empty sweep grid");
    }
    const NoiseModel nm = NoiseModel::depolarizing(spec.lambda1, spec.lambda2);
    std::vector<SweepRecord> records;
    for (int n : spec.qubit_counts) {
        const int d = feasible_degree(n, spec.degree);
        const Graph g = random_regular_graph(n, d, spec.graph_seed + static_cast<std::uint64_t>(n));
        const Circuit c = qaoa_maxcut_circuit(g, spec.params);
        const ProbVector exact = sigma_exact(density_matrix_simulate(c, nm));
        for (int K : spec.ensemble_sizes) {
            for (std::uint64_t seed : spec.seeds) {
                const ProbVector approx = simulate_batch_ensemble(c, nm, {K, seed});
                SweepRecord r;
                r.n_qubits = n;
                r.K = K;
                r.seed = seed;
                r.degree = d;
                r.depth = spec.params.depth();
                r.lambda1 = spec.lambda1;
                r.lambda2 = spec.lambda2;
                r.error = error_metric(approx, exact).error;
                records.push_back(r);
            }
        }
    }
    return records;
}

}  // namespace qtn
