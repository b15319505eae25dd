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

#include <cstdint>
#include <span>
#include <vector>

#include "qtn/channels.hpp"
#include "qtn/circuit.hpp"

namespace qtn {

struct SweepRecord {
    int n_qubits = 0;
    int K = 1;
    std::uint64_t seed = 0;
    int degree = 0;
    int depth = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double error = 0.0;
};

/// Error = alpha * exp(delta * n - mu * ln K), fitted in log space.
struct RegressionFit {
    double alpha = 0.0;
    double delta = 0.0;
    double mu = 0.0;
    double r_squared = 0.0;
    /// Records left out because their error was exactly 0.
    std::size_t excluded = 0;

    double predict_error(int n, double K) const;
};

/// Ordinary least squares on ln(error) = ln(alpha) + delta*n - mu*ln(K).
/// Throws std::invalid_argument("degenerate sweep") when n and ln K cannot
/// both be identified.
RegressionFit fit(std::span<const SweepRecord> records);

/// Smallest K whose predicted error is at most `target_error`.
std::uint64_t predict_circuits(const RegressionFit& f, int n, double target_error);

/// Largest degree <= min(d, n-1) for which an n-node regular graph exists.
int feasible_degree(int n, int d);

struct SweepSpec {
    std::vector<int> qubit_counts;
    std::vector<int> ensemble_sizes;
    std::vector<std::uint64_t> seeds;
    int degree = 4;
    QaoaParams params;
    double lambda1 = 0.001;
    double lambda2 = 0.004;
    std::uint64_t graph_seed = 0;
};

/// For every n: a random regular graph, its QAOA circuit and the exact noisy
/// distribution; then one ensemble per (K, seed) compared against it.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

}  // namespace qtn
