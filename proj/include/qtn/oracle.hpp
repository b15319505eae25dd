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
#include <vector>

#include "qtn/channels.hpp"
#include "qtn/circuit.hpp"
#include "qtn/ordering.hpp"

namespace qtn {

using ProbVector = std::vector<double>;

/// Amplitudes with qubit q stored in bit q of the basis index.
struct Statevector {
    int n_qubits = 0;
    std::vector<Complex> amps;

    ProbVector probabilities() const;
};

Statevector statevector_simulate(const Circuit& c, std::uint64_t mem_cap = kDefaultMemCap);
Statevector statevector_simulate(const SampledCircuit& sc, std::uint64_t mem_cap = kDefaultMemCap);

/// In-place application of a gate or of an arbitrary 2x2 / 4x4 matrix.
void apply_gate(Statevector& psi, const Gate& g);
void apply_matrix(Statevector& psi, const std::vector<Complex>& m, std::span<const int> qubits);

inline constexpr int kDefaultDensityQubitCap = 13;

/// Row-major 2^n x 2^n density matrix, same bit convention as Statevector.
struct DensityMatrix {
    int n_qubits = 0;
    std::vector<Complex> rho;

    std::size_t dim() const { return std::size_t{1} << n_qubits; }
    Complex at(std::size_t r, std::size_t c) const { return rho[r * dim() + c]; }
};

/// Throws std::logic_error if trace, Hermiticity or the diagonal sign is off by
/// more than `tol`.
void check_density_matrix(const DensityMatrix& rho, double tol = 1e-10);

/// Exact operator-sum evolution. With `check_each_step` every gate and channel
/// application is followed by check_density_matrix.
DensityMatrix density_matrix_simulate(const Circuit& c, const NoiseModel& nm,
                                      int max_qubits = kDefaultDensityQubitCap, bool check_each_step = false);

/// Real diagonal clipped at 0 and renormalized.
ProbVector sigma_exact(const DensityMatrix& rho);

struct ErrorReport {
    double fidelity = 0.0;
    double error = 0.0;
};

/// Classical fidelity F = (sum_j sqrt(a_j b_j))^2 and error = 1 - F.
ErrorReport error_metric(const ProbVector& a, const ProbVector& b);

/// <Z_u Z_v> of a pure state.
double zz_expectation(const Statevector& psi, int u, int v);

/// MaxCut energy sum (1 - <ZZ>)/2 from the full statevector.
double maxcut_energy_statevector(const Graph& g, const QaoaParams& params);

}  // namespace qtn
