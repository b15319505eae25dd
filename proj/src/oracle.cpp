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

#include "qtn/oracle.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qtn/errors.hpp"

namespace qtn {

namespace {

// Applies a 2x2 or 4x4 row-major matrix to the 2^n-vector stored at
// data[k * stride]. For two qubits, qubits[0] is the high bit of the matrix index.
void apply_strided(Complex* data, std::size_t stride, int n_qubits, const Complex* m, std::span<const int> qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (qubits.size() == 1) {
        const std::size_t bit = std::size_t{1} << qubits[0];
        for (std::size_t j = 0; j < dim; ++j) {
            if (j & bit) continue;
            Complex& a0 = data[j * stride];
            Complex& a1 = data[(j | bit) * stride];
            const Complex x0 = a0;
            const Complex x1 = a1;
            a0 = m[0] * x0 + m[1] * x1;
            a1 = m[2] * x0 + m[3] * x1;
        }
        return;
    }
    const std::size_t hi = std::size_t{1} << qubits[0];
    const std::size_t lo = std::size_t{1} << qubits[1];
    for (std::size_t j = 0; j < dim; ++j) {
        if (j & (hi | lo)) continue;
        const std::size_t idx[4] = {j, j | lo, j | hi, j | hi | lo};
        Complex x[4];
        for (int k = 0; k < 4; ++k) x[k] = data[idx[k] * stride];
        for (int r = 0; r < 4; ++r) {
            Complex acc{0.0, 0.0};
            for (int k = 0; k < 4; ++k) acc += m[r * 4 + k] * x[k];
            data[idx[r] * stride] = acc;
        }
    }
}

void check_statevector_size(int n, std::uint64_t mem_cap) {
    if (n < 0 || n > 59 || memory_estimate(n) > mem_cap) {
        throw ResourceLimitError("memory cap exceeded: statevector of " + std::to_string(n) + " qubits");
    }
}

Statevector zero_state(int n) {
    Statevector psi;
    psi.n_qubits = n;
    psi.amps.assign(std::size_t{1} << n, Complex{0.0, 0.0});
    psi.amps[0] = 1.0;
    return psi;
}

}  // namespace

ProbVector Statevector::probabilities() const {
    ProbVector p(amps.size());
    for (std::size_t j = 0; j < amps.size(); ++j) p[j] = std::norm(amps[j]);
    return p;
}

void apply_matrix(Statevector& psi, const std::vector<Complex>& m, std::span<const int> qubits) {
    const std::size_t expected = qubits.size() == 1 ? 4 : 16;
    if ((qubits.size() != 1 && qubits.size() != 2) || m.size() != expected) {
        throw std::invalid_argument("apply_matrix supports one- and two-qubit matrices");
    }
    apply_strided(psi.amps.data(), 1, psi.n_qubits, m.data(), qubits);
}

void apply_gate(Statevector& psi, const Gate& g) { apply_matrix(psi, gate_matrix(g), g.targets()); }

Statevector statevector_simulate(const Circuit& c, std::uint64_t mem_cap) {
    validate(c);
    check_statevector_size(c.n_qubits, mem_cap);
    Statevector psi = zero_state(c.n_qubits);
    for (const auto& g : c.gates) apply_gate(psi, g);
    return psi;
}

Statevector statevector_simulate(const SampledCircuit& sc, std::uint64_t mem_cap) {
    validate(sc.base);
    check_statevector_size(sc.base.n_qubits, mem_cap);
    Statevector psi = zero_state(sc.base.n_qubits);
    std::size_t next = 0;
    for (std::size_t k = 0; k < sc.base.gates.size(); ++k) {
        apply_gate(psi, sc.base.gates[k]);
        for (; next < sc.inserted.size() && sc.inserted[next].after_gate == k; ++next) {
            const auto& ins = sc.inserted[next];
            const Matrix2 p = pauli_matrix(ins.pauli);
            apply_strided(psi.amps.data(), 1, psi.n_qubits, p.data(), std::span<const int>(&ins.qubit, 1));
        }
    }
    return psi;
}

namespace {

// rho <- M rho M^dagger for a matrix on the given qubits.
void conjugate_by(DensityMatrix& rho, const Complex* m, std::size_t m_size, std::span<const int> qubits) {
    const std::size_t dim = rho.dim();
    for (std::size_t c = 0; c < dim; ++c) apply_strided(rho.rho.data() + c, dim, rho.n_qubits, m, qubits);
    std::vector<Complex> mc(m, m + m_size);
    for (auto& z : mc) z = std::conj(z);
    for (std::size_t r = 0; r < dim; ++r) apply_strided(rho.rho.data() + r * dim, 1, rho.n_qubits, mc.data(), qubits);
}

void apply_channel(DensityMatrix& rho, const NoiseChannel& ch, int qubit) {
    std::vector<Complex> acc(rho.rho.size(), Complex{0.0, 0.0});
    for (const auto& k : kraus_operators(ch)) {
        DensityMatrix term = rho;
        conjugate_by(term, k.data(), k.size(), std::span<const int>(&qubit, 1));
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term.rho[i];
    }
    rho.rho = std::move(acc);
}

}  // namespace

void check_density_matrix(const DensityMatrix& rho, double tol) {
    const std::size_t dim = rho.dim();
    Complex trace{0.0, 0.0};
    for (std::size_t r = 0; r < dim; ++r) {
        const Complex d = rho.at(r, r);
        trace += d;
        if (d.real() < -tol || std::abs(d.imag()) > tol) {
            throw std::logic_error("density matrix diagonal is not real and non-negative");
        }
        for (std::size_t c = r + 1; c < dim; ++c) {
            if (std::abs(rho.at(r, c) - std::conj(rho.at(c, r))) > tol) {
                throw std::logic_error("density matrix is not Hermitian");
            }
        }
    }
    if (std::abs(trace - Complex{1.0, 0.0}) > tol) {
        throw std::logic_error("density matrix trace is not 1");
    }
}

DensityMatrix density_matrix_simulate(const Circuit& c, const NoiseModel& nm, int max_qubits, bool check_each_step) {
    validate(c);
    if (c.n_qubits > max_qubits) {
        throw ResourceLimitError("density matrix cap exceeded: " + std::to_string(c.n_qubits) + " qubits > cap " +
                                 std::to_string(max_qubits));
    }
    DensityMatrix rho;
    rho.n_qubits = c.n_qubits;
    rho.rho.assign(rho.dim() * rho.dim(), Complex{0.0, 0.0});
    rho.rho[0] = 1.0;
    for (const auto& g : c.gates) {
        const auto m = gate_matrix(g);
        conjugate_by(rho, m.data(), m.size(), g.targets());
        if (check_each_step) check_density_matrix(rho);
        for (const auto& ch : nm.channels_for(g)) {
            for (int q : g.targets()) {
                apply_channel(rho, ch, q);
                if (check_each_step) check_density_matrix(rho);
            }
        }
    }
    return rho;
}

ProbVector sigma_exact(const DensityMatrix& rho) {
    const std::size_t dim = rho.dim();
    ProbVector out(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const Complex d = rho.at(j, j);
        if (std::abs(d.imag()) > 1e-8) {
            throw std::runtime_error("density matrix diagonal has imaginary part " + std::to_string(d.imag()));
        }
        out[j] = std::max(d.real(), 0.0);
    }
    const double total = std::accumulate(out.begin(), out.end(), 0.0);
    if (!(total > 0.0)) throw std::runtime_error("density matrix has zero diagonal");
    for (auto& p : out) p /= total;
    return out;
}

ErrorReport error_metric(const ProbVector& a, const ProbVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("length mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    double overlap = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) overlap += std::sqrt(std::max(a[j], 0.0) * std::max(b[j], 0.0));
    ErrorReport r;
    r.fidelity = std::clamp(overlap * overlap, 0.0, 1.0);
    r.error = 1.0 - r.fidelity;
    return r;
}

double zz_expectation(const Statevector& psi, int u, int v) {
    double acc = 0.0;
    for (std::size_t j = 0; j < psi.amps.size(); ++j) {
        const bool odd = (((j >> u) ^ (j >> v)) & 1U) != 0;
        acc += odd ? -std::norm(psi.amps[j]) : std::norm(psi.amps[j]);
    }
    return acc;
}

double maxcut_energy_statevector(const Graph& g, const QaoaParams& params) {
    const Statevector psi = statevector_simulate(qaoa_maxcut_circuit(g, params));
    double energy = 0.0;
    for (auto [u, v] : g.edges()) energy += (1.0 - zz_expectation(psi, u, v)) / 2.0;
    return energy;
}

}  // namespace qtn
