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

#include "qtn/ensemble.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qtn/errors.hpp"
#include "qtn/random.hpp"

namespace qtn {

namespace {

// Samples in flight per block. Depends only on the qubit count, so the
// accumulation order never depends on the number of workers.
constexpr std::size_t kMaxBlockSize = 64;
constexpr std::size_t kBlockBytes = std::size_t{256} << 20;

}  // namespace

ProbVector simulate_batch_ensemble(const Circuit& c, const NoiseModel& nm, const EnsembleConfig& cfg,
                                   const StateSimulator& simulator, std::uint64_t mem_cap) {
    if (cfg.K < 1) throw std::invalid_argument("ensemble size K must be >= 1");
    validate(c);
    if (c.n_qubits > 59 || memory_estimate(c.n_qubits) > mem_cap) {
        throw ResourceLimitError("memory cap exceeded: statevector of " + std::to_string(c.n_qubits) + " qubits");
    }

    const std::size_t dim = std::size_t{1} << c.n_qubits;
    const int block_size =
        static_cast<int>(std::clamp<std::size_t>(kBlockBytes / (dim * sizeof(double)), 1, kMaxBlockSize));
    ProbVector sum(dim, 0.0);
    std::vector<double> block(static_cast<std::size_t>(block_size) * dim);
    std::vector<std::exception_ptr> errors(block_size);

    for (int start = 0; start < cfg.K; start += block_size) {
        const int count = std::min(block_size, cfg.K - start);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < count; ++i) {
            try {
                Rng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(start + i)));
                const SampledCircuit sc = sample_noisy_circuit(c, nm, rng);
                const Statevector psi = simulator ? simulator(sc) : statevector_simulate(sc, mem_cap);
                if (psi.amps.size() != dim) throw std::runtime_error("simulator returned a state of the wrong size");
                double* phi = block.data() + static_cast<std::size_t>(i) * dim;
                for (std::size_t j = 0; j < dim; ++j) phi[j] = std::norm(psi.amps[j]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (int i = 0; i < count; ++i) {
            if (errors[i]) std::rethrow_exception(errors[i]);
            const double* phi = block.data() + static_cast<std::size_t>(i) * dim;
            for (std::size_t j = 0; j < dim; ++j) sum[j] += phi[j];
        }
    }

    for (auto& p : sum) p /= cfg.K;
    // Each phi is already normalized; this only absorbs rounding drift.
    const double total = std::accumulate(sum.begin(), sum.end(), 0.0);
    for (auto& p : sum) p /= total;
    return sum;
}

}  // namespace qtn
