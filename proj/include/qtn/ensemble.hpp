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
#include <functional>

#include "qtn/channels.hpp"
#include "qtn/oracle.hpp"

namespace qtn {

struct EnsembleConfig {
    int K = 1;
    std::uint64_t seed = 0;
};

/// Simulator for one sampled circuit; the default is statevector_simulate.
using StateSimulator = std::function<Statevector(const SampledCircuit&)>;

/// Average of |psi_k|^2 over K sampled noisy circuits, renormalized to sum 1.
/// Sample k draws from stream_seed(seed, k); samples run in parallel and are
/// accumulated in sample order, so the result does not depend on the thread count.
ProbVector simulate_batch_ensemble(const Circuit& c, const NoiseModel& nm, const EnsembleConfig& cfg,
                                   const StateSimulator& simulator = {}, std::uint64_t mem_cap = kDefaultMemCap);

}  // namespace qtn
