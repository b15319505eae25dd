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
#include <utility>
#include <vector>

#include "qtn/circuit.hpp"
#include "qtn/ordering.hpp"

namespace qtn {

struct EnergyOptions {
    Backend backend = Backend::reference();
    Heuristic heuristic = Heuristic::MinFill;
    std::uint64_t mem_cap = kDefaultMemCap;
};

struct LightconeResult {
    std::pair<int, int> edge;
    /// <Z_u Z_v> for this edge.
    double zz = 0.0;
    std::vector<BucketStats> stats;
};

struct EnergyResult {
    /// Sum over edges of (1 - <Z_u Z_v>) / 2.
    double energy = 0.0;
    /// One entry per edge, in the graph's edge order.
    std::vector<LightconeResult> lightcones;
};

/// Imaginary residue above this marks a broken contraction.
inline constexpr double kMaxImaginaryResidue = 1e-8;

/// MaxCut energy from one lightcone contraction per edge. Lightcones run in
/// parallel; the sum is taken in edge order afterwards.
EnergyResult qaoa_energy_detailed(const Graph& g, const QaoaParams& params, const EnergyOptions& options = {});

double qaoa_energy(const Graph& g, const QaoaParams& params, const Backend& backend = Backend::reference());

/// Dry-run width profile of every lightcone, in edge order.
std::vector<WidthProfile> lightcone_profiles(const Graph& g, const QaoaParams& params,
                                             Heuristic heuristic = Heuristic::MinFill);

}  // namespace qtn
