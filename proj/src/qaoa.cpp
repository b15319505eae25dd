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

#include "qtn/qaoa.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#include "qtn/network.hpp"

namespace qtn {

EnergyResult qaoa_energy_detailed(const Graph& g, const QaoaParams& params, const EnergyOptions& options) {
    const Circuit c = qaoa_maxcut_circuit(g, params);
    const auto& edges = g.edges();
    const auto n_edges = static_cast<std::int64_t>(edges.size());

    EnergyResult out;
    out.lightcones.resize(edges.size());
    std::vector<std::exception_ptr> errors(edges.size());

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t e = 0; e < n_edges; ++e) {
        try {
            const Lightcone lc = extract_lightcone(c, edges[e]);
            const EliminationOrder order = greedy_order(lc.network, options.heuristic);
            ContractionResult r = contract_network(lc.network, order, options.backend, options.mem_cap);
            if (std::abs(r.value.imag()) > kMaxImaginaryResidue) {
                throw std::runtime_error("lightcone value has imaginary residue " + std::to_string(r.value.imag()));
            }
            out.lightcones[e] = {edges[e], r.value.real(), std::move(r.stats)};
        } catch (...) {
            errors[e] = std::current_exception();
        }
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
    for (const auto& lc : out.lightcones) out.energy += (1.0 - lc.zz) / 2.0;
    return out;
}

double qaoa_energy(const Graph& g, const QaoaParams& params, const Backend& backend) {
    EnergyOptions options;
    options.backend = backend;
    return qaoa_energy_detailed(g, params, options).energy;
}

std::vector<WidthProfile> lightcone_profiles(const Graph& g, const QaoaParams& params, Heuristic heuristic) {
    const Circuit c = qaoa_maxcut_circuit(g, params);
    const auto& edges = g.edges();
    std::vector<WidthProfile> out(edges.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(edges.size()); ++e) {
        const Lightcone lc = extract_lightcone(c, edges[e]);
        out[e] = dry_run(lc.network, greedy_order(lc.network, heuristic));
    }
    return out;
}

}  // namespace qtn
