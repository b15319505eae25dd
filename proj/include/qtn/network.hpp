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
#include <utility>
#include <vector>

#include "qtn/circuit.hpp"
#include "qtn/tensor.hpp"

namespace qtn {

/// Tensors connected by shared indices. Networks built here use the dense
/// label range [0, index_count).
struct TensorNetwork {
    std::vector<Tensor> tensors;
    std::vector<IndexId> open_indices;
    std::uint32_t index_count = 0;

    bool closed() const { return open_indices.empty(); }
    /// Sorted distinct labels over all tensors.
    std::vector<IndexId> all_indices() const;
};

/// The causal part of the sandwich <0|C^dag Z_u Z_v C|0> for one edge.
struct Lightcone {
    std::pair<int, int> edge;
    /// Sorted qubit labels.
    std::vector<int> cone_qubits;
    /// Positions (into the circuit) of the gates kept in the cone, ascending.
    std::vector<std::size_t> gate_positions;
    TensorNetwork network;
};

/// Closed network contracting to <bitstring|C|0...0>. bitstring[q] is the
/// value of qubit q.
TensorNetwork amplitude_network(const Circuit& c, std::span<const int> bitstring);

/// Backward causal cone of the edge and its sandwich network.
Lightcone extract_lightcone(const Circuit& c, std::pair<int, int> edge);

/// The sandwich network for the edge keeping every gate of the circuit.
TensorNetwork full_sandwich_network(const Circuit& c, std::pair<int, int> edge);

}  // namespace qtn
