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

#include <vector>

#include "qtn/ordering.hpp"

namespace qtn::detail {

// Position of every index in an elimination order; validates the order
// against the network on construction.
class PositionMap {
   public:
    PositionMap(const TensorNetwork& tn, const EliminationOrder& order);
    int at(IndexId id) const { return pos_[value_of(id)]; }

   private:
    std::vector<int> pos_;
};

struct SymbolicStep {
    int position;
    int width;
    std::vector<int> result;
};

std::vector<std::vector<int>> position_sets(const TensorNetwork& tn, const PositionMap& pos);

// Bucket elimination on sorted position sets. Positions flagged in `removed`
// are treated as fixed (sliced) and dropped everywhere.
std::vector<SymbolicStep> symbolic_elimination(const std::vector<std::vector<int>>& sets, std::size_t n_positions,
                                               const std::vector<char>& removed);

}  // namespace qtn::detail
