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
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "qtn/network.hpp"
#include "qtn/tensor.hpp"

namespace qtn {

/// 4 GiB.
inline constexpr std::uint64_t kDefaultMemCap = std::uint64_t{4} << 30;

enum class Heuristic { MinDegree, MinFill };

std::string_view to_string(Heuristic h);
Heuristic parse_heuristic(std::string_view name);

/// Two indices are adjacent iff they co-occur in some tensor.
struct LineGraph {
    std::map<IndexId, std::set<IndexId>> adjacency;
};

LineGraph line_graph(const TensorNetwork& tn);

struct EliminationOrder {
    std::vector<IndexId> order;
};

struct WidthProfile {
    /// Bucket index eliminated at each step.
    std::vector<IndexId> bucket_indices;
    std::vector<int> per_bucket_widths;
    int contraction_width = 0;
};

/// Greedy elimination on the evolving line graph. Ties go to the smallest id.
EliminationOrder greedy_order(const TensorNetwork& tn, Heuristic heuristic = Heuristic::MinFill);

/// Symbolic bucket elimination over index sets only.
WidthProfile dry_run(const TensorNetwork& tn, const EliminationOrder& order);

/// CSV with header `step,bucket_index,width`.
void write_width_profile_csv(std::ostream& os, const WidthProfile& profile);

struct ContractionResult {
    Complex value{0.0, 0.0};
    std::vector<BucketStats> stats;
    /// Largest total size of the tensors held at any one time.
    std::uint64_t peak_live_bytes = 0;
};

/// Called with every bucket right before it is contracted.
using BucketObserver = std::function<void(const Bucket&)>;

/// Full bucket elimination. Throws ResourceLimitError before allocating if
/// the widest bucket does not fit in `mem_cap`.
ContractionResult contract_network(const TensorNetwork& tn, const EliminationOrder& order,
                                   const Backend& backend, std::uint64_t mem_cap = kDefaultMemCap,
                                   const BucketObserver& observer = {});

/// Indices to fix so the dry-run width drops to `target_width` or below.
std::vector<IndexId> suggest_slicing(const TensorNetwork& tn, const EliminationOrder& order,
                                     int target_width);

/// The network with each sliced index fixed; bit k of `assignment` (counting
/// from the most significant of sliced.size() bits) is the value of sliced[k].
TensorNetwork slice_network(const TensorNetwork& tn, std::span<const IndexId> sliced,
                            std::uint64_t assignment);

EliminationOrder remove_indices(const EliminationOrder& order, std::span<const IndexId> removed);

/// Sum over all 2^s slices, contracted in parallel and added in assignment order.
Complex contract_sliced(const TensorNetwork& tn, const EliminationOrder& order,
                        std::span<const IndexId> sliced, const Backend& backend,
                        std::uint64_t mem_cap = kDefaultMemCap);

}  // namespace qtn
