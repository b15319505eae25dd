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
#include <iosfwd>
#include <map>
#include <vector>

#include "qtn/circuit.hpp"
#include "qtn/ordering.hpp"
#include "qtn/qaoa.hpp"

namespace qtn {

struct WidthTiming {
    int width = 0;
    /// Buckets of this width across all lightcones of the workload.
    std::uint64_t count = 0;
    double mean_ns_reference = 0.0;
    double mean_ns_fast = 0.0;
};

struct TuningReport {
    std::vector<WidthTiming> rows;
    /// First width at which Fast beats Reference; -1 if it never does.
    int crossover = -1;
    /// Mixed threshold minimizing the projected total kernel time.
    int threshold = Backend::kDefaultThreshold;
    double projected_reference_ns = 0.0;
    double projected_fast_ns = 0.0;
    double projected_mixed_ns = 0.0;

    /// Projected total for Mixed(t) from the per-width means.
    double projected_mixed(int t) const;
};

struct TuneOptions {
    Heuristic heuristic = Heuristic::MinFill;
    std::uint64_t mem_cap = kDefaultMemCap;
    /// Buckets timed per width.
    int samples_per_width = 4;
    /// Timed runs per bucket and kernel; the median is kept.
    int repeats = 3;
};

/// Samples real buckets from every lightcone of the workload, times both
/// kernels on them and picks the threshold.
TuningReport tune_threshold(const Graph& g, const QaoaParams& params, const TuneOptions& options = {});

/// CSV with header `width,mean_ns_reference,mean_ns_fast`.
void write_tuning_csv(std::ostream& os, const TuningReport& report);

/// Sum of per-bucket kernel times of an energy run.
std::int64_t total_kernel_ns(const EnergyResult& r);

/// Per-width aggregates of bucket stats: count and total time.
struct WidthAggregate {
    std::uint64_t count = 0;
    std::int64_t total_ns = 0;
};
std::map<int, WidthAggregate> aggregate_by_width(const EnergyResult& r);

}  // namespace qtn
