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

#include "qtn/tuning.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include "qtn/io.hpp"
#include "qtn/network.hpp"

namespace qtn {

namespace {

template <typename F>
double median_ns(int repeats, F&& body) {
    std::vector<double> t;
    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const auto stop = std::chrono::steady_clock::now();
        t.push_back(static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()));
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

}  // namespace

double TuningReport::projected_mixed(int t) const {
    double total = 0.0;
    for (const auto& row : rows) {
        total += static_cast<double>(row.count) * (row.width > t ? row.mean_ns_fast : row.mean_ns_reference);
    }
    return total;
}

TuningReport tune_threshold(const Graph& g, const QaoaParams& params, const TuneOptions& options) {
    const Circuit c = qaoa_maxcut_circuit(g, params);
    std::map<int, std::vector<Bucket>> samples;
    std::map<int, std::uint64_t> counts;
    const auto per_width = static_cast<std::size_t>(std::max(1, options.samples_per_width));

    for (const auto& edge : g.edges()) {
        const Lightcone lc = extract_lightcone(c, edge);
        const EliminationOrder order = greedy_order(lc.network, options.heuristic);
        auto keep = [&](const Bucket& b) {
            const int w = static_cast<int>(bucket_result_indices(b).size());
            ++counts[w];
            auto& bucket_list = samples[w];
            if (bucket_list.size() < per_width) bucket_list.push_back(b);
        };
        contract_network(lc.network, order, Backend::fast(), options.mem_cap, keep);
    }

    TuningReport report;
    const int repeats = std::max(1, options.repeats);
    for (const auto& [w, buckets] : samples) {
        WidthTiming row;
        row.width = w;
        row.count = counts[w];
        for (const auto& b : buckets) {
            row.mean_ns_reference += median_ns(repeats, [&] { kernels::contract_reference(b); });
            row.mean_ns_fast += median_ns(repeats, [&] { kernels::contract_fast(b); });
        }
        row.mean_ns_reference /= static_cast<double>(buckets.size());
        row.mean_ns_fast /= static_cast<double>(buckets.size());
        report.rows.push_back(row);
        if (report.crossover < 0 && row.mean_ns_fast < row.mean_ns_reference) report.crossover = w;
    }

    for (const auto& row : report.rows) {
        report.projected_reference_ns += static_cast<double>(row.count) * row.mean_ns_reference;
        report.projected_fast_ns += static_cast<double>(row.count) * row.mean_ns_fast;
    }
    const int max_width = report.rows.empty() ? 0 : report.rows.back().width;
    report.threshold = max_width;
    report.projected_mixed_ns = report.projected_mixed(max_width);
    for (int t = 0; t < max_width; ++t) {
        const double total = report.projected_mixed(t);
        if (total < report.projected_mixed_ns) {
            report.projected_mixed_ns = total;
            report.threshold = t;
        }
    }
    return report;
}

void write_tuning_csv(std::ostream& os, const TuningReport& report) {
    os << "width,mean_ns_reference,mean_ns_fast\n";
    for (const auto& row : report.rows) {
        os << row.width << ',' << io::exact(row.mean_ns_reference) << ',' << io::exact(row.mean_ns_fast) << '\n';
    }
}

std::int64_t total_kernel_ns(const EnergyResult& r) {
    std::int64_t total = 0;
    for (const auto& lc : r.lightcones) {
        for (const auto& s : lc.stats) total += s.elapsed_ns;
    }
    return total;
}

std::map<int, WidthAggregate> aggregate_by_width(const EnergyResult& r) {
    std::map<int, WidthAggregate> out;
    for (const auto& lc : r.lightcones) {
        for (const auto& s : lc.stats) {
            auto& a = out[s.width];
            ++a.count;
            a.total_ns += s.elapsed_ns;
        }
    }
    return out;
}

}  // namespace qtn
