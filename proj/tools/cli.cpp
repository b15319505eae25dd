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

#include "cli.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qtn/channels.hpp"
#include "qtn/ensemble.hpp"
#include "qtn/error_model.hpp"
#include "qtn/errors.hpp"
#include "qtn/io.hpp"
#include "qtn/network.hpp"
#include "qtn/oracle.hpp"
#include "qtn/ordering.hpp"
#include "qtn/qaoa.hpp"
#include "qtn/tuning.hpp"

namespace qtn::cli {
namespace {

constexpr double kDefaultGamma = 0.6;
constexpr double kDefaultBeta = 0.4;

struct GraphOptions {
    std::string path;
    int nodes = 0;
    int degree = 3;
    std::optional<std::uint64_t> graph_seed;
};

struct QaoaOptions {
    CLI::Option* p_flag = nullptr;
    int p = 1;
    std::vector<double> gammas;
    std::vector<double> betas;
};

struct BackendOptions {
    std::string backend = "reference";
    int threshold = Backend::kDefaultThreshold;
    std::string heuristic = "minfill";
    std::uint64_t mem_cap = kDefaultMemCap;
};

void add_graph_options(CLI::App* sub, GraphOptions& o) {
    sub->add_option("--graph", o.path, "Edge-list file");
    sub->add_option("--nodes", o.nodes, "Random regular graph size");
    sub->add_option("--degree", o.degree, "Random regular graph degree");
    sub->add_option("--graph-seed", o.graph_seed, "Random graph seed (default: --seed)");
}

void add_qaoa_options(CLI::App* sub, QaoaOptions& o) {
    o.p_flag = sub->add_option("--p", o.p, "QAOA depth");
    sub->add_option("--gammas", o.gammas, "Comma-separated gamma angles")->delimiter(',');
    sub->add_option("--betas", o.betas, "Comma-separated beta angles")->delimiter(',');
}

void add_backend_options(CLI::App* sub, BackendOptions& o) {
    sub->add_option("--backend", o.backend, "reference, fast or mixed");
    sub->add_option("--threshold", o.threshold, "Mixed backend threshold");
    sub->add_option("--heuristic", o.heuristic, "minfill or mindegree");
    sub->add_option("--mem-cap", o.mem_cap, "Memory cap in bytes");
}

Graph load_graph(const GraphOptions& o, std::uint64_t seed) {
    if (!o.path.empty()) return io::read_graph_file(o.path);
    if (o.nodes > 0) return random_regular_graph(o.nodes, o.degree, o.graph_seed.value_or(seed));
    throw std::invalid_argument("a graph is required: pass --graph or --nodes");
}

QaoaParams qaoa_params(const QaoaOptions& o) {
    QaoaParams params{o.gammas, o.betas};
    const bool p_given = o.p_flag && o.p_flag->count() > 0;
    if (o.p < 1) throw std::invalid_argument("--p must be >= 1");
    auto fill = [&](std::vector<double>& v, double dflt, const char* name) {
        if (v.empty()) {
            v.assign(static_cast<std::size_t>(o.p), dflt);
        } else if (p_given && static_cast<int>(v.size()) != o.p) {
            throw std::invalid_argument(std::string("--") + name + " needs " + std::to_string(o.p) + " values");
        }
    };
    fill(params.gammas, kDefaultGamma, "gammas");
    fill(params.betas, kDefaultBeta, "betas");
    validate(params);
    return params;
}

Backend make_backend(const BackendOptions& o) {
    switch (parse_backend_kind(o.backend)) {
        case Backend::Kind::Reference: return Backend::reference();
        case Backend::Kind::Fast: return Backend::fast();
        case Backend::Kind::Mixed: return Backend::mixed(o.threshold);
    }
    throw std::logic_error("unhandled backend");
}

EnergyOptions energy_options(const BackendOptions& o) {
    return {make_backend(o), parse_heuristic(o.heuristic), o.mem_cap};
}

// Accepts "3,4,5" and inclusive ranges such as "3..8".
template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    auto number = [&](const std::string& s) -> T {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
            v = std::stoull(s, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != s.size()) throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
        return static_cast<T>(v);
    };
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(number(item));
            continue;
        }
        const T lo = number(item.substr(0, dots));
        const T hi = number(item.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument(std::string("empty range in ") + what + " '" + item + "'");
        for (T v = lo; v <= hi; ++v) out.push_back(v);
    }
    return out;
}

// Runs `fn` on a freshly opened file; config error if it cannot be created.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot write '" + path + "'");
    fn(os);
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

void write_distribution(std::ostream& os, const ProbVector& p, int n, const std::string& format) {
    if (format == "json") {
        os << io::distribution_to_json(p, n) << '\n';
    } else {
        io::write_distribution_csv(os, p, n);
    }
}

void write_bucket_stats(std::ostream& os, std::span<const BucketStats> stats) {
    os << "step,bucket_index,width,elapsed_ns,backend\n";
    for (std::size_t k = 0; k < stats.size(); ++k) {
        const auto& s = stats[k];
        os << k << ',' << value_of(s.bucket_index) << ',' << s.width << ',' << s.elapsed_ns << ','
           << to_string(s.backend_used) << '\n';
    }
}

std::int64_t rounded_mean(std::int64_t total, std::uint64_t count) {
    return count == 0 ? 0 : std::llround(static_cast<double>(total) / static_cast<double>(count));
}

// ---------------------------------------------------------------- amplitude

struct AmplitudeArgs {
    std::string circuit;
    GraphOptions graph;
    QaoaOptions qaoa;
    BackendOptions backend;
    std::string bitstring;
    std::string stats_path;
    std::string widths_path;
    int slice_target = 0;
};

int cmd_amplitude(const AmplitudeArgs& a, std::uint64_t seed, std::ostream& out) {
    const Circuit c = a.circuit.empty() ? qaoa_maxcut_circuit(load_graph(a.graph, seed), qaoa_params(a.qaoa))
                                        : io::read_circuit_file(a.circuit);
    const std::vector<int> bits = io::parse_bitstring(a.bitstring);
    const TensorNetwork tn = amplitude_network(c, bits);
    const EnergyOptions opts = energy_options(a.backend);
    const EliminationOrder order = greedy_order(tn, opts.heuristic);

    Complex value;
    std::vector<BucketStats> stats;
    if (a.slice_target > 0) {
        const auto sliced = suggest_slicing(tn, order, a.slice_target);
        value = contract_sliced(tn, order, sliced, opts.backend, opts.mem_cap);
    } else {
        ContractionResult r = contract_network(tn, order, opts.backend, opts.mem_cap);
        value = r.value;
        stats = std::move(r.stats);
    }

    if (!a.stats_path.empty()) write_file(a.stats_path, [&](std::ostream& os) { write_bucket_stats(os, stats); });
    if (!a.widths_path.empty()) {
        const WidthProfile profile = dry_run(tn, order);
        write_file(a.widths_path, [&](std::ostream& os) { write_width_profile_csv(os, profile); });
    }
    out << io::short_decimal(value.real()) << ' ' << io::short_decimal(value.imag()) << '\n';
    return kExitOk;
}

// -------------------------------------------------------------- qaoa-energy

struct EnergyArgs {
    GraphOptions graph;
    QaoaOptions qaoa;
    BackendOptions backend;
    bool dry = false;
    std::string profile_path;
    std::string summary_path;
    std::string widths_path;
};

int dry_run_report(const Graph& g, const QaoaParams& params, const EnergyArgs& a, std::ostream& out) {
    const auto profiles = lightcone_profiles(g, params, parse_heuristic(a.backend.heuristic));
    std::map<int, std::uint64_t> histogram;
    std::uint64_t total = 0;
    std::uint64_t below = 0;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto [u, v] = g.edges()[i];
        out << "lightcone " << i << ' ' << u << ' ' << v << " buckets " << profiles[i].per_bucket_widths.size()
            << " contraction_width " << profiles[i].contraction_width << '\n';
        for (int w : profiles[i].per_bucket_widths) {
            ++histogram[w];
            ++total;
            if (w < 5) ++below;
        }
    }
    for (auto [w, n] : histogram) out << "width " << w << " count " << n << '\n';
    const double fraction = total ? static_cast<double>(below) / static_cast<double>(total) : 0.0;
    out << "buckets " << total << " below_5 " << below << " fraction " << io::short_decimal(fraction, 6) << '\n';

    if (!a.widths_path.empty()) {
        write_file(a.widths_path, [&](std::ostream& os) {
            os << "lightcone,step,bucket_index,width\n";
            for (std::size_t i = 0; i < profiles.size(); ++i) {
                const auto& p = profiles[i];
                for (std::size_t k = 0; k < p.per_bucket_widths.size(); ++k) {
                    os << i << ',' << k << ',' << value_of(p.bucket_indices[k]) << ',' << p.per_bucket_widths[k]
                       << '\n';
                }
            }
        });
    }
    return kExitOk;
}

int cmd_qaoa_energy(const EnergyArgs& a, std::uint64_t seed, std::ostream& out) {
    const Graph g = load_graph(a.graph, seed);
    const QaoaParams params = qaoa_params(a.qaoa);
    if (a.dry) return dry_run_report(g, params, a, out);

    const EnergyResult r = qaoa_energy_detailed(g, params, energy_options(a.backend));
    if (!a.profile_path.empty()) {
        write_file(a.profile_path, [&](std::ostream& os) {
            os << "lightcone,step,width,count,total_time_ns,mean_time_ns,backend\n";
            for (std::size_t i = 0; i < r.lightcones.size(); ++i) {
                const auto& stats = r.lightcones[i].stats;
                for (std::size_t k = 0; k < stats.size(); ++k) {
                    os << i << ',' << k << ',' << stats[k].width << ",1," << stats[k].elapsed_ns << ','
                       << stats[k].elapsed_ns << ',' << to_string(stats[k].backend_used) << '\n';
                }
            }
        });
    }
    if (!a.summary_path.empty()) {
        write_file(a.summary_path, [&](std::ostream& os) {
            os << "width,count,total_time_ns,mean_time_ns\n";
            for (auto [w, agg] : aggregate_by_width(r)) {
                os << w << ',' << agg.count << ',' << agg.total_ns << ',' << rounded_mean(agg.total_ns, agg.count)
                   << '\n';
            }
        });
    }
    out << io::short_decimal(r.energy, 12) << '\n';
    return kExitOk;
}

// ----------------------------------------------------------------- ensemble

struct EnsembleArgs {
    std::string circuit;
    GraphOptions graph;
    QaoaOptions qaoa;
    std::string noise_path;
    double lambda1 = 0.001;
    double lambda2 = 0.004;
    int K = 100;
    std::string out_path;
    std::string format = "csv";
    bool compare_exact = false;
    std::string exact_out;
    std::string report_path;
    int density_cap = kDefaultDensityQubitCap;
    std::uint64_t mem_cap = kDefaultMemCap;
};

int cmd_ensemble(const EnsembleArgs& a, std::uint64_t seed, std::ostream& out) {
    const Circuit c = a.circuit.empty() ? qaoa_maxcut_circuit(load_graph(a.graph, seed), qaoa_params(a.qaoa))
                                        : io::read_circuit_file(a.circuit);
    const NoiseModel nm = a.noise_path.empty() ? NoiseModel::depolarizing(a.lambda1, a.lambda2)
                                               : NoiseModel::from_json(io::read_text_file(a.noise_path));

    // The exact run goes first so an oversized request fails before the sampling work.
    std::optional<ProbVector> exact;
    if (a.compare_exact) exact = sigma_exact(density_matrix_simulate(c, nm, a.density_cap));
    const ProbVector approx = simulate_batch_ensemble(c, nm, {a.K, seed}, {}, a.mem_cap);

    if (a.out_path.empty()) {
        write_distribution(out, approx, c.n_qubits, a.format);
    } else {
        write_file(a.out_path, [&](std::ostream& os) { write_distribution(os, approx, c.n_qubits, a.format); });
    }
    if (!exact) return kExitOk;

    const ErrorReport rep = error_metric(approx, *exact);
    if (!a.exact_out.empty()) {
        write_file(a.exact_out, [&](std::ostream& os) { write_distribution(os, *exact, c.n_qubits, a.format); });
    }
    if (!a.report_path.empty()) {
        write_file(a.report_path, [&](std::ostream& os) {
            os << "{\"fidelity\":" << io::exact(rep.fidelity) << ",\"error\":" << io::exact(rep.error) << "}\n";
        });
    }
    out << "error " << io::exact(rep.error) << " fidelity " << io::exact(rep.fidelity) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- sweep-fit

struct SweepArgs {
    std::string ns;
    std::string ks;
    std::string seeds;
    int n_seeds = 0;
    int degree = 4;
    QaoaOptions qaoa;
    double lambda1 = 0.001;
    double lambda2 = 0.004;
    std::optional<std::uint64_t> graph_seed;
    std::string sweep_out;
    std::string fit_out;
    std::string from_csv;
    std::vector<double> fixed_fit;
    std::vector<std::pair<int, double>> predictions;
};

int cmd_sweep_fit(const SweepArgs& a, std::uint64_t seed, std::ostream& out) {
    std::vector<SweepRecord> records;
    const bool grid_given = !a.ns.empty() || !a.ks.empty();
    if (!a.from_csv.empty()) {
        std::ifstream in(a.from_csv);
        if (!in) throw std::invalid_argument("cannot open '" + a.from_csv + "'");
        records = io::read_sweep_csv(in);
    } else if (a.fixed_fit.empty() || grid_given) {
        SweepSpec spec;
        spec.qubit_counts = parse_list<int>(a.ns, "--ns");
        spec.ensemble_sizes = parse_list<int>(a.ks, "--Ks");
        spec.seeds = parse_list<std::uint64_t>(a.seeds, "--seeds");
        for (int i = 0; i < a.n_seeds; ++i) spec.seeds.push_back(seed + static_cast<std::uint64_t>(i));
        if (spec.seeds.empty()) spec.seeds.push_back(seed);
        spec.degree = a.degree;
        spec.params = qaoa_params(a.qaoa);
        spec.lambda1 = a.lambda1;
        spec.lambda2 = a.lambda2;
        spec.graph_seed = a.graph_seed.value_or(seed);
        records = run_sweep(spec);
    }

    RegressionFit f;
    if (a.fixed_fit.empty()) {
        f = fit(records);
    } else {
        f.alpha = a.fixed_fit[0];
        f.delta = a.fixed_fit[1];
        f.mu = a.fixed_fit[2];
    }

    if (!a.sweep_out.empty() && !records.empty()) {
        write_file(a.sweep_out, [&](std::ostream& os) { io::write_sweep_csv(os, records); });
    }
    if (!a.fit_out.empty()) write_file(a.fit_out, [&](std::ostream& os) { os << io::fit_to_json(f) << '\n'; });

    out << "alpha " << io::exact(f.alpha) << " delta " << io::exact(f.delta) << " mu " << io::exact(f.mu);
    if (a.fixed_fit.empty()) out << " r_squared " << io::exact(f.r_squared) << " excluded " << f.excluded;
    out << '\n';
    for (auto [n, target] : a.predictions) {
        const std::uint64_t k = predict_circuits(f, n, target);
        out << "predict " << n << ' ' << io::exact(target) << ' ' << k << '\n';
    }
    return kExitOk;
}

// ----------------------------------------------------------- tune-threshold

struct TuneArgs {
    GraphOptions graph;
    QaoaOptions qaoa;
    std::string heuristic = "minfill";
    std::uint64_t mem_cap = kDefaultMemCap;
    int samples = 4;
    int repeats = 3;
    std::string out_path;
    int verify_runs = 0;
};

std::int64_t best_kernel_ns(const Graph& g, const QaoaParams& params, const EnergyOptions& opts, int runs) {
    std::int64_t best = -1;
    for (int i = 0; i < runs; ++i) {
        const std::int64_t t = total_kernel_ns(qaoa_energy_detailed(g, params, opts));
        if (best < 0 || t < best) best = t;
    }
    return best;
}

int cmd_tune_threshold(const TuneArgs& a, std::uint64_t seed, std::ostream& out) {
    const Graph g = load_graph(a.graph, seed);
    const QaoaParams params = qaoa_params(a.qaoa);
    TuneOptions opts;
    opts.heuristic = parse_heuristic(a.heuristic);
    opts.mem_cap = a.mem_cap;
    opts.samples_per_width = a.samples;
    opts.repeats = a.repeats;
    if (opts.samples_per_width < 1 || opts.repeats < 1) {
        throw std::invalid_argument("--samples and --repeats must be >= 1");
    }
    const TuningReport rep = tune_threshold(g, params, opts);
    if (!a.out_path.empty()) write_file(a.out_path, [&](std::ostream& os) { write_tuning_csv(os, rep); });

    out << "crossover ";
    if (rep.crossover < 0) {
        out << "none\n";
    } else {
        out << rep.crossover << '\n';
    }
    out << "threshold " << rep.threshold << '\n';
    out << "projected_reference_ns " << std::llround(rep.projected_reference_ns) << '\n';
    out << "projected_fast_ns " << std::llround(rep.projected_fast_ns) << '\n';
    out << "projected_mixed_ns " << std::llround(rep.projected_mixed_ns) << '\n';

    if (a.verify_runs > 0) {
        const EnergyOptions tuned{Backend::mixed(rep.threshold), opts.heuristic, opts.mem_cap};
        const EnergyOptions dflt{Backend::mixed(), opts.heuristic, opts.mem_cap};
        out << "measured_mixed_tuned_ns " << best_kernel_ns(g, params, tuned, a.verify_runs) << '\n';
        out << "measured_mixed_default_ns " << best_kernel_ns(g, params, dflt, a.verify_runs) << '\n';
    }
    return kExitOk;
}

// Restores the OpenMP thread count on scope exit so in-process callers are unaffected.
class ThreadScope {
   public:
    explicit ThreadScope(int n) : saved_(omp_get_max_threads()) {
        if (n > 0) omp_set_num_threads(n);
    }
    ~ThreadScope() { omp_set_num_threads(saved_); }
    ThreadScope(const ThreadScope&) = delete;
    ThreadScope& operator=(const ThreadScope&) = delete;

   private:
    int saved_;
};

std::uint64_t default_seed() {
    const char* env = std::getenv("QTN_SEED");
    if (env == nullptr || *env == '\0') return 0;
    const std::string s = env;
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        if (s[0] == '-') throw std::invalid_argument(s);
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != s.size()) throw std::invalid_argument("QTN_SEED is not an unsigned integer: '" + s + "'");
    return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tensor-network quantum circuit simulator", "qtn"};
    app.require_subcommand(1);

    int threads = 0;
    std::uint64_t seed = 0;
    app.add_option("--threads", threads, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
    auto* seed_opt = app.add_option("--seed", seed, "Base seed (default: $QTN_SEED or 0)");

    AmplitudeArgs amp;
    auto* amp_cmd = app.add_subcommand("amplitude", "Contract a single output amplitude");
    amp_cmd->add_option("--circuit", amp.circuit, "Circuit file");
    add_graph_options(amp_cmd, amp.graph);
    add_qaoa_options(amp_cmd, amp.qaoa);
    add_backend_options(amp_cmd, amp.backend);
    amp_cmd->add_option("--bitstring", amp.bitstring, "Output bits, qubit 0 first")->required();
    amp_cmd->add_option("--stats", amp.stats_path, "Per-bucket stats CSV");
    amp_cmd->add_option("--widths", amp.widths_path, "Width profile CSV");
    amp_cmd->add_option("--slice-target", amp.slice_target, "Slice until the width is at most this");

    EnergyArgs energy;
    auto* energy_cmd = app.add_subcommand("qaoa-energy", "QAOA MaxCut energy by lightcones");
    add_graph_options(energy_cmd, energy.graph);
    add_qaoa_options(energy_cmd, energy.qaoa);
    add_backend_options(energy_cmd, energy.backend);
    energy_cmd->add_flag("--dry-run", energy.dry, "Report bucket widths only");
    energy_cmd->add_option("--profile", energy.profile_path, "Per-bucket timing CSV");
    energy_cmd->add_option("--profile-summary", energy.summary_path, "Timing by width CSV");
    energy_cmd->add_option("--widths", energy.widths_path, "Per-bucket width CSV (with --dry-run)");

    EnsembleArgs ens;
    auto* ens_cmd = app.add_subcommand("ensemble", "Stochastic noise ensemble");
    ens_cmd->add_option("--circuit", ens.circuit, "Circuit file");
    add_graph_options(ens_cmd, ens.graph);
    add_qaoa_options(ens_cmd, ens.qaoa);
    auto* noise_opt = ens_cmd->add_option("--noise", ens.noise_path, "Noise config JSON");
    ens_cmd->add_option("--lambda1", ens.lambda1, "Single-qubit depolarizing strength")->excludes(noise_opt);
    ens_cmd->add_option("--lambda2", ens.lambda2, "Two-qubit depolarizing strength")->excludes(noise_opt);
    ens_cmd->add_option("--K", ens.K, "Number of sampled circuits");
    ens_cmd->add_option("--out", ens.out_path, "Output file for the ensemble distribution");
    ens_cmd->add_option("--format", ens.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    ens_cmd->add_flag("--compare-exact", ens.compare_exact, "Also run the density-matrix oracle");
    ens_cmd->add_option("--exact-out", ens.exact_out, "Output file for the exact distribution");
    ens_cmd->add_option("--report", ens.report_path, "Error report JSON");
    ens_cmd->add_option("--density-cap", ens.density_cap, "Largest qubit count for the oracle");
    ens_cmd->add_option("--mem-cap", ens.mem_cap, "Memory cap in bytes");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep-fit", "Error sweep and regression fit");
    sweep_cmd->add_option("--ns", sweep.ns, "Qubit counts, e.g. 3..8");
    sweep_cmd->add_option("--Ks", sweep.ks, "Ensemble sizes, e.g. 10,100,1000");
    sweep_cmd->add_option("--seeds", sweep.seeds, "Ensemble seeds");
    sweep_cmd->add_option("--n-seeds", sweep.n_seeds, "Use seeds --seed .. --seed + N - 1");
    sweep_cmd->add_option("--degree", sweep.degree, "Graph degree (clamped when infeasible)");
    add_qaoa_options(sweep_cmd, sweep.qaoa);
    sweep_cmd->add_option("--lambda1", sweep.lambda1, "Single-qubit depolarizing strength");
    sweep_cmd->add_option("--lambda2", sweep.lambda2, "Two-qubit depolarizing strength");
    sweep_cmd->add_option("--graph-seed", sweep.graph_seed, "Graph seed (default: --seed)");
    sweep_cmd->add_option("--sweep-out", sweep.sweep_out, "Sweep CSV");
    sweep_cmd->add_option("--fit-out", sweep.fit_out, "Fit JSON");
    sweep_cmd->add_option("--from-csv", sweep.from_csv, "Fit an existing sweep CSV");
    sweep_cmd->add_option("--fixed-fit", sweep.fixed_fit, "Use alpha delta mu instead of fitting")->expected(3);
    sweep_cmd->add_option("--predict", sweep.predictions, "N TARGET: circuits needed for TARGET error");

    TuneArgs tune;
    auto* tune_cmd = app.add_subcommand("tune-threshold", "Time both kernels by width");
    add_graph_options(tune_cmd, tune.graph);
    add_qaoa_options(tune_cmd, tune.qaoa);
    tune_cmd->add_option("--heuristic", tune.heuristic, "minfill or mindegree");
    tune_cmd->add_option("--mem-cap", tune.mem_cap, "Memory cap in bytes");
    tune_cmd->add_option("--samples", tune.samples, "Buckets timed per width");
    tune_cmd->add_option("--repeats", tune.repeats, "Timed runs per bucket");
    tune_cmd->add_option("--out", tune.out_path, "Per-width timing CSV");
    tune_cmd->add_option("--verify", tune.verify_runs, "Re-time Mixed(w*) and Mixed(11), best of N runs");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (seed_opt->count() == 0) seed = default_seed();
        ThreadScope scope(threads);
        if (amp_cmd->parsed()) return cmd_amplitude(amp, seed, out);
        if (energy_cmd->parsed()) return cmd_qaoa_energy(energy, seed, out);
        if (ens_cmd->parsed()) return cmd_ensemble(ens, seed, out);
        if (sweep_cmd->parsed()) return cmd_sweep_fit(sweep, seed, out);
        if (tune_cmd->parsed()) return cmd_tune_threshold(tune, seed, out);
        throw std::logic_error("no subcommand");
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace qtn::cli
