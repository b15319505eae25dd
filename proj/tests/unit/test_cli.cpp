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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "cli.hpp"
#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = qtn::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(QTN_TEST_DATA) + "/" + name; }

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("qtn_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

// Value following `key` in a space-separated "key value ..." output line.
double field(const std::string& text, const std::string& key) {
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        if (tok == key) {
            double v = 0.0;
            ss >> v;
            return v;
        }
    }
    FAIL("missing key " << key);
    return 0.0;
}

class EnvVar {
public:
    EnvVar(const char* name, const char* value) : name_(name) {
        if (const char* old = std::getenv(name)) old_ = old;
        ::setenv(name, value, 1);
    }
    ~EnvVar() {
        if (old_.empty()) {
            ::unsetenv(name_);
        } else {
            ::setenv(name_, old_.c_str(), 1);
        }
    }

private:
    const char* name_;
    std::string old_;
};

}  // namespace

TEST_SUITE("bench_cli") {

TEST_CASE("amplitude of a single Hadamard") {
    Result r = run({"amplitude", "--circuit", data("h1.txt"), "--bitstring", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "0.70710678 0.0\n");
}

TEST_CASE("usage errors exit 2") {
    Result r = run({"amplitude", "--circuit", data("h1.txt"), "--bitstring", "01"});
    CHECK(r.code == 2);
    CHECK(r.err.find("bitstring length mismatch") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"qaoa-energy", "--graph", data("missing.txt"), "--p", "1"}).code == 2);
    CHECK(run({"qaoa-energy", "--graph", data("triangle.txt"), "--p", "2", "--gammas", "0.1"}).code == 2);
    CHECK(run({"qaoa-energy", "--graph", data("triangle.txt"), "--p", "1", "--backend", "gpu"}).code == 2);
    CHECK(run({"ensemble", "--graph", data("triangle.txt"), "--p", "1", "--format", "xml"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("triangle energy at zero angles") {
    Result r = run({"qaoa-energy", "--graph", data("triangle.txt"), "--p", "1", "--gammas", "0", "--betas", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "1.5\n");
}

TEST_CASE("mixed backend routing is visible in stats") {
    TempDir tmp;
    const std::string stats = tmp.file("stats.csv");
    Result r = run({"amplitude", "--nodes", "10", "--p", "2", "--bitstring", "0110100101", "--backend", "mixed",
                    "--threshold", "3", "--stats", stats});
    REQUIRE(r.code == 0);
    const auto rows = read_csv(stats);
    REQUIRE(rows.size() > 1);
    CHECK(rows[0] == std::vector<std::string>{"step", "bucket_index", "width", "elapsed_ns", "backend"});
    int fast = 0;
    int reference = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const int width = std::stoi(rows[i][2]);
        CHECK(rows[i][4] == (width > 3 ? "fast" : "reference"));
        (rows[i][4] == "fast" ? fast : reference)++;
    }
    CHECK(fast > 0);
    CHECK(reference > 0);

    Result ref = run({"amplitude", "--nodes", "10", "--p", "2", "--bitstring", "0110100101"});
    CHECK(ref.out == r.out);
}

TEST_CASE("slicing keeps the amplitude") {
    Result plain = run({"amplitude", "--nodes", "8", "--p", "2", "--bitstring", "01101001"});
    Result sliced = run({"amplitude", "--nodes", "8", "--p", "2", "--bitstring", "01101001", "--slice-target", "3"});
    CHECK(plain.code == 0);
    CHECK(sliced.code == 0);
    CHECK(field("re " + plain.out, "re") == doctest::Approx(field("re " + sliced.out, "re")).epsilon(1e-8));
}

TEST_CASE("dry-run histogram") {
    TempDir tmp;
    Result r = run({"qaoa-energy", "--nodes", "10", "--p", "2", "--dry-run", "--widths", tmp.file("w.csv")});
    REQUIRE(r.code == 0);
    std::istringstream ss(r.out);
    std::string line;
    int lightcones = 0;
    long histogram_total = 0;
    long below5 = 0;
    long listed = 0;
    while (std::getline(ss, line)) {
        if (line.rfind("lightcone ", 0) == 0) {
            ++lightcones;
            listed += static_cast<long>(field(line, "buckets"));
        } else if (line.rfind("width ", 0) == 0) {
            const long c = static_cast<long>(field(line, "count"));
            histogram_total += c;
            if (field(line, "width") < 5) below5 += c;
        } else {
            CHECK(line.rfind("buckets ", 0) == 0);
            CHECK(static_cast<long>(field(line, "buckets")) == histogram_total);
            CHECK(static_cast<long>(field(line, "below_5")) == below5);
        }
    }
    CHECK(lightcones == 15);
    CHECK(listed == histogram_total);
    CHECK(static_cast<long>(read_csv(tmp.file("w.csv")).size()) == histogram_total + 1);
}

TEST_CASE("profile csv invariants") {
    TempDir tmp;
    const std::string prof = tmp.file("prof.csv");
    const std::string summary = tmp.file("summary.csv");
    Result r = run({"qaoa-energy", "--nodes", "10", "--p", "2", "--profile", prof, "--profile-summary", summary});
    REQUIRE(r.code == 0);
    const auto rows = read_csv(prof);
    CHECK(rows[0] ==
          std::vector<std::string>{"lightcone", "step", "width", "count", "total_time_ns", "mean_time_ns", "backend"});
    std::map<int, long> per_width;
    for (std::size_t i = 1; i < rows.size(); ++i) per_width[std::stoi(rows[i][2])] += std::stol(rows[i][3]);
    const auto sum = read_csv(summary);
    CHECK(sum[0] == std::vector<std::string>{"width", "count", "total_time_ns", "mean_time_ns"});
    long total = 0;
    for (std::size_t i = 1; i < sum.size(); ++i) {
        const int w = std::stoi(sum[i][0]);
        const long count = std::stol(sum[i][1]);
        const long t = std::stol(sum[i][2]);
        const long mean = std::stol(sum[i][3]);
        CHECK(per_width[w] == count);
        CHECK(std::abs(mean * count - t) <= count);
        total += count;
    }
    CHECK(total == static_cast<long>(rows.size()) - 1);
}

// Reported, not enforced: with sub-microsecond per-bucket overhead the total
// time grows with width up to the widest buckets instead of splitting in two.
TEST_CASE("reference profile has two separated time modes" * doctest::may_fail()) {
    TempDir tmp;
    const std::string summary = tmp.file("summary.csv");
    REQUIRE(run({"qaoa-energy", "--nodes", "30", "--p", "3", "--backend", "reference", "--profile-summary", summary})
                .code == 0);
    auto rows = read_csv(summary);
    rows.erase(rows.begin());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return std::stol(a[2]) > std::stol(b[2]); });
    REQUIRE(rows.size() >= 2);
    CHECK(std::abs(std::stoi(rows[0][0]) - std::stoi(rows[1][0])) > 1);
}

TEST_CASE("ensemble against the exact oracle") {
    TempDir tmp;
    Result clean = run({"ensemble", "--nodes", "6", "--degree", "4", "--p", "2", "--noise", data("noiseless.json"),
                        "--K", "20", "--compare-exact", "--out", tmp.file("a.csv")});
    REQUIRE(clean.code == 0);
    CHECK(field(clean.out, "error") <= 1e-12);

    Result noisy = run({"ensemble", "--nodes", "6", "--degree", "4", "--p", "2", "--lambda1", "0.001", "--lambda2",
                        "0.004", "--K", "1000", "--compare-exact", "--out", tmp.file("b.csv"), "--report",
                        tmp.file("r.json"), "--exact-out", tmp.file("e.csv")});
    REQUIRE(noisy.code == 0);
    const double e = field(noisy.out, "error");
    CHECK(e > 0.0);
    CHECK(e < 0.1);
    CHECK(slurp(tmp.file("r.json")).find("\"fidelity\"") != std::string::npos);
    CHECK(read_csv(tmp.file("b.csv")).size() == 65);
    CHECK(read_csv(tmp.file("e.csv")).size() == 65);
}

TEST_CASE("ensemble output is identical across thread counts") {
    TempDir tmp;
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "2", "8"}) {
        const std::string path = tmp.file(std::string("t") + threads + ".json");
        Result r = run({"--threads", threads, "--seed", "11", "ensemble", "--nodes", "6", "--degree", "4", "--p", "2",
                        "--K", "300", "--format", "json", "--out", path});
        REQUIRE(r.code == 0);
        outputs.push_back(slurp(path));
    }
    CHECK(!outputs[0].empty());
    CHECK(outputs[0] == outputs[1]);
    CHECK(outputs[0] == outputs[2]);
}

TEST_CASE("density cap exits 3") {
    Result r = run({"ensemble", "--nodes", "8", "--p", "1", "--K", "2", "--compare-exact", "--density-cap", "6"});
    CHECK(r.code == 3);
    CHECK(r.err.find("density matrix cap exceeded") != std::string::npos);
}

TEST_CASE("memory cap exits 3") {
    Result r = run({"qaoa-energy", "--nodes", "30", "--p", "4", "--mem-cap", "1000"});
    CHECK(r.code == 3);
    CHECK(r.err.find("memory cap exceeded: width") != std::string::npos);
}

TEST_CASE("sweep-fit") {
    Result fixed = run({"sweep-fit", "--fixed-fit", "0.05737", "0.11164", "0.98682", "--predict", "100", "0.01"});
    CHECK(fixed.code == 0);
    CHECK(fixed.out.find("predict 100 0.01 480882\n") != std::string::npos);

    CHECK(run({"sweep-fit", "--Ks", "10,100"}).code == 2);

    TempDir tmp;
    Result r = run({"sweep-fit", "--ns", "3..5", "--Ks", "10,100,1000", "--n-seeds", "3", "--p", "1", "--sweep-out",
                    tmp.file("s.csv"), "--fit-out", tmp.file("f.json"), "--predict", "10", "0.05"});
    REQUIRE(r.code == 0);
    CHECK(read_csv(tmp.file("s.csv")).size() == 1 + 3 * 3 * 3);
    CHECK(field(r.out, "mu") > 0.0);
    CHECK(slurp(tmp.file("f.json")).find("\"r_squared\"") != std::string::npos);
    Result refit = run({"sweep-fit", "--from-csv", tmp.file("s.csv")});
    CHECK(refit.code == 0);
    CHECK(field(refit.out, "mu") == field(r.out, "mu"));
}

TEST_CASE("tune-threshold") {
    TempDir tmp;
    Result r = run({"tune-threshold", "--nodes", "12", "--p", "2", "--samples", "2", "--repeats", "1", "--out",
                    tmp.file("t.csv")});
    REQUIRE(r.code == 0);
    const double mixed = field(r.out, "projected_mixed_ns");
    CHECK(mixed <= field(r.out, "projected_reference_ns"));
    CHECK(mixed <= field(r.out, "projected_fast_ns"));
    CHECK(r.out.find("threshold ") != std::string::npos);
    CHECK(read_csv(tmp.file("t.csv"))[0] == std::vector<std::string>{"width", "mean_ns_reference", "mean_ns_fast"});
}

TEST_CASE("QTN_SEED sets the default seed") {
    EnvVar env("QTN_SEED", "7");
    const std::vector<std::string> args{"amplitude", "--nodes", "10", "--p", "1", "--bitstring", "0110100101"};
    Result from_env = run(args);
    std::vector<std::string> seeded{"--seed", "7"};
    seeded.insert(seeded.end(), args.begin(), args.end());
    Result explicit_seed = run(seeded);
    seeded[1] = "8";
    Result other = run(seeded);
    CHECK(from_env.code == 0);
    CHECK(from_env.out == explicit_seed.out);
    CHECK(from_env.out != other.out);
}

}  // TEST_SUITE
