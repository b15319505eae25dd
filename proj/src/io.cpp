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

#include "qtn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qtn::io {

namespace {

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return in;
}

int parse_int(const std::string& tok, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size()) throw std::invalid_argument("bad " + what + " '" + tok + "'");
    return v;
}

double parse_double(const std::string& tok, const std::string& what) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size()) throw std::invalid_argument("bad " + what + " '" + tok + "'");
    return v;
}

}  // namespace

Graph parse_graph(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int declared = -1;
    int max_node = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(strip_comment(line));
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok[0] == "nodes") {
            if (tok.size() != 2) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'nodes N'");
            declared = parse_int(tok[1], "node count");
            continue;
        }
        if (tok.size() != 2) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected two node indices");
        const int u = parse_int(tok[0], "node index");
        const int v = parse_int(tok[1], "node index");
        max_node = std::max({max_node, u, v});
        edges.emplace_back(u, v);
    }
    const int n = declared >= 0 ? declared : max_node + 1;
    return Graph(n, std::move(edges));
}

Graph read_graph_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_graph(in);
}

Circuit parse_circuit(std::istream& in) {
    std::vector<Gate> gates;
    int declared = -1;
    int max_qubit = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(strip_comment(line));
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (tok[0] == "qubits") {
            if (tok.size() != 2) throw std::invalid_argument(where + "expected 'qubits N'");
            declared = parse_int(tok[1], "qubit count");
            continue;
        }
        const GateKind kind = parse_gate_kind(tok[0]);
        const std::size_t expected = 1 + arity(kind) + (has_angle(kind) ? 1 : 0);
        if (tok.size() != expected) {
            throw std::invalid_argument(where + "gate " + tok[0] + " expects " + std::to_string(expected - 1) +
                                        " arguments");
        }
        Gate g;
        g.kind = kind;
        for (int k = 0; k < arity(kind); ++k) {
            g.qubits[k] = parse_int(tok[1 + k], "qubit");
            max_qubit = std::max(max_qubit, g.qubits[k]);
        }
        if (has_angle(kind)) g.angle = parse_double(tok.back(), "angle");
        gates.push_back(g);
    }
    Circuit c(declared >= 0 ? declared : max_qubit + 1);
    for (const auto& g : gates) c.add(g);
    return c;
}

Circuit read_circuit_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_circuit(in);
}

std::string read_text_file(const std::string& path) {
    auto in = open_or_throw(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<int> parse_bitstring(const std::string& s) {
    std::vector<int> bits;
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bitstring must contain only 0 and 1");
        bits.push_back(ch - '0');
    }
    return bits;
}

std::string exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string short_decimal(double v, int decimals) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
    }
    return s;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records) {
    os << "n,K,seed,d,p,lambda1,lambda2,error\n";
    for (const auto& r : records) {
        os << r.n_qubits << ',' << r.K << ',' << r.seed << ',' << r.degree << ',' << r.depth << ','
           << exact(r.lambda1) << ',' << exact(r.lambda2) << ',' << exact(r.error) << '\n';
    }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "n,K,seed,d,p,lambda1,lambda2,error") {
        throw std::invalid_argument("sweep CSV must start with header n,K,seed,d,p,lambda1,lambda2,error");
    }
    std::vector<SweepRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 8) throw std::invalid_argument("sweep CSV row needs 8 fields: " + line);
        SweepRecord r;
        r.n_qubits = parse_int(f[0], "n");
        r.K = parse_int(f[1], "K");
        r.seed = std::stoull(f[2]);
        r.degree = parse_int(f[3], "d");
        r.depth = parse_int(f[4], "p");
        r.lambda1 = parse_double(f[5], "lambda1");
        r.lambda2 = parse_double(f[6], "lambda2");
        r.error = parse_double(f[7], "error");
        out.push_back(r);
    }
    return out;
}

std::string fit_to_json(const RegressionFit& f) {
    nlohmann::ordered_json j;
    j["alpha"] = f.alpha;
    j["delta"] = f.delta;
    j["mu"] = f.mu;
    j["r_squared"] = f.r_squared;
    return j.dump();
}

RegressionFit fit_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        RegressionFit f;
        f.alpha = j.at("alpha").get<double>();
        f.delta = j.at("delta").get<double>();
        f.mu = j.at("mu").get<double>();
        f.r_squared = j.value("r_squared", 0.0);
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed fit JSON: ") + e.what());
    }
}

void write_distribution_csv(std::ostream& os, const ProbVector& p, int n_qubits) {
    os << "index,bitstring,probability\n";
    for (std::size_t j = 0; j < p.size(); ++j) {
        std::string bits(static_cast<std::size_t>(n_qubits), '0');
        for (int q = 0; q < n_qubits; ++q) bits[q] = ((j >> q) & 1U) ? '1' : '0';
        os << j << ',' << bits << ',' << exact(p[j]) << '\n';
    }
}

std::string distribution_to_json(const ProbVector& p, int n_qubits) {
    nlohmann::ordered_json j;
    j["n_qubits"] = n_qubits;
    j["probabilities"] = p;
    return j.dump();
}

}  // namespace qtn::io
