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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qtn/circuit.hpp"
#include "qtn/error_model.hpp"
#include "qtn/oracle.hpp"

namespace qtn::io {

/// One edge per line as two 0-based node indices; `#` starts a comment.
/// n_nodes is 1 + max index unless a `nodes N` line is present.
Graph parse_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

/// One gate per line: `KIND qubit [qubit] [angle]`; `#` starts a comment.
/// n_qubits is 1 + max qubit unless a `qubits N` line is present.
Circuit parse_circuit(std::istream& in);
Circuit read_circuit_file(const std::string& path);

std::string read_text_file(const std::string& path);

/// Parses "0101" (qubit 0 first) into bits.
std::vector<int> parse_bitstring(const std::string& s);

/// %.17g: round-trips and is byte-stable for identical inputs.
std::string exact(double v);

/// Fixed notation with up to `decimals` places, trailing zeros trimmed but at
/// least one decimal kept: 0.5 -> "0.5", 0 -> "0.0".
std::string short_decimal(double v, int decimals = 8);

/// Header `n,K,seed,d,p,lambda1,lambda2,error`.
void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records);
std::vector<SweepRecord> read_sweep_csv(std::istream& in);

/// {"alpha":...,"delta":...,"mu":...,"r_squared":...}
std::string fit_to_json(const RegressionFit& f);
RegressionFit fit_from_json(const std::string& text);

/// Header `index,bitstring,probability`; bitstring lists qubit 0 first.
void write_distribution_csv(std::ostream& os, const ProbVector& p, int n_qubits);
/// {"n_qubits": n, "probabilities": [...]}, doubles in round-trip form.
std::string distribution_to_json(const ProbVector& p, int n_qubits);

}  // namespace qtn::io
