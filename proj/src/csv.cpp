// Copyright 2026 The knapq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <sstream>

#include "knapq/harness.hpp"

namespace knapq {

const char* const kCsvHeader =
    "method,m,p,instance_seed,nfev,wall_time_ms,p_best,feasibility_ratio,"
    "avg_performance,n_qubits,n_ancilla,two_qubit_gates_per_layer";

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void emit_csv(const std::vector<RunRecord>& records, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("emit_csv: cannot open for writing: " + path);
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << r.method << ',' << r.m << ',' << r.p << ',' << r.instance_seed << ',' << r.nfev
       << ',' << num(r.wall_time_ms) << ',' << num(r.p_best) << ','
       << num(r.feasibility_ratio) << ',' << num(r.avg_performance) << ',' << r.n_qubits
       << ',' << r.n_ancilla << ',' << r.two_qubit_gates_per_layer << '\n';
  }
  if (!os) throw IoError("emit_csv: write failed: " + path);
}

std::vector<RunRecord> read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("read_csv: cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError("read_csv: empty file: " + path);
  if (line != kCsvHeader) throw IoError("read_csv: unexpected header in " + path);

  std::vector<RunRecord> records;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 12) throw IoError("read_csv: malformed row: " + line);
    RunRecord r;
    r.method = f[0];
    r.m = std::stoi(f[1]);
    r.p = std::stoi(f[2]);
    r.instance_seed = std::stoull(f[3]);
    r.nfev = std::stol(f[4]);
    r.wall_time_ms = std::stod(f[5]);
    r.p_best = std::stod(f[6]);
    r.feasibility_ratio = std::stod(f[7]);
    r.avg_performance = std::stod(f[8]);
    r.n_qubits = std::stoi(f[9]);
    r.n_ancilla = std::stoi(f[10]);
    r.two_qubit_gates_per_layer = std::stol(f[11]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace knapq
