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

#include "doctest.h"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "knapq/harness.hpp"
#include "knapq/metrics.hpp"

using namespace knapq;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("knapq_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string str(const std::string& name = "") const {
    return name.empty() ? path.string() : (path / name).string();
  }
};

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.methods = {MethodTag::Qubo, MethodTag::Dephasing, MethodTag::Zeno};
  cfg.sizes = {3};
  cfg.layers = {2};
  cfg.instances_per_cell = 2;
  cfg.seed = 11;
  cfg.restarts = 2;
  cfg.max_iterations = 40;
  cfg.eval = EvalMode::Reduced;
  return cfg;
}

// Minimal well-formedness check: tags balance and nest properly.
bool xml_well_formed(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    const auto end = text.find('>', pos);
    if (end == std::string::npos) return false;
    std::string tag = text.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    const bool closing = tag[0] == '/';
    const bool self_closing = tag.back() == '/';
    std::string name = tag.substr(closing ? 1 : 0);
    name = name.substr(0, name.find_first_of(" \t\n/"));
    if (name.empty()) return false;
    if (closing) {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else if (!self_closing) {
      stack.push_back(name);
    }
  }
  return stack.empty();
}

}  // namespace

TEST_CASE("cell_seed: stable and insensitive to unrelated dimensions") {
  const auto s = cell_seed(7, MethodTag::Qubo, 4, 5, 10);
  CHECK(s == cell_seed(7, MethodTag::Qubo, 4, 5, 10));
  CHECK(s != cell_seed(8, MethodTag::Qubo, 4, 5, 10));
  CHECK(s != cell_seed(7, MethodTag::Dephasing, 4, 5, 10));
  CHECK(s != cell_seed(7, MethodTag::Qubo, 5, 5, 10));
  CHECK(s != cell_seed(7, MethodTag::Qubo, 4, 6, 10));
  CHECK(s != cell_seed(7, MethodTag::Qubo, 4, 5, 11));
}

TEST_CASE("resolve_backend: auto picks per method and rejects zeno+statevector") {
  ExperimentConfig cfg = tiny_config();
  CHECK(resolve_backend(cfg, MethodTag::Qubo) == StateBackend::Statevector);
  CHECK(resolve_backend(cfg, MethodTag::Zeno) == StateBackend::Ensemble);
  cfg.backend = "statevector";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.methods = {MethodTag::Qubo, MethodTag::Dephasing};
  CHECK_NOTHROW(validate(cfg));
  cfg.backend = "warp";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("validate: rejects empty dimensions") {
  auto cfg = tiny_config();
  cfg.sizes.clear();
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = tiny_config();
  cfg.instances_per_cell = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("run_experiment: row count and determinism modulo timing") {
  const auto cfg = tiny_config();
  const auto a = run_experiment(cfg);
  CHECK(a.size() == 3 * 1 * 1 * 2);

  const auto b = run_experiment(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].method == b[i].method);
    CHECK(a[i].m == b[i].m);
    CHECK(a[i].p == b[i].p);
    CHECK(a[i].instance_seed == b[i].instance_seed);
    CHECK(a[i].nfev == b[i].nfev);
    CHECK(a[i].p_best == b[i].p_best);
    CHECK(a[i].feasibility_ratio == b[i].feasibility_ratio);
    CHECK(a[i].avg_performance == b[i].avg_performance);
    CHECK(a[i].n_qubits == b[i].n_qubits);
    CHECK(a[i].n_ancilla == b[i].n_ancilla);
    CHECK(a[i].two_qubit_gates_per_layer == b[i].two_qubit_gates_per_layer);
  }
}

TEST_CASE("run_experiment: thread pool reproduces the sequential result") {
  auto cfg = tiny_config();
  const auto seq = run_experiment(cfg);
  cfg.threads = 3;
  const auto par = run_experiment(cfg);
  REQUIRE(seq.size() == par.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].instance_seed == par[i].instance_seed);
    CHECK(seq[i].p_best == par[i].p_best);
    CHECK(seq[i].nfev == par[i].nfev);
  }
}

TEST_CASE("run_cell: resource columns follow the layout formulas") {
  const auto cfg = tiny_config();
  const auto rec = run_cell(cfg, MethodTag::Dephasing, 3, 2, 0);
  const auto inst = generate(rec.instance_seed, 3, cfg.w_max, cfg.v_max, cfg.tightness);
  const auto plan = RegisterPlan::for_instance(inst);
  CHECK(rec.n_ancilla == plan.weight_count + 1);
  CHECK(rec.n_qubits == 3 + rec.n_ancilla);
  CHECK(rec.two_qubit_gates_per_layer > 0);

  const auto qrec = run_cell(cfg, MethodTag::Qubo, 3, 2, 0);
  const auto qinst = generate(qrec.instance_seed, 3, cfg.w_max, cfg.v_max, cfg.tightness);
  CHECK(qrec.n_ancilla == slack_bit_count(qinst.capacity, SlackConvention::Compact));
  CHECK(qrec.n_ancilla < rec.n_ancilla);
}

TEST_CASE("emit_csv: header-only file for zero records and full round-trip") {
  TempDir dir;
  emit_csv({}, dir.str("empty.csv"));
  std::ifstream is(dir.str("empty.csv"));
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == kCsvHeader);
  CHECK(!std::getline(is, line));

  const auto records = run_experiment(tiny_config());
  emit_csv(records, dir.str("runs.csv"));
  const auto back = read_csv(dir.str("runs.csv"));
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(back[i].method == records[i].method);
    CHECK(back[i].instance_seed == records[i].instance_seed);
    CHECK(back[i].nfev == records[i].nfev);
    CHECK(back[i].p_best == doctest::Approx(records[i].p_best).epsilon(1e-11));
    CHECK(back[i].two_qubit_gates_per_layer == records[i].two_qubit_gates_per_layer);
  }
}

TEST_CASE("emit_csv: unwritable path raises an I/O error") {
  CHECK_THROWS_AS(emit_csv({}, "/nonexistent_dir_knapq/x.csv"), IoError);
  CHECK_THROWS_AS(read_csv("/nonexistent_dir_knapq/x.csv"), IoError);
}

TEST_CASE("emit_report: aggregate means match a hand computation") {
  TempDir dir;
  const auto records = run_experiment(tiny_config());
  const auto files = emit_report(records, dir.str());
  REQUIRE(!files.empty());

  // Independent aggregation of one cell's p_best from the raw records.
  double sum = 0;
  long count = 0;
  for (const auto& r : records)
    if (r.method == "qubo" && r.m == 3 && r.p == 2) {
      sum += r.p_best;
      ++count;
    }
  REQUIRE(count > 0);
  const double expected_mean = sum / static_cast<double>(count);

  std::ifstream is(dir.str("aggregate.csv"));
  REQUIRE(is.good());
  std::string line;
  std::getline(is, line);
  CHECK(line == "method,m,p,metric,mean,std,q25,q75,count");
  bool found = false;
  while (std::getline(is, line)) {
    if (line.rfind("qubo,3,2,p_best,", 0) == 0) {
      std::istringstream ls(line);
      std::string field;
      for (int skip = 0; skip < 4; ++skip) std::getline(ls, field, ',');
      std::getline(ls, field, ',');
      CHECK(std::stod(field) == doctest::Approx(expected_mean).epsilon(1e-9));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("emit_report: SVG plots are well-formed XML") {
  TempDir dir;
  auto cfg = tiny_config();
  cfg.layers = {1, 2};  // also exercise the per-layer figures
  const auto records = run_experiment(cfg);
  const auto files = emit_report(records, dir.str());
  int svg_count = 0;
  for (const auto& f : files) {
    if (f.size() > 4 && f.substr(f.size() - 4) == ".svg") {
      ++svg_count;
      std::ifstream is(f);
      std::stringstream ss;
      ss << is.rdbuf();
      CHECK(xml_well_formed(ss.str()));
    }
  }
  CHECK(svg_count > 7);
}

TEST_CASE("emit_report: single instance produces zero-width bands") {
  TempDir dir;
  auto cfg = tiny_config();
  cfg.methods = {MethodTag::Qubo};
  cfg.instances_per_cell = 1;
  const auto records = run_experiment(cfg);
  const auto files = emit_report(records, dir.str());
  std::ifstream is(dir.str("aggregate.csv"));
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.rfind("qubo,3,2,p_best,", 0) == 0) {
      std::istringstream ls(line);
      std::string f;
      std::vector<std::string> fields;
      while (std::getline(ls, f, ',')) fields.push_back(f);
      REQUIRE(fields.size() == 9);
      CHECK(std::stod(fields[4]) == std::stod(fields[6]));  // mean == q25
      CHECK(std::stod(fields[6]) == std::stod(fields[7]));  // q25 == q75
      CHECK(std::stod(fields[5]) == 0.0);                   // std
    }
  }
}

TEST_CASE("emit_report: refuses an empty record set") {
  CHECK_THROWS_AS(emit_report({}, "/tmp"), ValidationError);
}
