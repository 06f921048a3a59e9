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

#pragma once

// Experiment orchestration: seeded instance batches, method sweeps over
// problem size and layer count, CSV persistence, and report/plot emission.

#include <optional>
#include <string>
#include <vector>

#include "knapq/encoders.hpp"
#include "knapq/knapsack.hpp"
#include "knapq/optimizer.hpp"
#include "knapq/types.hpp"

namespace knapq {

struct ExperimentConfig {
  std::vector<MethodTag> methods = {MethodTag::Qubo, MethodTag::Dephasing, MethodTag::Zeno};
  std::vector<int> sizes = {3, 4, 5, 6};
  std::vector<int> layers = {5};
  int instances_per_cell = 50;
  std::uint64_t seed = 0;

  double penalty = 10.0;  // qubo Lagrange multiplier P
  double alpha = 10000.0; // dephasing penalty strength
  PenalMode penal_mode = PenalMode::Flat;
  bool penal_fixed_angle = false;
  SlackConvention slack = SlackConvention::Compact;

  // "auto" picks statevector for the unitary methods and ensemble for zeno.
  std::string backend = "auto";
  long shots = 0;  // 0 = exact distributions
  int restarts = 3;
  int max_iterations = 500;
  double tolerance = 1e-4;
  double initial_step = 0.5;
  EvalMode eval = EvalMode::Reduced;

  int w_max = 10;
  int v_max = 10;
  double tightness = 0.5;

  std::string output_dir = "out";
  int threads = 0;  // 0: KNAPQ_THREADS env var, else 1
};

void validate(const ExperimentConfig& cfg);

/// One benchmark row: a (method, instance, p) cell.
struct RunRecord {
  std::string method;
  int m = 0;
  int p = 0;
  std::uint64_t instance_seed = 0;
  long nfev = 0;
  double wall_time_ms = 0.0;
  double p_best = 0.0;
  double feasibility_ratio = 0.0;
  double avg_performance = 0.0;  // NaN when undefined (best value 0)
  int n_qubits = 0;
  int n_ancilla = 0;
  long two_qubit_gates_per_layer = 0;
};

/// Per-cell seed; depends only on (master seed, method, m, p, index), so
/// adding methods or sizes never shifts other cells' instances.
std::uint64_t cell_seed(std::uint64_t master, MethodTag method, int m, int p,
                        int instance_index);

StateBackend resolve_backend(const ExperimentConfig& cfg, MethodTag method);
EncodingMethod method_for(const ExperimentConfig& cfg, MethodTag tag);
int resolve_threads(const ExperimentConfig& cfg);

RunRecord run_cell(const ExperimentConfig& cfg, MethodTag method, int m, int p,
                   int instance_index);

/// Benchmarks one explicit instance; `seed` drives the optimizer restarts
/// and any shot sampling.
RunRecord run_single(const ExperimentConfig& cfg, MethodTag method,
                     const KnapsackInstance& inst, int p, std::uint64_t seed);

/// Every (method, size, p, instance) cell, deterministically ordered by
/// (method, m, p, instance index). Cells run on a thread pool; records are
/// identical for identical configs up to wall_time_ms.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

// --- persistence ---------------------------------------------------------

extern const char* const kCsvHeader;

void emit_csv(const std::vector<RunRecord>& records, const std::string& path);
std::vector<RunRecord> read_csv(const std::string& path);

/// Aggregate CSV (mean/std/quartiles per cell and metric) plus SVG plots:
/// resources and performance against problem size, and against layer count
/// when several p values are present. Returns the written file paths.
std::vector<std::string> emit_report(const std::vector<RunRecord>& records,
                                     const std::string& out_dir);

}  // namespace knapq
