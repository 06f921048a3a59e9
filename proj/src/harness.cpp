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

#include "knapq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>
#include <tuple>

#include "knapq/circuit.hpp"
#include "knapq/metrics.hpp"

namespace knapq {

void validate(const ExperimentConfig& cfg) {
  if (cfg.methods.empty() || cfg.sizes.empty() || cfg.layers.empty())
    throw ConfigError("config: methods, sizes, and layers must be non-empty");
  if (cfg.instances_per_cell < 1) throw ConfigError("config: instances_per_cell must be >= 1");
  for (int m : cfg.sizes)
    if (m < 1 || m > 20) throw ConfigError("config: sizes must lie in [1, 20]");
  for (int p : cfg.layers)
    if (p < 1) throw ConfigError("config: layers must be >= 1");
  if (cfg.restarts < 1) throw ConfigError("config: restarts must be >= 1");
  if (cfg.shots < 0) throw ConfigError("config: shots must be >= 0");
  if (!(cfg.penalty > 0)) throw ConfigError("config: P must be positive");
  // Fail early on unusable method/backend combinations.
  for (auto tag : cfg.methods) check_backend(method_for(cfg, tag), resolve_backend(cfg, tag));
}

std::uint64_t cell_seed(std::uint64_t master, MethodTag method, int m, int p,
                        int instance_index) {
  return derive_seed(master, {static_cast<std::uint64_t>(method) + 1,
                              static_cast<std::uint64_t>(m),
                              static_cast<std::uint64_t>(p),
                              static_cast<std::uint64_t>(instance_index)});
}

StateBackend resolve_backend(const ExperimentConfig& cfg, MethodTag method) {
  if (cfg.backend == "auto")
    return method == MethodTag::Zeno ? StateBackend::Ensemble : StateBackend::Statevector;
  return parse_backend(cfg.backend);
}

EncodingMethod method_for(const ExperimentConfig& cfg, MethodTag tag) {
  switch (tag) {
    case MethodTag::Qubo:
      return EncodingMethod::qubo(cfg.penalty, cfg.slack);
    case MethodTag::Dephasing:
      return EncodingMethod::dephasing(cfg.alpha, cfg.penal_mode, cfg.penal_fixed_angle);
    case MethodTag::Zeno:
      return EncodingMethod::zeno();
  }
  throw ConfigError("unknown method tag");
}

int resolve_threads(const ExperimentConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("KNAPQ_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

RunRecord run_cell(const ExperimentConfig& cfg, MethodTag tag, int m, int p,
                   int instance_index) {
  const std::uint64_t seed = cell_seed(cfg.seed, tag, m, p, instance_index);
  const auto inst = generate(seed, m, cfg.w_max, cfg.v_max, cfg.tightness);
  return run_single(cfg, tag, inst, p, seed);
}

RunRecord run_single(const ExperimentConfig& cfg, MethodTag tag,
                     const KnapsackInstance& inst, int p, std::uint64_t seed) {
  const auto method = method_for(cfg, tag);
  const auto backend = resolve_backend(cfg, tag);

  RunRecord rec;
  rec.method = method_name(tag);
  rec.m = inst.item_count();
  rec.p = p;
  rec.instance_seed = seed;

  const auto t_start = std::chrono::steady_clock::now();
  auto objective = make_objective(inst, method, backend, cfg.shots, cfg.eval,
                                  derive_seed(seed, {0x73686f74ull}));
  OptimizerOptions opts;
  opts.max_iterations = cfg.max_iterations;
  opts.tolerance = cfg.tolerance;
  opts.initial_step = cfg.initial_step;
  opts.seed = seed;
  const auto trace = multistart(objective, p, cfg.restarts, opts);
  Eigen::VectorXd dist = final_distribution(inst, method, trace.best_params, backend, cfg.eval);
  if (cfg.shots > 0)
    dist = sample_distribution(dist, cfg.shots, derive_seed(seed, {0x6d65747269ull}));
  const auto t_stop = std::chrono::steady_clock::now();

  rec.nfev = trace.nfev;
  rec.wall_time_ms =
      std::chrono::duration<double, std::milli>(t_stop - t_start).count();

  const auto oracle = brute_force(inst);
  const auto metrics = compute_metrics(dist, oracle);
  rec.p_best = metrics.p_best;
  rec.feasibility_ratio = metrics.feasibility_ratio;
  rec.avg_performance =
      metrics.avg_performance.value_or(std::numeric_limits<double>::quiet_NaN());

  rec.n_qubits = total_qubits(inst, method);
  rec.n_ancilla = ancilla_count(inst, method);
  const auto layer = build_layer(inst, method, 0.5, 0.5);
  rec.two_qubit_gates_per_layer = count_resources(layer, p).two_qubit_gates_per_layer;
  return rec;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);

  struct Cell {
    MethodTag tag;
    int m, p, index;
  };
  std::vector<Cell> cells;
  for (auto tag : cfg.methods)
    for (int m : cfg.sizes)
      for (int p : cfg.layers)
        for (int i = 0; i < cfg.instances_per_cell; ++i) cells.push_back({tag, m, p, i});

  std::vector<RunRecord> records(cells.size());
  const int n_threads = std::min<int>(resolve_threads(cfg), static_cast<int>(cells.size()));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& c = cells[i];
      records[i] = run_cell(cfg, c.tag, c.m, c.p, c.index);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        try {
          const auto& c = cells[i];
          records[i] = run_cell(cfg, c.tag, c.m, c.p, c.index);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  // Stable sort on (method, m, p) keeps instance-index order within a cell.
  std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.method, a.m, a.p) < std::tie(b.method, b.m, b.p);
  });
  return records;
}

}  // namespace knapq
