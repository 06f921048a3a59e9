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

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "knapq/encoders.hpp"
#include "knapq/knapsack.hpp"
#include "knapq/state.hpp"
#include "knapq/types.hpp"

namespace knapq {

struct OptimizerOptions {
  int max_iterations = 500;
  double initial_step = 0.5;
  double tolerance = 1e-4;  // on the simplex size
  std::uint64_t seed = 0;
};

struct OptimizationTrace {
  AnsatzParams best_params;
  double best_value = 0.0;
  long nfev = 0;
  std::vector<std::pair<long, double>> history;  // (iteration, best value so far)
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

/// Derivative-free local minimum search: Nelder-Mead simplex with the
/// dimension-adaptive coefficients of Gao & Han (2012). Deterministic;
/// terminates when the simplex diameter falls below `tolerance`, the values
/// flatten out, or `max_iterations` is reached. Throws on non-finite
/// objective values.
OptimizationTrace minimize(const Objective& objective, const Eigen::VectorXd& x0,
                           const OptimizerOptions& opts);

/// Best trace over seeded random starts drawn uniformly from [0, 2 pi)^(2p);
/// nfev accumulates across restarts.
OptimizationTrace multistart(const Objective& objective, int p, int restarts,
                             const OptimizerOptions& opts);

/// How objective evaluations simulate the ansatz.
///  * Circuit: build and run the gate-level program.
///  * Reduced: run the proven-equivalent data-register evolution
///    (phase-encoded methods) or the fused diagonal pass (qubo).
enum class EvalMode : std::uint8_t { Circuit, Reduced };

inline std::string eval_mode_name(EvalMode m) {
  return m == EvalMode::Circuit ? "circuit" : "reduced";
}

inline EvalMode parse_eval_mode(const std::string& name) {
  if (name == "circuit") return EvalMode::Circuit;
  if (name == "reduced") return EvalMode::Reduced;
  throw ConfigError("unknown eval mode: " + name);
}

/// Classical penalty weight sum(v) + 1; strictly dominates any feasible gain.
double classical_penalty_weight(const KnapsackInstance& inst);

/// f_cl(x) = -Value(x) + (sum(v)+1) * max(0, Weight(x) - W) over selection
/// masks; the scalar objective for the phase-encoded methods.
Eigen::VectorXd classical_objective_table(const KnapsackInstance& inst);

/// Objective over theta = (gammas, betas). qubo: <H'_C> over the full
/// variable register. dephasing/zeno: expectation of f_cl over the data
/// register. shots = 0 evaluates the exact distribution; shots > 0 draws
/// that many samples with a seeded RNG (trajectory backends average per-shot
/// branch distributions instead).
Objective make_objective(const KnapsackInstance& inst, const EncodingMethod& method,
                         StateBackend backend, long shots = 0,
                         EvalMode mode = EvalMode::Circuit, std::uint64_t seed = 0);

/// Data-register distribution of the optimized ansatz, indexed by selection
/// mask; the input to the metrics.
Eigen::VectorXd final_distribution(const KnapsackInstance& inst, const EncodingMethod& method,
                                   const AnsatzParams& params, StateBackend backend,
                                   EvalMode mode = EvalMode::Circuit);

/// Backend/method compatibility check shared by objective construction and
/// the CLI; throws ConfigError on unusable combinations.
void check_backend(const EncodingMethod& method, StateBackend backend);

}  // namespace knapq
