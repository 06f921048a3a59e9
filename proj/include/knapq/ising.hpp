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

// Quadratization of the knapsack problem: slack-variable synthesis, the
// unconstrained quadratic cost
//
//   f(x, s) = -sum_i v_i x_i + P (sum_i w_i x_i + sum_k a_k s_k - W)^2
//
// collected into coupling matrix Q, field vector B and a constant offset,
// plus the diagonal-phase QAOA circuit implementing exp(-i gamma H'_C).

#include <Eigen/Dense>

#include <iosfwd>
#include <string>

#include "knapq/circuit.hpp"
#include "knapq/knapsack.hpp"
#include "knapq/types.hpp"

namespace knapq {

/// Slack-bit weighting scheme.
///  * Compact: c = ceil(log2(W+1)) bits with weights 1, 2, 4, ...; represents
///    every slack value 0..W, so energy minima coincide with knapsack optima.
///  * Paper: c = ceil(log2(W)) + 1 bits with weights 2, 4, 8, ...; kept for
///    comparison with published index arithmetic (only even slack values are
///    representable).
enum class SlackConvention : std::uint8_t { Compact, Paper };

inline std::string slack_convention_name(SlackConvention c) {
  return c == SlackConvention::Compact ? "compact" : "paper";
}

inline SlackConvention parse_slack_convention(const std::string& name) {
  if (name == "compact") return SlackConvention::Compact;
  if (name == "paper") return SlackConvention::Paper;
  throw ConfigError("unknown slack convention: " + name);
}

int slack_bit_count(int capacity, SlackConvention conv);

/// Quadratic binary model over m item variables followed by c slack bits.
/// Variable j of an assignment mask is bit j; assignment strings follow the
/// selection-string convention (character j = variable j).
struct IsingModel {
  Eigen::MatrixXd coupling;      // Q; strictly upper triangle holds the terms
  Eigen::VectorXd field;         // B
  double offset = 0.0;           // constant term P * W^2
  double penalty = 0.0;          // P
  int n_items = 0;
  int n_slack = 0;
  Eigen::VectorXd slack_weights; // binary weights a_k of the slack bits
  int capacity = 0;

  int n_vars() const { return n_items + n_slack; }
};

IsingModel build_qubo(const KnapsackInstance& inst, double penalty,
                      SlackConvention conv = SlackConvention::Compact);

/// sum_{i<j} Q_ij y_i y_j + sum_i B_i y_i + offset for the assignment mask.
double ising_energy(const IsingModel& model, std::uint64_t assignment_mask);
double ising_energy(const IsingModel& model, const std::string& assignment);

/// Same energy evaluated in spin variables z in {-1,+1} under x = (1+z)/2;
/// the internal equivalence route.
double ising_energy_spin(const IsingModel& model, const Eigen::VectorXi& z);

/// Energies of all 2^(m+c) assignments, indexed by assignment mask.
Eigen::VectorXd ising_energy_table(const IsingModel& model);

/// Register layout of the quadratization circuit: items on the data span,
/// slack bits on the ancilla span.
RegisterLayout qubo_layout(const IsingModel& model);

/// Diagonal block: basis state |y> acquires phase -gamma * (E(y) - offset).
CircuitProgram qubo_phase_block(const IsingModel& model, double gamma);

/// Phase block followed by the transverse mixer RX(2 beta) on every variable.
CircuitProgram qubo_layer(const IsingModel& model, double gamma, double beta);

/// Hadamards on all variables, then p repetitions of qubo_layer.
CircuitProgram qubo_ansatz(const KnapsackInstance& inst, double penalty,
                           const AnsatzParams& params,
                           SlackConvention conv = SlackConvention::Compact);

/// Text export: header "m c P offset", sparse "i j Q_ij" lines, "i B_i" lines.
void write_ising(std::ostream& os, const IsingModel& model);

}  // namespace knapq
