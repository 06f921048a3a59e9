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

#include "knapq/ising.hpp"

#include <bit>
#include <ostream>

namespace knapq {

int slack_bit_count(int capacity, SlackConvention conv) {
  if (capacity < 2) throw ValidationError("slack_bit_count: capacity must be >= 2");
  const auto w = static_cast<unsigned>(capacity);
  if (conv == SlackConvention::Compact)
    return static_cast<int>(std::bit_width(w));  // ceil(log2(W+1))
  return static_cast<int>(std::bit_width(w - 1)) + 1;  // ceil(log2(W)) + 1
}

IsingModel build_qubo(const KnapsackInstance& inst, double penalty, SlackConvention conv) {
  validate(inst);
  if (!(penalty > 0)) throw ValidationError("build_qubo: penalty must be positive");

  IsingModel model;
  model.n_items = inst.item_count();
  model.n_slack = slack_bit_count(inst.capacity, conv);
  model.penalty = penalty;
  model.capacity = inst.capacity;
  model.slack_weights.resize(model.n_slack);
  for (int k = 0; k < model.n_slack; ++k)
    model.slack_weights[k] =
        conv == SlackConvention::Compact ? double(1u << k) : double(2u << k);

  const int n = model.n_vars();
  const double w_cap = inst.capacity;

  // Coefficient a_j of variable j inside the squared penalty term.
  Eigen::VectorXd a(n);
  for (int j = 0; j < model.n_items; ++j) a[j] = inst.weights[j];
  a.tail(model.n_slack) = model.slack_weights;

  model.coupling = Eigen::MatrixXd::Zero(n, n);
  model.field = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) model.coupling(j, l) = 2.0 * a[j] * a[l] * penalty;
    model.field[j] = penalty * (a[j] * a[j] - 2.0 * w_cap * a[j]);
    if (j < model.n_items) model.field[j] -= inst.values[j];
  }
  model.offset = penalty * w_cap * w_cap;
  return model;
}

double ising_energy(const IsingModel& model, std::uint64_t assignment_mask) {
  const int n = model.n_vars();
  double e = model.offset;
  for (int j = 0; j < n; ++j) {
    if (!(assignment_mask >> j & 1u)) continue;
    e += model.field[j];
    for (int l = j + 1; l < n; ++l)
      if (assignment_mask >> l & 1u) e += model.coupling(j, l);
  }
  return e;
}

double ising_energy(const IsingModel& model, const std::string& assignment) {
  if (static_cast<int>(assignment.size()) != model.n_vars())
    throw ValidationError("ising_energy: assignment length must be m + c");
  return ising_energy(model, mask_from_selection(assignment));
}

double ising_energy_spin(const IsingModel& model, const Eigen::VectorXi& z) {
  const int n = model.n_vars();
  if (static_cast<int>(z.size()) != n)
    throw ValidationError("ising_energy_spin: spin vector length must be m + c");
  for (int j = 0; j < n; ++j)
    if (z[j] != 1 && z[j] != -1) throw ValidationError("ising_energy_spin: spins must be +-1");

  double e = model.offset;
  for (int j = 0; j < n; ++j) {
    e += model.field[j] * (1.0 + z[j]) / 2.0;
    for (int l = j + 1; l < n; ++l)
      e += model.coupling(j, l) * (1.0 + z[j]) * (1.0 + z[l]) / 4.0;
  }
  return e;
}

Eigen::VectorXd ising_energy_table(const IsingModel& model) {
  const int n = model.n_vars();
  if (n > 24) throw ValidationError("ising_energy_table: guarded at m + c <= 24");
  Eigen::VectorXd table(Index{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
    table[static_cast<Index>(mask)] = ising_energy(model, mask);
  return table;
}

RegisterLayout qubo_layout(const IsingModel& model) {
  RegisterLayout lay;
  lay.data_begin = 0;
  lay.data_count = model.n_items;
  lay.ancilla_begin = model.n_items;
  lay.ancilla_count = model.n_slack;
  return lay;
}

CircuitProgram qubo_phase_block(const IsingModel& model, double gamma) {
  const int n = model.n_vars();
  CircuitProgram c(n, qubo_layout(model));
  for (int j = 0; j < n; ++j)
    if (model.field[j] != 0.0) c << phase(j, -gamma * model.field[j]);
  for (int j = 0; j < n; ++j)
    for (int l = j + 1; l < n; ++l)
      if (model.coupling(j, l) != 0.0) c << cphase(j, l, -gamma * model.coupling(j, l));
  return c;
}

CircuitProgram qubo_layer(const IsingModel& model, double gamma, double beta) {
  CircuitProgram c = qubo_phase_block(model, gamma);
  for (int j = 0; j < model.n_vars(); ++j) c << rx(j, 2.0 * beta);
  return c;
}

CircuitProgram qubo_ansatz(const KnapsackInstance& inst, double penalty,
                           const AnsatzParams& params, SlackConvention conv) {
  const IsingModel model = build_qubo(inst, penalty, conv);
  CircuitProgram c(model.n_vars(), qubo_layout(model));
  for (int j = 0; j < model.n_vars(); ++j) c << h(j);
  for (int k = 0; k < params.layers(); ++k)
    c << qubo_layer(model, params.gammas[k], params.betas[k]);
  return c;
}

void write_ising(std::ostream& os, const IsingModel& model) {
  os.precision(12);
  os << model.n_items << ' ' << model.n_slack << ' ' << model.penalty << ' '
     << model.offset << '\n';
  const int n = model.n_vars();
  for (int j = 0; j < n; ++j)
    for (int l = j + 1; l < n; ++l)
      if (model.coupling(j, l) != 0.0)
        os << j << ' ' << l << ' ' << model.coupling(j, l) << '\n';
  for (int j = 0; j < n; ++j)
    if (model.field[j] != 0.0) os << j << ' ' << model.field[j] << '\n';
}

}  // namespace knapq
