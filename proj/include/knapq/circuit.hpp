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

#include <string>
#include <vector>

#include "knapq/gates.hpp"
#include "knapq/state.hpp"
#include "knapq/types.hpp"

namespace knapq {

/// Named qubit spans of a circuit: data variables, work ancillas, and an
/// optional comparison flag.
struct RegisterLayout {
  int data_begin = 0;
  int data_count = 0;
  int ancilla_begin = 0;
  int ancilla_count = 0;
  int flag = -1;  // -1 when absent

  bool operator==(const RegisterLayout&) const = default;

  std::vector<int> data_qubits() const {
    std::vector<int> qs;
    for (int i = 0; i < data_count; ++i) qs.push_back(data_begin + i);
    return qs;
  }
  std::vector<int> ancilla_qubits() const {
    std::vector<int> qs;
    for (int i = 0; i < ancilla_count; ++i) qs.push_back(ancilla_begin + i);
    if (flag >= 0) qs.push_back(flag);
    return qs;
  }
  /// Ancillas including the flag qubit.
  int total_ancillas() const { return ancilla_count + (flag >= 0 ? 1 : 0); }
};

/// An ordered gate/channel program over a fixed register layout.
/// Immutable by convention once built; safe to share across threads.
struct CircuitProgram {
  int n_qubits = 0;
  RegisterLayout layout;
  std::vector<GateOp> ops;

  CircuitProgram() = default;
  explicit CircuitProgram(int n, RegisterLayout lay = {}) : n_qubits(n), layout(lay) {}

  CircuitProgram& operator<<(const GateOp& g) {
    ops.push_back(g);
    return *this;
  }
  CircuitProgram& operator<<(const CircuitProgram& other);

  bool has_measurement() const {
    for (const auto& g : ops)
      if (g.kind == GateKind::MeasureReset) return true;
    return false;
  }
};

/// Gate and depth accounting for one circuit (normally one ansatz layer).
struct ResourceReport {
  int n_data_qubits = 0;
  int n_ancilla_qubits = 0;
  long two_qubit_gates_per_layer = 0;  // CNOTs after decomposition
  long single_qubit_gates_per_layer = 0;
  long total_depth = 0;
};

void validate(const CircuitProgram& c);

/// Ops of a followed by ops of b; layouts must match.
CircuitProgram compose(const CircuitProgram& a, const CircuitProgram& b);

/// Reversed op order with every gate inverted. Throws if a MeasureReset is
/// present.
CircuitProgram invert(const CircuitProgram& c);

/// Rewrites to the {CNOT + single-qubit} basis. CPhase becomes 2 CNOTs and 3
/// RZs, Swap becomes 3 CNOTs; MeasureReset is preserved untouched.
CircuitProgram decompose(const CircuitProgram& c);

/// Counts resources of the decomposed circuit. Only CNOTs enter the two-qubit
/// count; MeasureReset contributes zero gates. total_depth is the greedy
/// qubit-availability depth of one layer times `layers`.
ResourceReport count_resources(const CircuitProgram& c, int layers = 1);

/// One op per line: name, targets, angle when applicable.
std::string dump(const CircuitProgram& c);

/// Sequential application of all ops to an initial state.
template <typename T>
QuantumState<T> run(const CircuitProgram& c, QuantumState<T> state) {
  if (state.n_qubits() != c.n_qubits)
    throw ValidationError("run: state has " + std::to_string(state.n_qubits()) +
                          " qubits, circuit needs " + std::to_string(c.n_qubits));
  for (const auto& g : c.ops) {
    if (g.kind == GateKind::MeasureReset) {
      state.measure_reset(g.target(0));
    } else {
      state.apply(g);
    }
  }
  return state;
}

}  // namespace knapq
