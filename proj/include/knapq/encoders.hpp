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

// Full ansatz assembly for the three constraint encodings. One layer is
//   qubo:      diagonal QUBO phases, mixer on every variable qubit;
//   dephasing: return phase, ADD, TEST, PENAL, uncompute, mixer on data;
//   zeno:      return phase, ADD, TEST, measure-and-reset the flag, ADD
//              inverted, mixer on data.

#include <string>

#include "knapq/arithmetic.hpp"
#include "knapq/circuit.hpp"
#include "knapq/ising.hpp"
#include "knapq/knapsack.hpp"
#include "knapq/types.hpp"

namespace knapq {

enum class MethodTag : std::uint8_t { Qubo, Dephasing, Zeno };

inline std::string method_name(MethodTag tag) {
  switch (tag) {
    case MethodTag::Qubo: return "qubo";
    case MethodTag::Dephasing: return "dephasing";
    case MethodTag::Zeno: return "zeno";
  }
  return "?";
}

inline MethodTag parse_method(const std::string& name) {
  if (name == "qubo") return MethodTag::Qubo;
  if (name == "dephasing") return MethodTag::Dephasing;
  if (name == "zeno") return MethodTag::Zeno;
  throw ConfigError("unknown method: " + name);
}

/// A constraint encoding plus its hyperparameters. Only the fields relevant
/// to the tag are consulted.
struct EncodingMethod {
  MethodTag tag = MethodTag::Qubo;
  double penalty = 10.0;                            // qubo Lagrange multiplier
  SlackConvention slack = SlackConvention::Compact; // qubo slack weighting
  double alpha = 10000.0;                           // dephasing penalty strength
  PenalMode penal_mode = PenalMode::Flat;
  bool penal_fixed_angle = false;  // apply alpha raw instead of alpha*gamma

  static EncodingMethod qubo(double penalty = 10.0,
                             SlackConvention slack = SlackConvention::Compact) {
    EncodingMethod m;
    m.tag = MethodTag::Qubo;
    m.penalty = penalty;
    m.slack = slack;
    return m;
  }
  static EncodingMethod dephasing(double alpha = 10000.0, PenalMode mode = PenalMode::Flat,
                                  bool fixed_angle = false) {
    EncodingMethod m;
    m.tag = MethodTag::Dephasing;
    m.alpha = alpha;
    m.penal_mode = mode;
    m.penal_fixed_angle = fixed_angle;
    return m;
  }
  static EncodingMethod zeno() {
    EncodingMethod m;
    m.tag = MethodTag::Zeno;
    return m;
  }
};

/// Phase(-gamma * v_i) on data qubit i; basis |x> acquires -gamma * Value(x).
CircuitProgram return_phase(const KnapsackInstance& inst, double gamma,
                            const RegisterPlan& plan);

CircuitProgram dephasing_layer(const KnapsackInstance& inst, double gamma, double beta,
                               double alpha, const RegisterPlan& plan,
                               PenalMode mode = PenalMode::Flat,
                               bool fixed_angle = false);

CircuitProgram zeno_layer(const KnapsackInstance& inst, double gamma, double beta,
                          const RegisterPlan& plan);

/// One layer of the given method at angles (gamma, beta); the unit whose
/// resources are reported per layer.
CircuitProgram build_layer(const KnapsackInstance& inst, const EncodingMethod& method,
                           double gamma, double beta);

/// Initialization (Hadamards on the variable qubits) followed by p layers.
CircuitProgram build_ansatz(const KnapsackInstance& inst, const EncodingMethod& method,
                            const AnsatzParams& params);

/// Ancilla count of the method's layout: slack bits for qubo, weight register
/// plus flag for the others.
int ancilla_count(const KnapsackInstance& inst, const EncodingMethod& method);
int total_qubits(const KnapsackInstance& inst, const EncodingMethod& method);

}  // namespace knapq
