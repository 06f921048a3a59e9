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

#include "knapq/encoders.hpp"

namespace knapq {

CircuitProgram return_phase(const KnapsackInstance& inst, double gamma,
                            const RegisterPlan& plan) {
  CircuitProgram c(plan.total_qubits(), plan.layout());
  for (int i = 0; i < inst.item_count(); ++i)
    c << phase(plan.data_begin + i, -gamma * inst.values[i]);
  return c;
}

namespace {

CircuitProgram data_mixer(const RegisterPlan& plan, double beta) {
  CircuitProgram c(plan.total_qubits(), plan.layout());
  for (int i = 0; i < plan.data_count; ++i) c << rx(plan.data_begin + i, 2.0 * beta);
  return c;
}

}  // namespace

CircuitProgram dephasing_layer(const KnapsackInstance& inst, double gamma, double beta,
                               double alpha, const RegisterPlan& plan, PenalMode mode,
                               bool fixed_angle) {
  CircuitProgram c = return_phase(inst, gamma, plan);
  c << adder(inst, plan);
  c << test_block(inst.capacity, plan);
  c << penal_block(alpha, fixed_angle ? 1.0 : gamma, mode, plan);
  c << reinit_block(ReinitVariant::Dephasing, inst, inst.capacity, plan);
  c << data_mixer(plan, beta);
  return c;
}

CircuitProgram zeno_layer(const KnapsackInstance& inst, double gamma, double beta,
                          const RegisterPlan& plan) {
  CircuitProgram c = return_phase(inst, gamma, plan);
  c << adder(inst, plan);
  c << test_block(inst.capacity, plan);
  c << measure_reset(plan.flag);
  c << reinit_block(ReinitVariant::Zeno, inst, inst.capacity, plan);
  c << data_mixer(plan, beta);
  return c;
}

CircuitProgram build_layer(const KnapsackInstance& inst, const EncodingMethod& method,
                           double gamma, double beta) {
  switch (method.tag) {
    case MethodTag::Qubo:
      return qubo_layer(build_qubo(inst, method.penalty, method.slack), gamma, beta);
    case MethodTag::Dephasing:
      return dephasing_layer(inst, gamma, beta, method.alpha,
                             RegisterPlan::for_instance(inst), method.penal_mode,
                             method.penal_fixed_angle);
    case MethodTag::Zeno:
      return zeno_layer(inst, gamma, beta, RegisterPlan::for_instance(inst));
  }
  throw ValidationError("build_layer: unknown method");
}

CircuitProgram build_ansatz(const KnapsackInstance& inst, const EncodingMethod& method,
                            const AnsatzParams& params) {
  if (method.tag == MethodTag::Qubo)
    return qubo_ansatz(inst, method.penalty, params, method.slack);

  const auto plan = RegisterPlan::for_instance(inst);
  CircuitProgram c(plan.total_qubits(), plan.layout());
  for (int i = 0; i < plan.data_count; ++i) c << h(plan.data_begin + i);
  for (int k = 0; k < params.layers(); ++k) {
    if (method.tag == MethodTag::Dephasing) {
      c << dephasing_layer(inst, params.gammas[k], params.betas[k], method.alpha, plan,
                           method.penal_mode, method.penal_fixed_angle);
    } else {
      c << zeno_layer(inst, params.gammas[k], params.betas[k], plan);
    }
  }
  return c;
}

int ancilla_count(const KnapsackInstance& inst, const EncodingMethod& method) {
  if (method.tag == MethodTag::Qubo) return slack_bit_count(inst.capacity, method.slack);
  return RegisterPlan::for_instance(inst).weight_count + 1;
}

int total_qubits(const KnapsackInstance& inst, const EncodingMethod& method) {
  return inst.item_count() + ancilla_count(inst, method);
}

}  // namespace knapq
