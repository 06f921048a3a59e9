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

#include "knapq/arithmetic.hpp"

#include <bit>
#include <cmath>

namespace knapq {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Phase angle 2 pi * units / 2^count, reduced so exact multiples of 2 pi
// vanish; those rotations are identities and are not emitted.
double fourier_angle(long units, int count) {
  const long modulus = 1l << count;
  long r = units % modulus;
  if (r < 0) r += modulus;
  return kTau * static_cast<double>(r) / static_cast<double>(modulus);
}

}  // namespace

RegisterPlan RegisterPlan::for_instance(const KnapsackInstance& inst) {
  validate(inst);
  RegisterPlan plan;
  plan.data_begin = 0;
  plan.data_count = inst.item_count();
  plan.weight_begin = inst.item_count();
  const auto total = static_cast<unsigned long>(inst.total_weight());
  plan.weight_count = static_cast<int>(std::bit_width(total - 1)) + 1;  // ceil(log2) + 1
  plan.flag = plan.weight_begin + plan.weight_count;
  return plan;
}

RegisterLayout RegisterPlan::layout() const {
  RegisterLayout lay;
  lay.data_begin = data_begin;
  lay.data_count = data_count;
  lay.ancilla_begin = weight_begin;
  lay.ancilla_count = weight_count;
  lay.flag = flag;
  return lay;
}

CircuitProgram qft(Span reg, int n_qubits, RegisterLayout layout) {
  if (reg.count < 1 || reg.begin < 0 || reg.begin + reg.count > n_qubits)
    throw ValidationError("qft: register span out of range");
  CircuitProgram c(n_qubits, layout);
  for (int j = reg.count - 1; j >= 0; --j) {
    c << h(reg.begin + j);
    for (int l = j - 1; l >= 0; --l)
      c << cphase(reg.begin + l, reg.begin + j, M_PI / double(1l << (j - l)));
  }
  for (int j = 0; j < reg.count / 2; ++j)
    c << swap_gate(reg.begin + j, reg.begin + reg.count - 1 - j);
  return c;
}

CircuitProgram add_constant(long k, Span reg, int n_qubits, RegisterLayout layout) {
  CircuitProgram c = qft(reg, n_qubits, layout);
  for (int j = 0; j < reg.count; ++j) {
    const double angle = fourier_angle(k << j, reg.count);
    if (angle != 0.0) c << phase(reg.begin + j, angle);
  }
  return compose(c, invert(qft(reg, n_qubits, layout)));
}

CircuitProgram adder(const KnapsackInstance& inst, const RegisterPlan& plan) {
  validate(inst);
  if (plan.weight_count < 1 ||
      inst.total_weight() > (1l << (plan.weight_count - 1)))
    throw ValidationError("adder: weight register too small for the instance");

  const int n_qubits = plan.total_qubits();
  CircuitProgram c = qft(plan.weight_span(), n_qubits, plan.layout());
  for (int i = 0; i < plan.data_count; ++i) {
    for (int j = 0; j < plan.weight_count; ++j) {
      const double angle = fourier_angle(static_cast<long>(inst.weights[i]) << j,
                                         plan.weight_count);
      if (angle != 0.0)
        c << cphase(plan.data_begin + i, plan.weight_begin + j, angle);
    }
  }
  return compose(c, invert(qft(plan.weight_span(), n_qubits, plan.layout())));
}

CircuitProgram test_block(int capacity, const RegisterPlan& plan) {
  const int n_qubits = plan.total_qubits();
  CircuitProgram c(n_qubits, plan.layout());
  // Weights fit in weight_count - 1 bits, so a capacity at or above
  // 2^(n-1) can never be exceeded and the flag stays clear.
  if (static_cast<long>(capacity) + 1 > (1l << (plan.weight_count - 1))) return c;

  c << add_constant(-(static_cast<long>(capacity) + 1), plan.weight_span(), n_qubits,
                    plan.layout());
  // After subtracting W+1 the sign bit is clear exactly on violating weights.
  c << x(plan.weight_msb()) << cnot(plan.weight_msb(), plan.flag) << x(plan.weight_msb());
  c << add_constant(static_cast<long>(capacity) + 1, plan.weight_span(), n_qubits,
                    plan.layout());
  return c;
}

CircuitProgram penal_block(double alpha, double gamma, PenalMode mode,
                           const RegisterPlan& plan) {
  CircuitProgram c(plan.total_qubits(), plan.layout());
  if (mode == PenalMode::Flat) {
    c << phase(plan.flag, -alpha * gamma);
  } else {
    for (int j = 0; j < plan.weight_count; ++j)
      c << cphase(plan.flag, plan.weight_begin + j, -alpha * gamma * double(1l << j));
  }
  return c;
}

CircuitProgram reinit_block(ReinitVariant variant, const KnapsackInstance& inst,
                            int capacity, const RegisterPlan& plan) {
  if (variant == ReinitVariant::Dephasing)
    return compose(invert(test_block(capacity, plan)), invert(adder(inst, plan)));
  return invert(adder(inst, plan));
}

}  // namespace knapq
