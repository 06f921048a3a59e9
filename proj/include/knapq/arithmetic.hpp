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

// Circuit blocks shared by the penalty-dephasing and Zeno encoders: the QFT,
// Fourier-space weight accumulation (ADD), constant addition, the capacity
// comparator (TEST), the penalty phase (PENAL), and ancilla reinitialization.

#include "knapq/circuit.hpp"
#include "knapq/knapsack.hpp"
#include "knapq/types.hpp"

namespace knapq {

struct Span {
  int begin = 0;
  int count = 0;
};

/// Qubit assignment for the phase-encoded methods: m data qubits, an n-qubit
/// weight register with n = ceil(log2(sum w)) + 1 (top bit left free so the
/// comparator can use it as a sign bit), and one flag qubit.
struct RegisterPlan {
  int data_begin = 0;
  int data_count = 0;
  int weight_begin = 0;
  int weight_count = 0;
  int flag = -1;

  static RegisterPlan for_instance(const KnapsackInstance& inst);

  int total_qubits() const { return data_count + weight_count + 1; }
  Span data_span() const { return {data_begin, data_count}; }
  Span weight_span() const { return {weight_begin, weight_count}; }
  int weight_msb() const { return weight_begin + weight_count - 1; }
  RegisterLayout layout() const;
};

/// Standard quantum Fourier transform on the span: Hadamard plus
/// controlled-phase ladder, then the bit-reversing swaps.
/// QFT|y> = 2^{-k/2} sum_z exp(2 pi i y z / 2^k) |z>.
CircuitProgram qft(Span reg, int n_qubits, RegisterLayout layout = {});

/// |y> -> |y + k mod 2^count> via single-qubit phases between a QFT pair.
/// k may be negative.
CircuitProgram add_constant(long k, Span reg, int n_qubits, RegisterLayout layout = {});

/// ADD |x>|r> = |x>|r + Weight(x) mod 2^n>: QFT on the weight register, one
/// controlled-phase ladder per data qubit encoding +w_i, inverse QFT.
CircuitProgram adder(const KnapsackInstance& inst, const RegisterPlan& plan);

/// flag ^= [Weight(x) > W], weight register preserved. Realized by
/// subtracting W+1 and reading the two's-complement sign bit; empty when no
/// representable weight can exceed W.
CircuitProgram test_block(int capacity, const RegisterPlan& plan);

enum class PenalMode : std::uint8_t { Flat, Proportional };

inline std::string penal_mode_name(PenalMode m) {
  return m == PenalMode::Flat ? "flat" : "proportional";
}

inline PenalMode parse_penal_mode(const std::string& name) {
  if (name == "flat") return PenalMode::Flat;
  if (name == "proportional") return PenalMode::Proportional;
  throw ConfigError("unknown penal mode: " + name);
}

/// Flat: phase -alpha*gamma on the flag. Proportional: flag-controlled ladder
/// applying total phase -alpha*gamma*Weight(x) on flagged branches.
CircuitProgram penal_block(double alpha, double gamma, PenalMode mode,
                           const RegisterPlan& plan);

enum class ReinitVariant : std::uint8_t { Dephasing, Zeno };

/// Dephasing: TEST then ADD inverted (uncomputes flag and weight). Zeno: ADD
/// inverted only; the flag is reset by measurement instead.
CircuitProgram reinit_block(ReinitVariant variant, const KnapsackInstance& inst,
                            int capacity, const RegisterPlan& plan);

}  // namespace knapq
