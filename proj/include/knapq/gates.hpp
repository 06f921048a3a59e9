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

#include <array>
#include <cmath>
#include <string>

#include "knapq/types.hpp"

namespace knapq {

enum class GateKind : std::uint8_t {
  H,
  X,
  RX,            // exp(-i theta X / 2)
  RZ,            // exp(-i theta Z / 2)
  Phase,         // diag(1, e^{i lambda})
  CNOT,          // targets[0] = control, targets[1] = target
  CPhase,        // diag(1, 1, 1, e^{i theta}); symmetric in its targets
  Swap,
  MeasureReset,  // non-selective measurement, then reset to |0>; a channel
};

inline bool is_two_qubit(GateKind k) {
  return k == GateKind::CNOT || k == GateKind::CPhase || k == GateKind::Swap;
}

inline bool has_angle(GateKind k) {
  return k == GateKind::RX || k == GateKind::RZ || k == GateKind::Phase ||
         k == GateKind::CPhase;
}

/// One instruction of a circuit: a unitary gate or the measure-and-reset channel.
struct GateOp {
  GateKind kind = GateKind::H;
  std::array<int, 2> targets = {0, 0};
  std::uint8_t n_targets = 1;
  double angle = 0.0;

  int target(int i) const { return targets[static_cast<std::size_t>(i)]; }
  bool operator==(const GateOp&) const = default;
};

inline GateOp h(int q) { return {GateKind::H, {q, 0}, 1, 0.0}; }
inline GateOp x(int q) { return {GateKind::X, {q, 0}, 1, 0.0}; }
inline GateOp rx(int q, double theta) { return {GateKind::RX, {q, 0}, 1, theta}; }
inline GateOp rz(int q, double theta) { return {GateKind::RZ, {q, 0}, 1, theta}; }
inline GateOp phase(int q, double lambda) { return {GateKind::Phase, {q, 0}, 1, lambda}; }
inline GateOp cnot(int control, int target) {
  return {GateKind::CNOT, {control, target}, 2, 0.0};
}
inline GateOp cphase(int a, int b, double theta) {
  return {GateKind::CPhase, {a, b}, 2, theta};
}
inline GateOp swap_gate(int a, int b) { return {GateKind::Swap, {a, b}, 2, 0.0}; }
inline GateOp measure_reset(int q) { return {GateKind::MeasureReset, {q, 0}, 1, 0.0}; }

/// Inverse gate; throws for MeasureReset (a channel has no inverse).
inline GateOp inverse(const GateOp& g) {
  switch (g.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::Swap:
      return g;
    case GateKind::RX:
    case GateKind::RZ:
    case GateKind::Phase:
    case GateKind::CPhase: {
      GateOp inv = g;
      inv.angle = -g.angle;
      return inv;
    }
    case GateKind::MeasureReset:
      throw ValidationError("inverse: MeasureReset is not invertible");
  }
  throw ValidationError("inverse: unknown gate kind");
}

/// 2x2 matrix (row major) of a single-qubit unitary kind.
template <typename T>
std::array<std::complex<T>, 4> single_qubit_matrix(GateKind kind, double angle) {
  using C = std::complex<T>;
  const T inv_sqrt2 = static_cast<T>(1.0 / std::sqrt(2.0));
  switch (kind) {
    case GateKind::H:
      return {C(inv_sqrt2), C(inv_sqrt2), C(inv_sqrt2), C(-inv_sqrt2)};
    case GateKind::X:
      return {C(0), C(1), C(1), C(0)};
    case GateKind::RX: {
      const T c = static_cast<T>(std::cos(angle / 2));
      const T s = static_cast<T>(std::sin(angle / 2));
      return {C(c), C(0, -s), C(0, -s), C(c)};
    }
    case GateKind::RZ: {
      const T half = static_cast<T>(angle / 2);
      return {std::polar<T>(1, -half), C(0), C(0), std::polar<T>(1, half)};
    }
    case GateKind::Phase:
      return {C(1), C(0), C(0), std::polar<T>(1, static_cast<T>(angle))};
    default:
      throw ValidationError("single_qubit_matrix: not a single-qubit unitary");
  }
}

inline std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::RX: return "rx";
    case GateKind::RZ: return "rz";
    case GateKind::Phase: return "phase";
    case GateKind::CNOT: return "cnot";
    case GateKind::CPhase: return "cphase";
    case GateKind::Swap: return "swap";
    case GateKind::MeasureReset: return "measure_reset";
  }
  return "?";
}

}  // namespace knapq
