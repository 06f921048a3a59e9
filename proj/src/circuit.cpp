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

#include "knapq/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace knapq {

CircuitProgram& CircuitProgram::operator<<(const CircuitProgram& other) {
  *this = compose(*this, other);
  return *this;
}

void validate(const CircuitProgram& c) {
  if (c.n_qubits < 1) throw ValidationError("circuit: need at least one qubit");
  for (const auto& g : c.ops) {
    for (int i = 0; i < g.n_targets; ++i)
      if (g.target(i) < 0 || g.target(i) >= c.n_qubits)
        throw IndexError("circuit: op target out of range");
    if (g.n_targets == 2 && g.target(0) == g.target(1))
      throw ValidationError("circuit: duplicate targets in one op");
  }
  const auto& lay = c.layout;
  auto in_span = [](int q, int begin, int count) { return q >= begin && q < begin + count; };
  for (int q : lay.data_qubits())
    if (q < 0 || q >= c.n_qubits) throw ValidationError("circuit: data span out of range");
  for (int q : lay.ancilla_qubits())
    if (q < 0 || q >= c.n_qubits) throw ValidationError("circuit: ancilla span out of range");
  if (lay.data_count > 0 && lay.ancilla_count > 0) {
    for (int q = lay.ancilla_begin; q < lay.ancilla_begin + lay.ancilla_count; ++q)
      if (in_span(q, lay.data_begin, lay.data_count))
        throw ValidationError("circuit: data and ancilla spans overlap");
  }
  if (lay.flag >= 0 &&
      (in_span(lay.flag, lay.data_begin, lay.data_count) ||
       in_span(lay.flag, lay.ancilla_begin, lay.ancilla_count)))
    throw ValidationError("circuit: flag overlaps another span");
}

CircuitProgram compose(const CircuitProgram& a, const CircuitProgram& b) {
  if (a.n_qubits != b.n_qubits || !(a.layout == b.layout))
    throw ValidationError("compose: circuits differ in width or register layout");
  CircuitProgram out(a.n_qubits, a.layout);
  out.ops.reserve(a.ops.size() + b.ops.size());
  out.ops.insert(out.ops.end(), a.ops.begin(), a.ops.end());
  out.ops.insert(out.ops.end(), b.ops.begin(), b.ops.end());
  return out;
}

CircuitProgram invert(const CircuitProgram& c) {
  if (c.has_measurement())
    throw ValidationError("invert: circuit contains MeasureReset and is not invertible");
  CircuitProgram out(c.n_qubits, c.layout);
  out.ops.reserve(c.ops.size());
  for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) out.ops.push_back(inverse(*it));
  return out;
}

CircuitProgram decompose(const CircuitProgram& c) {
  CircuitProgram out(c.n_qubits, c.layout);
  for (const auto& g : c.ops) {
    switch (g.kind) {
      case GateKind::CPhase: {
        // diag(1,1,1,e^{i t}) = RZ_a(t/2) RZ_b(t/2) CNOT_ab RZ_b(-t/2) CNOT_ab
        // up to global phase.
        const int a = g.target(0), b = g.target(1);
        const double t = g.angle;
        out << rz(a, t / 2) << rz(b, t / 2) << cnot(a, b) << rz(b, -t / 2) << cnot(a, b);
        break;
      }
      case GateKind::Swap: {
        const int a = g.target(0), b = g.target(1);
        out << cnot(a, b) << cnot(b, a) << cnot(a, b);
        break;
      }
      default:
        out << g;
    }
  }
  return out;
}

ResourceReport count_resources(const CircuitProgram& c, int layers) {
  const CircuitProgram dec = decompose(c);
  ResourceReport report;
  report.n_data_qubits = c.layout.data_count;
  report.n_ancilla_qubits = c.layout.total_ancillas();

  std::vector<long> depth(static_cast<std::size_t>(c.n_qubits), 0);
  for (const auto& g : dec.ops) {
    if (g.kind == GateKind::CNOT) {
      ++report.two_qubit_gates_per_layer;
    } else if (g.kind != GateKind::MeasureReset) {
      ++report.single_qubit_gates_per_layer;
    }
    long level = 0;
    for (int i = 0; i < g.n_targets; ++i)
      level = std::max(level, depth[static_cast<std::size_t>(g.target(i))]);
    for (int i = 0; i < g.n_targets; ++i)
      depth[static_cast<std::size_t>(g.target(i))] = level + 1;
  }
  const long layer_depth = *std::max_element(depth.begin(), depth.end());
  report.total_depth = layer_depth * layers;
  return report;
}

std::string dump(const CircuitProgram& c) {
  std::ostringstream os;
  os.precision(12);
  for (const auto& g : c.ops) {
    os << gate_name(g.kind);
    for (int i = 0; i < g.n_targets; ++i) os << ' ' << g.target(i);
    if (has_angle(g.kind)) os << ' ' << g.angle;
    os << '\n';
  }
  return os.str();
}

}  // namespace knapq
