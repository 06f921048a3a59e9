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

#include <random>

#include "knapq/circuit.hpp"
#include "knapq/state.hpp"

namespace knapq::testing {

inline QuantumState<double> basis_state(int n, std::uint64_t index,
                                        StateBackend backend = StateBackend::Statevector) {
  auto s = init_state(n, {}, backend);
  for (int q = 0; q < n; ++q)
    if (index >> q & 1u) s.apply(x(q));
  return s;
}

inline QuantumState<double> random_product_state(int n, std::uint64_t seed,
                                                 StateBackend backend = StateBackend::Statevector) {
  std::mt19937_64 rng(seed);
  auto s = init_state(n, {}, backend);
  for (int q = 0; q < n; ++q) {
    s.apply(rx(q, uniform_unit(rng()) * 6.283185307179586));
    s.apply(rz(q, uniform_unit(rng()) * 6.283185307179586));
  }
  return s;
}

/// Full action of a circuit as a dim x dim matrix (columns = images of basis
/// states). Small n only; the independent oracle for circuit identities.
inline CMatrix<double> circuit_unitary(const CircuitProgram& c) {
  const Index dim = Index{1} << c.n_qubits;
  CMatrix<double> u(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    auto out = run(c, basis_state(c.n_qubits, static_cast<std::uint64_t>(j)));
    u.col(j) = out.amplitudes();
  }
  return u;
}

/// max |lambda * a - b| over entries, with lambda the global phase aligning
/// the largest entry of a to b.
inline double diff_up_to_global_phase(const CMatrix<double>& a, const CMatrix<double>& b) {
  Index imax = 0, jmax = 0;
  a.cwiseAbs().maxCoeff(&imax, &jmax);
  const std::complex<double> lambda = b(imax, jmax) / a(imax, jmax);
  return (lambda * a - b).cwiseAbs().maxCoeff();
}

inline double diff_up_to_global_phase(const CVector<double>& a, const CVector<double>& b) {
  Index imax = 0;
  a.cwiseAbs().maxCoeff(&imax);
  const std::complex<double> lambda = b(imax) / a(imax);
  return (lambda * a - b).cwiseAbs().maxCoeff();
}

}  // namespace knapq::testing
