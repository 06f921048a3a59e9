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

// Exact n-qubit simulation under unitary gates and the measure-and-reset
// channel.
//
// Conventions, used everywhere in this library:
//   * qubit q is bit q of the basis-state index (qubit 0 = least significant);
//   * bitstrings are rendered most-significant-qubit first;
//   * a register list [r_0, ..., r_{k-1}] maps qubit r_j to bit j of the
//     register-local index.
//
// Backends:
//   * Statevector — dense complex amplitude vector; unitary gates only.
//   * DensityMatrix — dense matrix; supports the measure-and-reset channel
//     exactly (rho -> P0 rho P0 + P1 rho P1, then reset).
//   * Trajectory — statevector plus a seeded RNG; measure-and-reset samples
//     one branch with Born probabilities.
//   * Ensemble — weighted list of pure states; measure-and-reset splits each
//     member into its two branches. Equivalent to DensityMatrix (same channel,
//     different representation) at far lower memory cost for few channels.

#include <algorithm>
#include <complex>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "knapq/gates.hpp"
#include "knapq/types.hpp"

namespace knapq {

enum class StateBackend : std::uint8_t { Statevector, DensityMatrix, Trajectory, Ensemble };

inline std::string backend_name(StateBackend b) {
  switch (b) {
    case StateBackend::Statevector: return "statevector";
    case StateBackend::DensityMatrix: return "density";
    case StateBackend::Trajectory: return "trajectory";
    case StateBackend::Ensemble: return "ensemble";
  }
  return "?";
}

inline StateBackend parse_backend(const std::string& name) {
  if (name == "statevector") return StateBackend::Statevector;
  if (name == "density" || name == "density-matrix") return StateBackend::DensityMatrix;
  if (name == "trajectory") return StateBackend::Trajectory;
  if (name == "ensemble") return StateBackend::Ensemble;
  throw ConfigError("unknown backend: " + name);
}

namespace detail {

template <typename T>
void apply_1q_vec(std::complex<T>* a, Index dim, int q,
                  const std::array<std::complex<T>, 4>& u) {
  const Index bit = Index{1} << q;
  for (Index base = 0; base < dim; base += bit << 1) {
    for (Index i = base; i < base + bit; ++i) {
      const std::complex<T> a0 = a[i];
      const std::complex<T> a1 = a[i | bit];
      a[i] = u[0] * a0 + u[1] * a1;
      a[i | bit] = u[2] * a0 + u[3] * a1;
    }
  }
}

template <typename T>
void apply_x_vec(std::complex<T>* a, Index dim, int q) {
  const Index bit = Index{1} << q;
  for (Index base = 0; base < dim; base += bit << 1)
    for (Index i = base; i < base + bit; ++i) std::swap(a[i], a[i | bit]);
}

// diag(d0, d1) on qubit q.
template <typename T>
void apply_diag_vec(std::complex<T>* a, Index dim, int q, std::complex<T> d0,
                    std::complex<T> d1) {
  const Index bit = Index{1} << q;
  const bool trivial0 = d0 == std::complex<T>(1);
  for (Index base = 0; base < dim; base += bit << 1)
    for (Index i = base; i < base + bit; ++i) {
      if (!trivial0) a[i] *= d0;
      a[i | bit] *= d1;
    }
}

// Multiplies amplitudes with both bits set by f.
template <typename T>
void apply_cphase_vec(std::complex<T>* a, Index dim, int qa, int qb,
                      std::complex<T> f) {
  const int lo = std::min(qa, qb), hi = std::max(qa, qb);
  const Index bl = Index{1} << lo, bh = Index{1} << hi;
  const Index mask_low = bl - 1;
  const Index mask_mid = (Index{1} << (hi - 1 - lo)) - 1;
  for (Index k = 0; k < dim >> 2; ++k) {
    const Index low = k & mask_low;
    const Index mid = (k >> lo) & mask_mid;
    const Index top = k >> (hi - 1);
    const Index i = (top << (hi + 1)) | bh | (mid << (lo + 1)) | bl | low;
    a[i] *= f;
  }
}

template <typename T>
void apply_cnot_vec(std::complex<T>* a, Index dim, int control, int target) {
  const Index cb = Index{1} << control, tb = Index{1} << target;
  const int lo = std::min(control, target), hi = std::max(control, target);
  const Index mask_low = (Index{1} << lo) - 1;
  const Index mask_mid = (Index{1} << (hi - 1 - lo)) - 1;
  for (Index k = 0; k < dim >> 2; ++k) {
    const Index low = k & mask_low;
    const Index mid = (k >> lo) & mask_mid;
    const Index top = k >> (hi - 1);
    const Index i = (top << (hi + 1)) | (mid << (lo + 1)) | low | cb;  // control 1, target 0
    std::swap(a[i], a[i | tb]);
  }
}

template <typename T>
void apply_swap_vec(std::complex<T>* a, Index dim, int qa, int qb) {
  const int lo = std::min(qa, qb), hi = std::max(qa, qb);
  const Index bl = Index{1} << lo, bh = Index{1} << hi;
  const Index mask_low = bl - 1;
  const Index mask_mid = (Index{1} << (hi - 1 - lo)) - 1;
  for (Index k = 0; k < dim >> 2; ++k) {
    const Index low = k & mask_low;
    const Index mid = (k >> lo) & mask_mid;
    const Index top = k >> (hi - 1);
    const Index i = (top << (hi + 1)) | (mid << (lo + 1)) | low | bl;  // lo 1, hi 0
    std::swap(a[i], a[(i ^ bl) | bh]);
  }
}

template <typename T>
void apply_gate_vec(std::complex<T>* a, Index dim, const GateOp& g) {
  using C = std::complex<T>;
  switch (g.kind) {
    case GateKind::X:
      apply_x_vec(a, dim, g.target(0));
      break;
    case GateKind::RZ: {
      const T half = static_cast<T>(g.angle / 2);
      apply_diag_vec(a, dim, g.target(0), std::polar<T>(1, -half), std::polar<T>(1, half));
      break;
    }
    case GateKind::Phase:
      apply_diag_vec(a, dim, g.target(0), C(1), std::polar<T>(1, static_cast<T>(g.angle)));
      break;
    case GateKind::H:
    case GateKind::RX:
      apply_1q_vec(a, dim, g.target(0), single_qubit_matrix<T>(g.kind, g.angle));
      break;
    case GateKind::CNOT:
      apply_cnot_vec(a, dim, g.target(0), g.target(1));
      break;
    case GateKind::CPhase:
      apply_cphase_vec(a, dim, g.target(0), g.target(1),
                       std::polar<T>(1, static_cast<T>(g.angle)));
      break;
    case GateKind::Swap:
      apply_swap_vec(a, dim, g.target(0), g.target(1));
      break;
    case GateKind::MeasureReset:
      throw ValidationError("apply_gate: MeasureReset is a channel; use measure_and_reset");
  }
}

}  // namespace detail

/// A pure statevector, density matrix, trajectory sample, or pure-state
/// ensemble over n qubits. Value-like: copies are independent.
template <typename T>
class QuantumState {
 public:
  using Scalar = std::complex<T>;
  using Vector = CVector<T>;
  using Matrix = CMatrix<T>;

  struct Member {
    T weight;
    Vector amps;
  };

  QuantumState() = default;

  QuantumState(int n_qubits, StateBackend backend, std::uint64_t seed = 0)
      : n_(n_qubits), backend_(backend), rng_(seed) {
    if (n_qubits < 1) throw ValidationError("QuantumState: need at least one qubit");
    if (backend == StateBackend::DensityMatrix && n_qubits > 13)
      throw ValidationError("QuantumState: density matrix limited to 13 qubits");
    if (n_qubits > 28) throw ValidationError("QuantumState: statevector limited to 28 qubits");
    switch (backend_) {
      case StateBackend::Statevector:
      case StateBackend::Trajectory:
        amps_ = Vector::Zero(dim());
        amps_[0] = Scalar(1);
        break;
      case StateBackend::DensityMatrix:
        rho_ = Matrix::Zero(dim(), dim());
        rho_(0, 0) = Scalar(1);
        break;
      case StateBackend::Ensemble:
        members_.push_back({T(1), Vector::Unit(dim(), 0)});
        break;
    }
  }

  int n_qubits() const { return n_; }
  Index dim() const { return Index{1} << n_; }
  StateBackend backend() const { return backend_; }
  bool is_pure_vector() const {
    return backend_ == StateBackend::Statevector || backend_ == StateBackend::Trajectory;
  }

  const Vector& amplitudes() const {
    if (!is_pure_vector()) throw BackendError("amplitudes: state is not a pure vector");
    return amps_;
  }
  Vector& amplitudes() {
    if (!is_pure_vector()) throw BackendError("amplitudes: state is not a pure vector");
    return amps_;
  }
  const Matrix& density() const {
    if (backend_ != StateBackend::DensityMatrix)
      throw BackendError("density: state is not a density matrix");
    return rho_;
  }
  const std::vector<Member>& members() const {
    if (backend_ != StateBackend::Ensemble)
      throw BackendError("members: state is not an ensemble");
    return members_;
  }

  void check_qubit(int q) const {
    if (q < 0 || q >= n_) throw IndexError("qubit index " + std::to_string(q) +
                                           " out of range [0, " + std::to_string(n_) + ")");
  }

  void apply(const GateOp& g) {
    validate_targets(g);
    if (g.kind == GateKind::MeasureReset)
      throw ValidationError("apply_gate: MeasureReset is a channel; use measure_and_reset");
    switch (backend_) {
      case StateBackend::Statevector:
      case StateBackend::Trajectory:
        detail::apply_gate_vec(amps_.data(), dim(), g);
        break;
      case StateBackend::DensityMatrix:
        apply_dm(g);
        break;
      case StateBackend::Ensemble:
        for (auto& m : members_) detail::apply_gate_vec(m.amps.data(), dim(), g);
        break;
    }
  }

  void measure_reset(int q) {
    check_qubit(q);
    const Index bit = Index{1} << q;
    switch (backend_) {
      case StateBackend::Statevector:
        throw BackendError(
            "measure_and_reset: statevector backend cannot represent the non-selective "
            "channel; use density, trajectory, or ensemble");
      case StateBackend::DensityMatrix: {
        // Keep the two diagonal blocks, fold the 1-branch onto the 0-branch.
        const Index d = dim();
        for (Index j = 0; j < d; ++j) {
          if (j & bit) continue;
          for (Index i = 0; i < d; ++i) {
            if (i & bit) continue;
            rho_(i, j) += rho_(i | bit, j | bit);
          }
        }
        for (Index j = 0; j < d; ++j)
          for (Index i = 0; i < d; ++i)
            if ((i & bit) || (j & bit)) rho_(i, j) = Scalar(0);
        break;
      }
      case StateBackend::Trajectory: {
        T p1 = 0;
        for (Index i = 0; i < dim(); ++i)
          if (i & bit) p1 += std::norm(amps_[i]);
        const bool one = uniform_unit(rng_()) < static_cast<double>(p1);
        collapse_vector(amps_, bit, one, one ? p1 : T(1) - p1);
        break;
      }
      case StateBackend::Ensemble: {
        std::vector<Member> next;
        next.reserve(members_.size() * 2);
        for (auto& m : members_) {
          T p1 = 0;
          for (Index i = 0; i < dim(); ++i)
            if (i & bit) p1 += std::norm(m.amps[i]);
          const T p0 = T(1) - p1;
          if (p1 > branch_cutoff()) {
            Member b1{m.weight * p1, m.amps};
            collapse_vector(b1.amps, bit, true, p1);
            next.push_back(std::move(b1));
          }
          if (p0 > branch_cutoff()) {
            collapse_vector(m.amps, bit, false, p0);
            m.weight *= p0;
            next.push_back(std::move(m));
          }
        }
        members_ = std::move(next);
        break;
      }
    }
  }

  /// |trace - 1| (or |norm^2 - 1| for pure vectors).
  T norm_error() const {
    switch (backend_) {
      case StateBackend::Statevector:
      case StateBackend::Trajectory:
        return std::abs(amps_.squaredNorm() - T(1));
      case StateBackend::DensityMatrix:
        return std::abs(rho_.trace().real() - T(1)) + std::abs(rho_.trace().imag());
      case StateBackend::Ensemble: {
        T tr = 0;
        for (const auto& m : members_) tr += m.weight * m.amps.squaredNorm();
        return std::abs(tr - T(1));
      }
    }
    return T(0);
  }

 private:
  static constexpr T branch_cutoff() { return static_cast<T>(1e-14); }

  void validate_targets(const GateOp& g) const {
    for (int i = 0; i < g.n_targets; ++i) check_qubit(g.target(i));
    if (g.n_targets == 2 && g.target(0) == g.target(1))
      throw ValidationError("gate targets must be distinct");
  }

  static void collapse_vector(Vector& v, Index bit, bool branch_one, T prob) {
    const T scale = T(1) / std::sqrt(prob);
    const Index d = v.size();
    if (branch_one) {
      // Keep the 1-branch, then reset: move amplitudes to the 0-slots.
      for (Index i = 0; i < d; ++i) {
        if (i & bit) continue;
        v[i] = v[i | bit] * scale;
        v[i | bit] = std::complex<T>(0);
      }
    } else {
      for (Index i = 0; i < d; ++i) {
        if (i & bit) {
          v[i] = std::complex<T>(0);
        } else {
          v[i] *= scale;
        }
      }
    }
  }

  void apply_dm(const GateOp& g) {
    using C = std::complex<T>;
    const Index d = dim();
    switch (g.kind) {
      case GateKind::H:
      case GateKind::X:
      case GateKind::RX:
      case GateKind::RZ:
      case GateKind::Phase: {
        const auto m = single_qubit_matrix<T>(g.kind, g.angle);
        // rho := U rho, column by column.
        for (Index c = 0; c < d; ++c)
          detail::apply_1q_vec(rho_.col(c).data(), d, g.target(0), m);
        // rho := rho U^dagger, blending column pairs.
        const Index bit = Index{1} << g.target(0);
        Vector tmp(d);
        for (Index base = 0; base < d; base += bit << 1)
          for (Index c = base; c < base + bit; ++c) {
            tmp = rho_.col(c) * std::conj(m[0]) + rho_.col(c | bit) * std::conj(m[1]);
            rho_.col(c | bit) =
                rho_.col(c) * std::conj(m[2]) + rho_.col(c | bit) * std::conj(m[3]);
            rho_.col(c) = tmp;
          }
        break;
      }
      case GateKind::CPhase: {
        const C f = std::polar<T>(1, static_cast<T>(g.angle));
        const Index ba = Index{1} << g.target(0), bb = Index{1} << g.target(1);
        for (Index i = 0; i < d; ++i)
          if ((i & ba) && (i & bb)) rho_.row(i) *= f;
        for (Index j = 0; j < d; ++j)
          if ((j & ba) && (j & bb)) rho_.col(j) *= std::conj(f);
        break;
      }
      case GateKind::CNOT: {
        const Index cb = Index{1} << g.target(0), tb = Index{1} << g.target(1);
        for (Index i = 0; i < d; ++i)
          if ((i & cb) && !(i & tb)) rho_.row(i).swap(rho_.row(i | tb));
        for (Index j = 0; j < d; ++j)
          if ((j & cb) && !(j & tb)) rho_.col(j).swap(rho_.col(j | tb));
        break;
      }
      case GateKind::Swap: {
        const Index ba = Index{1} << g.target(0), bb = Index{1} << g.target(1);
        for (Index i = 0; i < d; ++i)
          if ((i & ba) && !(i & bb)) rho_.row(i).swap(rho_.row((i ^ ba) | bb));
        for (Index j = 0; j < d; ++j)
          if ((j & ba) && !(j & bb)) rho_.col(j).swap(rho_.col((j ^ ba) | bb));
        break;
      }
      case GateKind::MeasureReset:
        throw ValidationError("apply_gate: MeasureReset is a channel");
    }
  }

  int n_ = 0;
  StateBackend backend_ = StateBackend::Statevector;
  Vector amps_;
  Matrix rho_;
  std::vector<Member> members_;
  std::mt19937_64 rng_;
};

/// |0...0> with Hadamards applied to the listed qubits.
template <typename T = double>
QuantumState<T> init_state(int n_qubits, std::span<const int> hadamard_on,
                           StateBackend backend, std::uint64_t seed = 0) {
  QuantumState<T> state(n_qubits, backend, seed);
  for (int q : hadamard_on) state.apply(h(q));
  return state;
}

template <typename T = double>
QuantumState<T> init_state(int n_qubits, std::initializer_list<int> hadamard_on,
                           StateBackend backend, std::uint64_t seed = 0) {
  return init_state<T>(n_qubits, std::span<const int>(hadamard_on.begin(), hadamard_on.size()),
                       backend, seed);
}

template <typename T>
void apply_gate(QuantumState<T>& state, const GateOp& g) {
  state.apply(g);
}

template <typename T>
void measure_and_reset(QuantumState<T>& state, int q) {
  state.measure_reset(q);
}

/// Marginal Born distribution over a register list; entry index has bit j
/// equal to qubit register[j].
template <typename T>
Eigen::Vector<T, Eigen::Dynamic> probabilities(const QuantumState<T>& state,
                                               std::span<const int> reg) {
  if (reg.empty()) throw ValidationError("probabilities: empty register");
  for (int q : reg) state.check_qubit(q);
  for (std::size_t i = 0; i < reg.size(); ++i)
    for (std::size_t j = i + 1; j < reg.size(); ++j)
      if (reg[i] == reg[j]) throw ValidationError("probabilities: duplicate qubit in register");

  const Index out_dim = Index{1} << reg.size();
  Eigen::Vector<T, Eigen::Dynamic> out = Eigen::Vector<T, Eigen::Dynamic>::Zero(out_dim);
  auto local_index = [&](Index full) {
    Index idx = 0;
    for (std::size_t j = 0; j < reg.size(); ++j)
      if (full >> reg[j] & 1) idx |= Index{1} << j;
    return idx;
  };
  switch (state.backend()) {
    case StateBackend::Statevector:
    case StateBackend::Trajectory: {
      const auto& a = state.amplitudes();
      for (Index i = 0; i < a.size(); ++i) out[local_index(i)] += std::norm(a[i]);
      break;
    }
    case StateBackend::DensityMatrix: {
      const auto& rho = state.density();
      for (Index i = 0; i < rho.rows(); ++i) out[local_index(i)] += rho(i, i).real();
      break;
    }
    case StateBackend::Ensemble: {
      for (const auto& m : state.members())
        for (Index i = 0; i < m.amps.size(); ++i)
          out[local_index(i)] += m.weight * std::norm(m.amps[i]);
      break;
    }
  }
  return out;
}

template <typename T>
Eigen::Vector<T, Eigen::Dynamic> probabilities(const QuantumState<T>& state,
                                               std::initializer_list<int> reg) {
  return probabilities(state, std::span<const int>(reg.begin(), reg.size()));
}

/// Full-register distribution in qubit order.
template <typename T>
Eigen::Vector<T, Eigen::Dynamic> probabilities(const QuantumState<T>& state) {
  std::vector<int> reg(static_cast<std::size_t>(state.n_qubits()));
  for (int q = 0; q < state.n_qubits(); ++q) reg[static_cast<std::size_t>(q)] = q;
  return probabilities(state, std::span<const int>(reg));
}

/// As probabilities(), keyed by bitstring (most significant qubit first).
template <typename T>
std::map<std::string, T> probabilities_map(const QuantumState<T>& state,
                                           std::span<const int> reg) {
  const auto p = probabilities(state, reg);
  std::map<std::string, T> out;
  for (Index i = 0; i < p.size(); ++i)
    out[format_bits(static_cast<std::uint64_t>(i), static_cast<int>(reg.size()))] = p[i];
  return out;
}

template <typename T>
std::map<std::string, T> probabilities_map(const QuantumState<T>& state,
                                           std::initializer_list<int> reg) {
  return probabilities_map(state, std::span<const int>(reg.begin(), reg.size()));
}

/// Expectation of a diagonal observable f over the register's Born
/// distribution; f receives the register-local basis index.
template <typename T, typename F>
T expectation_diagonal(const QuantumState<T>& state, std::span<const int> reg, F&& f) {
  const auto p = probabilities(state, reg);
  T acc = 0;
  for (Index i = 0; i < p.size(); ++i)
    acc += p[i] * static_cast<T>(f(static_cast<std::uint64_t>(i)));
  return acc;
}

template <typename T, typename F>
T expectation_diagonal(const QuantumState<T>& state, std::initializer_list<int> reg, F&& f) {
  return expectation_diagonal(state, std::span<const int>(reg.begin(), reg.size()),
                              std::forward<F>(f));
}

}  // namespace knapq
