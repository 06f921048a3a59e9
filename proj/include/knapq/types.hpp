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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace knapq {

template <typename T>
using CVector = Eigen::Vector<std::complex<T>, Eigen::Dynamic>;
template <typename T>
using CMatrix = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

using Index = std::int64_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A qubit or register index outside the state it addresses.
struct IndexError : Error {
  using Error::Error;
};

// A precondition on arguments or object state was violated.
struct ValidationError : Error {
  using Error::Error;
};

// An operation the selected simulation backend cannot perform.
struct BackendError : Error {
  using Error::Error;
};

// An inconsistent run configuration (method/backend/flags).
struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

/// Variational angles for a layered ansatz: one (gamma, beta) pair per layer.
struct AnsatzParams {
  Eigen::VectorXd gammas;
  Eigen::VectorXd betas;

  AnsatzParams() = default;
  AnsatzParams(Eigen::VectorXd g, Eigen::VectorXd b)
      : gammas(std::move(g)), betas(std::move(b)) {
    if (gammas.size() != betas.size() || gammas.size() < 1)
      throw ValidationError("AnsatzParams: gammas and betas must have equal length >= 1");
  }

  int layers() const { return static_cast<int>(gammas.size()); }

  /// Flattened form (gamma_1..gamma_p, beta_1..beta_p) used by the optimizer.
  Eigen::VectorXd flatten() const {
    Eigen::VectorXd theta(2 * layers());
    theta << gammas, betas;
    return theta;
  }

  static AnsatzParams from_flat(const Eigen::VectorXd& theta) {
    if (theta.size() < 2 || theta.size() % 2 != 0)
      throw ValidationError("AnsatzParams: flat vector must have even length >= 2");
    const auto p = theta.size() / 2;
    return AnsatzParams(theta.head(p), theta.tail(p));
  }

  static AnsatzParams zeros(int p) {
    return AnsatzParams(Eigen::VectorXd::Zero(p), Eigen::VectorXd::Zero(p));
  }
};

/// Renders a basis index as a bitstring, most significant qubit first.
inline std::string format_bits(std::uint64_t index, int n_bits) {
  std::string s(static_cast<std::size_t>(n_bits), '0');
  for (int b = 0; b < n_bits; ++b)
    if (index >> b & 1u) s[static_cast<std::size_t>(n_bits - 1 - b)] = '1';
  return s;
}

/// Inverse of format_bits.
inline std::uint64_t parse_bits(const std::string& s) {
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c != '0' && c != '1') throw ValidationError("parse_bits: not a bitstring: " + s);
    if (c == '1') index |= std::uint64_t{1} << (s.size() - 1 - i);
  }
  return index;
}

/// SplitMix64 step; the project-wide mixer for deriving child seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic combination of a seed with a stream of tags.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = base;
  std::uint64_t out = splitmix64(s);
  for (auto t : tags) {
    s ^= t;
    out = splitmix64(s);
  }
  return out;
}

/// Uniform double in [0, 1) from a 64-bit word; bit-stable across platforms.
inline double uniform_unit(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace knapq
