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

#include "knapq/zeno.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <random>

namespace knapq {

namespace {

using Cmplx = std::complex<double>;

// exp(i s A) for Hermitian A via eigendecomposition.
CMatrix<double> expi_hermitian(const CMatrix<double>& a, double s) {
  Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(a);
  const Eigen::VectorXd lambda = es.eigenvalues();
  CVector<double> phases(lambda.size());
  for (Index i = 0; i < lambda.size(); ++i) phases[i] = std::polar(1.0, s * lambda[i]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix<double> matrix_power(CMatrix<double> base, long n) {
  CMatrix<double> result = CMatrix<double>::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

double operator_norm(const CMatrix<double>& a) {
  return Eigen::JacobiSVD<CMatrix<double>>(a).singularValues()(0);
}

double gaussian(std::mt19937_64& rng) {
  // Box-Muller on the project RNG keeps the stream platform-stable.
  const double u1 = std::max(uniform_unit(rng()), 1e-300);
  const double u2 = uniform_unit(rng());
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

double zeno_limit_check(const CMatrix<double>& hamiltonian, const CMatrix<double>& projector,
                        double t, long n_measurements) {
  const Index dim = hamiltonian.rows();
  if (dim < 1 || dim > 64 || hamiltonian.cols() != dim)
    throw ValidationError("zeno_limit_check: H must be square with dimension <= 64");
  if (projector.rows() != dim || projector.cols() != dim)
    throw ValidationError("zeno_limit_check: P must match H in dimension");
  if (n_measurements < 1) throw ValidationError("zeno_limit_check: N must be >= 1");
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("zeno_limit_check: H is not Hermitian");
  if ((projector - projector.adjoint()).cwiseAbs().maxCoeff() > 1e-10 ||
      (projector * projector - projector).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("zeno_limit_check: P is not an orthogonal projector");

  const CMatrix<double> step =
      projector * expi_hermitian(hamiltonian, -t / static_cast<double>(n_measurements)) *
      projector;
  const CMatrix<double> repeated = matrix_power(step, n_measurements);

  // The repeated product annihilates the complement of range(P), so the
  // comparison target is the limit dynamics restricted to that range.
  const CMatrix<double> php = projector * hamiltonian * projector;
  const CMatrix<double> limit = expi_hermitian(php, -t) * projector;

  return operator_norm(repeated - limit);
}

CMatrix<double> random_hermitian(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CMatrix<double> a(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) a(i, j) = Cmplx(gaussian(rng), gaussian(rng));
  CMatrix<double> herm = (a + a.adjoint()) / 2.0;
  return herm / std::sqrt(static_cast<double>(dim));
}

CMatrix<double> random_projector(int dim, int rank, std::uint64_t seed) {
  if (rank < 1 || rank > dim) throw ValidationError("random_projector: invalid rank");
  std::mt19937_64 rng(seed ^ 0x5a5a5a5a5a5a5a5aull);
  CMatrix<double> a(dim, rank);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < rank; ++j) a(i, j) = Cmplx(gaussian(rng), gaussian(rng));
  Eigen::HouseholderQR<CMatrix<double>> qr(a);
  CMatrix<double> q = qr.householderQ() * CMatrix<double>::Identity(dim, rank);
  return q * q.adjoint();
}

}  // namespace knapq
