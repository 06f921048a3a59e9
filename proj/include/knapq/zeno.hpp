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

#include <cstdint>

#include "knapq/types.hpp"

namespace knapq {

/// Operator-norm distance || [P exp(-iHt/N) P]^N - exp(-i PHP t) P ||.
///
/// Repeated projective measurement at rate N/t confines evolution under H to
/// the range of P; the distance to the limit dynamics on that range decays as
/// O(1/N). H must be Hermitian and P an orthogonal projector (both within
/// 1e-10); dimension capped at 64.
double zeno_limit_check(const CMatrix<double>& hamiltonian, const CMatrix<double>& projector,
                        double t, long n_measurements);

/// Seeded Hermitian matrix with unit-scale Gaussian entries.
CMatrix<double> random_hermitian(int dim, std::uint64_t seed);

/// Seeded orthogonal projector of the given rank.
CMatrix<double> random_projector(int dim, int rank, std::uint64_t seed);

}  // namespace knapq
