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

// Exact data-register evaluators for the phase-encoded layers.
//
// Inside one dephasing layer the arithmetic blocks compute, phase, and
// uncompute exactly, so the ancillas return to |0> at every layer boundary
// and the data register evolves under a diagonal phase followed by the
// mixer. A Zeno layer additionally splits the state along the data-basis
// feasibility partition when the flag is measured. Both evolutions can
// therefore be run on the 2^m data space alone; unit tests pin these
// evaluators elementwise against full circuit simulations.

#include <Eigen/Dense>

#include "knapq/arithmetic.hpp"
#include "knapq/knapsack.hpp"
#include "knapq/types.hpp"

namespace knapq {

/// Data-register distribution of the dephasing ansatz, indexed by selection
/// mask. Equals the statevector simulation's data marginal.
Eigen::VectorXd reduced_dephasing_distribution(const KnapsackInstance& inst,
                                               const AnsatzParams& params, double alpha,
                                               PenalMode mode = PenalMode::Flat,
                                               bool fixed_angle = false);

/// Data-register distribution of the Zeno ansatz under exact non-selective
/// measurement. Equals the ensemble/density simulation's data marginal.
Eigen::VectorXd reduced_zeno_distribution(const KnapsackInstance& inst,
                                          const AnsatzParams& params);

}  // namespace knapq
