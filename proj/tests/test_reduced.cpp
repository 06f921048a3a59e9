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

#include "doctest.h"

#include <random>

#include "knapq/encoders.hpp"
#include "knapq/reduced.hpp"
#include "test_util.hpp"

using namespace knapq;

namespace {

AnsatzParams random_params(int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::VectorXd g(p), b(p);
  for (int k = 0; k < p; ++k) {
    g[k] = uniform_unit(rng()) * 6.283185307179586;
    b[k] = uniform_unit(rng()) * 6.283185307179586;
  }
  return AnsatzParams(g, b);
}

Eigen::VectorXd circuit_data_distribution(const KnapsackInstance& inst,
                                          const EncodingMethod& method,
                                          const AnsatzParams& params, StateBackend backend) {
  const auto ansatz = build_ansatz(inst, method, params);
  auto out = run(ansatz, init_state(ansatz.n_qubits, {}, backend));
  std::vector<int> data_reg;
  for (int i = 0; i < inst.item_count(); ++i) data_reg.push_back(i);
  return probabilities(out, std::span<const int>(data_reg)).cast<double>();
}

}  // namespace

TEST_CASE("reduced dephasing equals the full circuit data marginal") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto inst = generate(seed, 3 + static_cast<int>(seed % 2));
    const auto params = random_params(3, 100 + seed);
    const double alpha = 4.5;
    for (auto mode : {PenalMode::Flat, PenalMode::Proportional}) {
      for (bool fixed : {false, true}) {
        auto method = EncodingMethod::dephasing(alpha, mode, fixed);
        const auto full =
            circuit_data_distribution(inst, method, params, StateBackend::Statevector);
        const auto fast =
            reduced_dephasing_distribution(inst, params, alpha, mode, fixed);
        CHECK((full - fast).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("reduced dephasing handles a large aliased penalty strength") {
  const auto inst = generate(8, 4);
  const auto params = random_params(5, 9);
  const auto full = circuit_data_distribution(inst, EncodingMethod::dephasing(10000.0),
                                              params, StateBackend::Statevector);
  const auto fast = reduced_dephasing_distribution(inst, params, 10000.0);
  CHECK((full - fast).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("reduced zeno equals the ensemble circuit data marginal") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto inst = generate(seed, 3 + static_cast<int>(seed % 2));
    const auto params = random_params(3, 200 + seed);
    const auto full = circuit_data_distribution(inst, EncodingMethod::zeno(), params,
                                                StateBackend::Ensemble);
    const auto fast = reduced_zeno_distribution(inst, params);
    CHECK((full - fast).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("reduced zeno equals the density-matrix channel") {
  const auto inst = generate(5, 3);  // 3 + 4 + 1 qubits: density still cheap
  const auto params = random_params(2, 77);
  const auto full = circuit_data_distribution(inst, EncodingMethod::zeno(), params,
                                              StateBackend::DensityMatrix);
  const auto fast = reduced_zeno_distribution(inst, params);
  CHECK((full - fast).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("reduced evaluators at zero angles give the uniform distribution") {
  const auto inst = generate(11, 4);
  const auto zeros = AnsatzParams::zeros(5);
  const auto deph = reduced_dephasing_distribution(inst, zeros, 10000.0);
  const auto zeno = reduced_zeno_distribution(inst, zeros);
  for (Index i = 0; i < deph.size(); ++i) {
    CHECK(deph[i] == doctest::Approx(1.0 / 16).epsilon(1e-12));
    CHECK(zeno[i] == doctest::Approx(1.0 / 16).epsilon(1e-12));
  }
}

TEST_CASE("reduced distributions are normalized") {
  const auto inst = generate(6, 5);
  const auto params = random_params(4, 42);
  CHECK(reduced_dephasing_distribution(inst, params, 123.0).sum() ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reduced_zeno_distribution(inst, params).sum() ==
        doctest::Approx(1.0).epsilon(1e-12));
}
