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

#include <cmath>
#include <random>
#include <sstream>

#include "knapq/ising.hpp"
#include "test_util.hpp"

using namespace knapq;
using namespace knapq::testing;

namespace {

KnapsackInstance instance_a() {
  KnapsackInstance inst;
  inst.weights.resize(3);
  inst.weights << 1, 2, 3;
  inst.values.resize(3);
  inst.values << 6, 10, 12;
  inst.capacity = 5;
  return inst;
}

// Independent route: evaluate the quadratic cost directly from the instance,
// before any collection into Q/B/offset.
double direct_cost(const KnapsackInstance& inst, const Eigen::VectorXd& slack_weights,
                   double penalty, std::uint64_t mask) {
  double value = 0.0;
  double load = -static_cast<double>(inst.capacity);
  for (int i = 0; i < inst.item_count(); ++i) {
    if (mask >> i & 1u) {
      value += inst.values[i];
      load += inst.weights[i];
    }
  }
  for (int k = 0; k < slack_weights.size(); ++k)
    if (mask >> (inst.item_count() + k) & 1u) load += slack_weights[k];
  return -value + penalty * load * load;
}

}  // namespace

TEST_CASE("slack_bit_count: both conventions") {
  CHECK(slack_bit_count(5, SlackConvention::Compact) == 3);   // values 0..7 cover 0..5
  CHECK(slack_bit_count(7, SlackConvention::Compact) == 3);
  CHECK(slack_bit_count(8, SlackConvention::Compact) == 4);
  CHECK(slack_bit_count(2, SlackConvention::Compact) == 2);
  CHECK(slack_bit_count(5, SlackConvention::Paper) == 4);     // ceil(log2 5) + 1
  CHECK(slack_bit_count(8, SlackConvention::Paper) == 4);
  CHECK(slack_bit_count(2, SlackConvention::Paper) == 2);
}

TEST_CASE("build_qubo: field and coupling entries for the worked example") {
  const auto model = build_qubo(instance_a(), 10.0);
  CHECK(model.n_slack == 3);
  // First item: -v_1 + P(w_1^2 - 2 W w_1) = -6 + 10(1 - 10) = -96.
  CHECK(model.field[0] == doctest::Approx(-96.0));
  // Item pair (1,2): 2 w_1 w_2 P = 40.
  CHECK(model.coupling(0, 1) == doctest::Approx(40.0));
  CHECK(model.coupling(0, 2) == doctest::Approx(60.0));
  CHECK(model.offset == doctest::Approx(250.0));
  CHECK(model.slack_weights[0] == 1.0);
  CHECK(model.slack_weights[2] == 4.0);
}

TEST_CASE("build_qubo: paper slack convention shifts the weights") {
  const auto model = build_qubo(instance_a(), 10.0, SlackConvention::Paper);
  CHECK(model.n_slack == 4);
  CHECK(model.slack_weights[0] == 2.0);
  CHECK(model.slack_weights[3] == 16.0);
  // Slack-slack coupling 2 * a_k * a_l * P.
  CHECK(model.coupling(3, 4) == doctest::Approx(2.0 * 2.0 * 4.0 * 10.0));
}

TEST_CASE("build_qubo: rejects non-positive penalty") {
  CHECK_THROWS_AS(build_qubo(instance_a(), 0.0), ValidationError);
}

TEST_CASE("ising_energy: all-zeros assignment is the pure penalty constant") {
  const auto model = build_qubo(instance_a(), 10.0);
  CHECK(ising_energy(model, std::string("000000")) == doctest::Approx(10.0 * 25.0));
}

TEST_CASE("ising_energy: exact-capacity selection with zero slack") {
  const auto model = build_qubo(instance_a(), 10.0);
  // Items 2 and 3: weight 5 = W, value 22, no penalty.
  CHECK(ising_energy(model, std::string("011000")) == doctest::Approx(-22.0));
}

TEST_CASE("ising_energy: rejects wrong assignment length") {
  const auto model = build_qubo(instance_a(), 10.0);
  CHECK_THROWS_AS(ising_energy(model, std::string("011")), ValidationError);
}

TEST_CASE("ising_energy equals the direct quadratic cost on every assignment") {
  for (auto conv : {SlackConvention::Compact, SlackConvention::Paper}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto inst = generate(seed, 3 + static_cast<int>(seed % 2));
      const auto model = build_qubo(inst, 10.0, conv);
      const auto n = model.n_vars();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const double direct = direct_cost(inst, model.slack_weights, 10.0, mask);
        CHECK(ising_energy(model, mask) == direct);  // integer-valued, exact
      }
    }
  }
}

TEST_CASE("spin-form energy equals binary-form energy") {
  std::mt19937_64 rng(2024);
  const auto inst = generate(9, 4);
  const auto model = build_qubo(inst, 7.0);
  const int n = model.n_vars();
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t mask = rng() % (std::uint64_t{1} << n);
    Eigen::VectorXi z(n);
    for (int j = 0; j < n; ++j) z[j] = (mask >> j & 1u) ? 1 : -1;
    CHECK(ising_energy_spin(model, z) == doctest::Approx(ising_energy(model, mask)).epsilon(1e-12));
  }
}

TEST_CASE("ground state decodes to the oracle optimum under a dominant penalty") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = generate(seed, 2 + static_cast<int>(seed % 4));
    const auto oracle = brute_force(inst);
    const auto model = build_qubo(inst, 2.0 * static_cast<double>(inst.total_value()));
    const auto table = ising_energy_table(model);
    Index argmin = 0;
    const double emin = table.minCoeff(&argmin);
    const auto item_mask =
        static_cast<std::uint32_t>(argmin) & ((std::uint32_t{1} << inst.item_count()) - 1);
    CHECK(oracle.is_best(item_mask));
    CHECK(emin == -static_cast<double>(oracle.best_value));
  }
}

TEST_CASE("qubo_phase_block: diagonal with phase -gamma * (E(y) - E(0))") {
  const double gamma = 0.37;
  const auto model = build_qubo(instance_a(), 10.0);
  const auto block = qubo_phase_block(model, gamma);
  const int n = model.n_vars();
  REQUIRE(n == 6);
  for (std::uint64_t y = 0; y < (1u << n); ++y) {
    auto out = run(block, basis_state(n, y));
    const auto amp = out.amplitudes()[static_cast<Index>(y)];
    CHECK(std::abs(std::abs(amp) - 1.0) < 1e-10);  // basis states map to themselves
    const double expected = -gamma * (ising_energy(model, y) - model.offset);
    CHECK(std::abs(amp - std::polar(1.0, expected)) < 1e-9);
  }
}

TEST_CASE("qubo_layer: zero angles act as the identity") {
  const auto model = build_qubo(instance_a(), 10.0);
  const auto layer = qubo_layer(model, 0.0, 0.0);
  auto ref = random_product_state(model.n_vars(), 77);
  auto out = run(layer, random_product_state(model.n_vars(), 77));
  CHECK((out.amplitudes() - ref.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("qubo_layer: beta = pi/2 flips all qubits up to phase") {
  const auto model = build_qubo(instance_a(), 10.0);
  const auto layer = qubo_layer(model, 0.0, M_PI / 2);
  auto out = run(layer, init_state(model.n_vars(), {}, StateBackend::Statevector));
  const auto p = probabilities(out);
  CHECK(p[p.size() - 1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("qubo_ansatz: structure and the zero-angle uniform distribution") {
  const auto inst = instance_a();
  const auto ansatz = qubo_ansatz(inst, 10.0, AnsatzParams::zeros(2));
  long h_count = 0, rx_count = 0;
  for (const auto& g : ansatz.ops) {
    if (g.kind == GateKind::H) ++h_count;
    if (g.kind == GateKind::RX) ++rx_count;
  }
  CHECK(h_count == 6);
  CHECK(rx_count == 2 * 6);  // p layers of RX on every variable
  CHECK(ansatz.layout.data_count == 3);
  CHECK(ansatz.layout.ancilla_count == 3);

  auto out = run(ansatz, init_state(6, {}, StateBackend::Statevector));
  const auto p = probabilities(out);
  for (Index i = 0; i < p.size(); ++i)
    CHECK(p[i] == doctest::Approx(1.0 / 64).epsilon(1e-10));
}

TEST_CASE("write_ising: header and sparse rows") {
  const auto model = build_qubo(instance_a(), 10.0);
  std::ostringstream os;
  write_ising(os, model);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "3 3 10 250");
  std::getline(is, line);
  CHECK(line == "0 1 40");
}
