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

#include "knapq/arithmetic.hpp"
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

// The independent oracle for the QFT circuit.
CMatrix<double> dft_matrix(int k) {
  const Index dim = Index{1} << k;
  CMatrix<double> f(dim, dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c)
      f(r, c) = std::polar(norm, 2.0 * M_PI * static_cast<double>(r * c) /
                                     static_cast<double>(dim));
  return f;
}

// Runs a weight-register circuit on |data=x, weight=r, flag=f> and returns
// the resulting basis index (requires a basis-state output).
std::uint64_t map_basis(const CircuitProgram& c, const RegisterPlan& plan, std::uint64_t x,
                        std::uint64_t r, std::uint64_t f) {
  const std::uint64_t in =
      x | (r << plan.weight_begin) | (f << static_cast<unsigned>(plan.flag));
  auto out = run(c, basis_state(c.n_qubits, in));
  const auto& amps = out.amplitudes();
  Index imax = 0;
  amps.cwiseAbs().maxCoeff(&imax);
  REQUIRE(std::abs(std::abs(amps[imax]) - 1.0) < 1e-9);
  return static_cast<std::uint64_t>(imax);
}

}  // namespace

TEST_CASE("register plan: width rule and spans") {
  const auto plan = RegisterPlan::for_instance(instance_a());
  CHECK(plan.data_count == 3);
  CHECK(plan.weight_count == 4);  // ceil(log2(6)) + 1
  CHECK(plan.flag == 7);
  CHECK(plan.total_qubits() == 8);
  CHECK(instance_a().total_weight() <= (1l << (plan.weight_count - 1)));

  KnapsackInstance one;
  one.weights.resize(1);
  one.weights << 1;
  one.values.resize(1);
  one.values << 5;
  one.capacity = 2;
  CHECK(RegisterPlan::for_instance(one).weight_count == 1);
}

TEST_CASE("qft: single qubit reduces to a Hadamard") {
  const auto c = qft({0, 1}, 1);
  REQUIRE(c.ops.size() == 1);
  CHECK(c.ops[0].kind == GateKind::H);
}

TEST_CASE("qft: matches the DFT matrix up to four qubits") {
  for (int k = 1; k <= 4; ++k) {
    const auto c = qft({0, k}, k);
    CHECK((circuit_unitary(c) - dft_matrix(k)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("qft: offset span inside a wider circuit") {
  const auto c = qft({1, 2}, 4);
  for (std::uint64_t y = 0; y < 4; ++y) {
    auto out = run(c, basis_state(4, y << 1));
    const auto& amps = out.amplitudes();
    for (std::uint64_t z = 0; z < 4; ++z) {
      const auto expect =
          std::polar(0.5, 2.0 * M_PI * static_cast<double>(y * z) / 4.0);
      CHECK(std::abs(amps[static_cast<Index>(z << 1)] - expect) < 1e-10);
    }
  }
}

TEST_CASE("qft: inverse pair restores random states") {
  for (int k : {3, 5}) {
    const auto round_trip = compose(qft({0, k}, k), invert(qft({0, k}, k)));
    auto ref = random_product_state(k, 21);
    auto out = run(round_trip, random_product_state(k, 21));
    CHECK((out.amplitudes() - ref.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("qft: zero state maps to the uniform phase-free superposition") {
  const int k = 3;
  auto out = run(qft({0, k}, k), basis_state(k, 0));
  const auto& amps = out.amplitudes();
  for (Index i = 0; i < amps.size(); ++i) {
    CHECK(amps[i].real() == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-10));
    CHECK(std::abs(amps[i].imag()) < 1e-10);
  }
}

TEST_CASE("add_constant: zero is the identity") {
  const auto c = add_constant(0, {0, 3}, 3);
  for (std::uint64_t y = 0; y < 8; ++y) {
    auto out = run(c, basis_state(3, y));
    CHECK(std::abs(std::abs(out.amplitudes()[static_cast<Index>(y)]) - 1.0) < 1e-10);
  }
}

TEST_CASE("add_constant: wraps modulo 2^n") {
  // Register value 2, plus 3 -> 5; register value 1, minus 2 -> 7 (mod 8).
  const auto plus3 = add_constant(3, {0, 3}, 3);
  auto out = run(plus3, basis_state(3, 2));
  CHECK(std::abs(std::abs(out.amplitudes()[5]) - 1.0) < 1e-10);

  const auto minus2 = add_constant(-2, {0, 3}, 3);
  out = run(minus2, basis_state(3, 1));
  CHECK(std::abs(std::abs(out.amplitudes()[7]) - 1.0) < 1e-10);
}

TEST_CASE("adder: computes every weight for the worked example") {
  const auto inst = instance_a();
  const auto plan = RegisterPlan::for_instance(inst);
  const auto add = adder(inst, plan);
  const auto oracle = brute_force(inst);
  for (std::uint32_t xmask = 0; xmask < 8; ++xmask) {
    const auto out = map_basis(add, plan, xmask, 0, 0);
    const auto expect =
        static_cast<std::uint64_t>(xmask) |
        (static_cast<std::uint64_t>(oracle.weight_of[xmask]) << plan.weight_begin);
    CHECK(out == expect);
  }
}

TEST_CASE("adder: items 1 and 2 write weight 3") {
  const auto inst = instance_a();
  const auto plan = RegisterPlan::for_instance(inst);
  // |110) in selection order = items 1,2 -> data mask 0b011, weight 3.
  const auto out = map_basis(adder(inst, plan), plan, 0b011, 0, 0);
  CHECK(out == (0b011u | (3u << 3)));
}

TEST_CASE("adder: accumulates onto a non-zero register") {
  const auto inst = instance_a();
  const auto plan = RegisterPlan::for_instance(inst);
  const auto add = adder(inst, plan);
  // Weight 6 on top of register value 9: 15, no wrap needed at n = 4.
  CHECK(map_basis(add, plan, 0b111, 9, 0) == (0b111u | (15u << 3)));
}

TEST_CASE("adder: round-trips with its inverse on all basis inputs") {
  const auto inst = instance_a();
  const auto plan = RegisterPlan::for_instance(inst);
  const auto round_trip = compose(adder(inst, plan), invert(adder(inst, plan)));
  for (std::uint32_t xmask = 0; xmask < 8; ++xmask)
    CHECK(map_basis(round_trip, plan, xmask, 0, 0) == xmask);
}

TEST_CASE("adder: linear on superpositions") {
  const auto inst = instance_a();
  const auto plan = RegisterPlan::for_instance(inst);
  const auto add = adder(inst, plan);
  // Sum of basis images == image of the sum, by unitarity; spot-check one
  // superposition against hand-assembled branches.
  auto in = init_state(plan.total_qubits(), {0, 1}, StateBackend::Statevector);
  auto out = run(add, in);
  const auto& amps = out.amplitudes();
  const auto oracle = brute_force(inst);
  for (std::uint32_t xmask : {0u, 1u, 2u, 3u}) {
    const auto idx = static_cast<Index>(
        xmask | (static_cast<std::uint64_t>(oracle.weight_of[xmask]) << plan.weight_begin));
    CHECK(std::abs(amps[idx] - std::complex<double>(0.5)) < 1e-10);
  }
}

TEST_CASE("test_block: boundary weights set and clear the flag") {
  const auto inst = instance_a();
  const auto plan = RegisterPlan::for_instance(inst);
  const auto test = test_block(inst.capacity, plan);
  // Weight 6 violates capacity 5; weight 5 does not. The register content is
  // preserved either way.
  CHECK(map_basis(test, plan, 0, 6, 0) == (6u << 3 | 1u << 7));
  CHECK(map_basis(test, plan, 0, 5, 0) == (5u << 3));
}

TEST_CASE("test_block: agrees with oracle feasibility after the adder") {
  const auto inst = instance_a();
  const auto plan = RegisterPlan::for_instance(inst);
  const auto circuit = compose(adder(inst, plan), test_block(inst.capacity, plan));
  const auto oracle = brute_force(inst);
  for (std::uint32_t xmask = 0; xmask < 8; ++xmask) {
    const auto out = map_basis(circuit, plan, xmask, 0, 0);
    const std::uint64_t flag = out >> static_cast<unsigned>(plan.flag) & 1u;
    CHECK(flag == (oracle.is_feasible(xmask) ? 0u : 1u));
    const std::uint64_t weight = (out >> plan.weight_begin) & 0xfu;
    CHECK(weight == static_cast<std::uint64_t>(oracle.weight_of[xmask]));
  }
}

TEST_CASE("test_block: applying it twice restores the flag") {
  const auto inst = instance_a();
  const auto plan = RegisterPlan::for_instance(inst);
  const auto twice = compose(test_block(inst.capacity, plan), test_block(inst.capacity, plan));
  for (std::uint64_t w : {0ull, 3ull, 6ull})
    CHECK(map_basis(twice, plan, 0, w, 0) == w << 3);
}

TEST_CASE("test_block: empty when the capacity cannot be exceeded") {
  auto inst = instance_a();
  inst.capacity = 8;  // register holds weights up to 6 < 8, and 8 = 2^(n-1)
  const auto plan = RegisterPlan::for_instance(inst);
  CHECK(test_block(inst.capacity, plan).ops.empty());
}

TEST_CASE("penal_block: no phase on unflagged branches in either mode") {
  const auto plan = RegisterPlan::for_instance(instance_a());
  for (auto mode : {PenalMode::Flat, PenalMode::Proportional}) {
    const auto block = penal_block(3.0, 0.7, mode, plan);
    auto out = run(block, basis_state(plan.total_qubits(), 5u << plan.weight_begin));
    const auto amp = out.amplitudes()[static_cast<Index>(5u << plan.weight_begin)];
    CHECK(std::abs(amp - std::complex<double>(1.0)) < 1e-12);
  }
}

TEST_CASE("penal_block: flat mode applies phase -alpha*gamma to flagged branches") {
  const double alpha = 3.0, gamma = 0.7;
  const auto plan = RegisterPlan::for_instance(instance_a());
  const auto block = penal_block(alpha, gamma, PenalMode::Flat, plan);
  const std::uint64_t idx = std::uint64_t{1} << static_cast<unsigned>(plan.flag);
  auto out = run(block, basis_state(plan.total_qubits(), idx));
  const auto amp = out.amplitudes()[static_cast<Index>(idx)];
  CHECK(std::abs(amp - std::polar(1.0, -alpha * gamma)) < 1e-12);
}

TEST_CASE("penal_block: proportional mode scales with the register weight") {
  const double alpha = 0.31, gamma = 1.1;
  const auto plan = RegisterPlan::for_instance(instance_a());
  const auto block = penal_block(alpha, gamma, PenalMode::Proportional, plan);
  auto phase_for = [&](std::uint64_t w) {
    const std::uint64_t idx = (w << plan.weight_begin) |
                              (std::uint64_t{1} << static_cast<unsigned>(plan.flag));
    auto out = run(block, basis_state(plan.total_qubits(), idx));
    return std::arg(out.amplitudes()[static_cast<Index>(idx)]);
  };
  // Weight 7 vs weight 6: one extra unit of -alpha*gamma.
  double diff = phase_for(7) - phase_for(6);
  diff = std::remainder(diff + alpha * gamma, 2.0 * M_PI);
  CHECK(std::abs(diff) < 1e-9);
}

TEST_CASE("reinit_block: structural composition per variant") {
  const auto inst = instance_a();
  const auto plan = RegisterPlan::for_instance(inst);
  const auto deph = reinit_block(ReinitVariant::Dephasing, inst, inst.capacity, plan);
  const auto expected = compose(invert(test_block(inst.capacity, plan)),
                                invert(adder(inst, plan)));
  CHECK(deph.ops == expected.ops);

  const auto zeno = reinit_block(ReinitVariant::Zeno, inst, inst.capacity, plan);
  CHECK(zeno.ops == invert(adder(inst, plan)).ops);
}

TEST_CASE("reinit_block: keeps fresh ancillas at zero on the empty selection") {
  const auto inst = instance_a();
  const auto plan = RegisterPlan::for_instance(inst);
  for (auto variant : {ReinitVariant::Dephasing, ReinitVariant::Zeno}) {
    const auto block = reinit_block(variant, inst, inst.capacity, plan);
    CHECK(map_basis(block, plan, 0, 0, 0) == 0);
  }
}

TEST_CASE("compose(ADD, invert(ADD)) is the identity across seeded instances") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto inst = generate(seed, 3);
    const auto plan = RegisterPlan::for_instance(inst);
    const auto round_trip = compose(adder(inst, plan), invert(adder(inst, plan)));
    for (std::uint32_t xmask = 0; xmask < 8; ++xmask)
      CHECK(map_basis(round_trip, plan, xmask, 0, 0) == xmask);
  }
}
