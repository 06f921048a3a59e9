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

#include "knapq/reduced.hpp"

#include <cmath>
#include <vector>

#include "knapq/state.hpp"

namespace knapq {

namespace {

struct DataTables {
  Eigen::VectorXd value;
  Eigen::VectorXd excess;  // max(0, weight - W)
  std::vector<char> infeasible;
  int m = 0;
  Index dim = 0;
};

DataTables make_tables(const KnapsackInstance& inst) {
  validate(inst);
  const int m = inst.item_count();
  if (m > 20) throw ValidationError("reduced evaluator: guarded at m <= 20");
  DataTables t;
  t.m = m;
  t.dim = Index{1} << m;
  t.value.resize(t.dim);
  t.excess.resize(t.dim);
  t.infeasible.assign(static_cast<std::size_t>(t.dim), 0);
  for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(t.dim); ++mask) {
    const auto e = evaluate(inst, mask);
    t.value[mask] = static_cast<double>(e.value);
    t.excess[mask] = static_cast<double>(std::max<long>(0, e.weight - inst.capacity));
    t.infeasible[mask] = e.feasible ? 0 : 1;
  }
  return t;
}

void apply_mixer(CVector<double>& v, int m, double beta) {
  const auto u = single_qubit_matrix<double>(GateKind::RX, 2.0 * beta);
  for (int q = 0; q < m; ++q) detail::apply_1q_vec(v.data(), v.size(), q, u);
}

}  // namespace

Eigen::VectorXd reduced_dephasing_distribution(const KnapsackInstance& inst,
                                               const AnsatzParams& params, double alpha,
                                               PenalMode mode, bool fixed_angle) {
  const auto t = make_tables(inst);
  CVector<double> v =
      CVector<double>::Constant(t.dim, std::complex<double>(1.0 / std::sqrt(double(t.dim))));
  for (int k = 0; k < params.layers(); ++k) {
    const double gamma = params.gammas[k];
    const double penal_angle = fixed_angle ? alpha : alpha * gamma;
    for (Index i = 0; i < t.dim; ++i) {
      double angle = -gamma * t.value[i];
      if (t.infeasible[static_cast<std::size_t>(i)]) {
        // The flagged branch holds Weight(x) = W + excess in the register
        // while PENAL runs.
        angle -= mode == PenalMode::Flat ? penal_angle
                                         : penal_angle * (t.excess[i] + inst.capacity);
      }
      v[i] *= std::polar(1.0, angle);
    }
    apply_mixer(v, t.m, params.betas[k]);
  }
  return v.cwiseAbs2();
}

Eigen::VectorXd reduced_zeno_distribution(const KnapsackInstance& inst,
                                          const AnsatzParams& params) {
  const auto t = make_tables(inst);
  struct Member {
    double weight;
    CVector<double> amps;
  };
  std::vector<Member> members;
  members.push_back(
      {1.0, CVector<double>::Constant(t.dim, std::complex<double>(
                                                 1.0 / std::sqrt(double(t.dim))))});

  for (int k = 0; k < params.layers(); ++k) {
    const double gamma = params.gammas[k];
    std::vector<Member> next;
    next.reserve(members.size() * 2);
    for (auto& m : members) {
      for (Index i = 0; i < t.dim; ++i)
        m.amps[i] *= std::polar(1.0, -gamma * t.value[i]);
      // Non-selective flag measurement: split along the feasibility partition.
      double p_bad = 0;
      for (Index i = 0; i < t.dim; ++i)
        if (t.infeasible[static_cast<std::size_t>(i)]) p_bad += std::norm(m.amps[i]);
      const double p_good = 1.0 - p_bad;

      if (p_bad > 1e-14) {
        Member bad{m.weight * p_bad, m.amps};
        const double scale = 1.0 / std::sqrt(p_bad);
        for (Index i = 0; i < t.dim; ++i)
          bad.amps[i] = t.infeasible[static_cast<std::size_t>(i)] ? bad.amps[i] * scale
                                                                  : std::complex<double>(0);
        apply_mixer(bad.amps, t.m, params.betas[k]);
        next.push_back(std::move(bad));
      }
      if (p_good > 1e-14) {
        const double scale = 1.0 / std::sqrt(p_good);
        for (Index i = 0; i < t.dim; ++i)
          m.amps[i] = t.infeasible[static_cast<std::size_t>(i)] ? std::complex<double>(0)
                                                                : m.amps[i] * scale;
        m.weight *= p_good;
        apply_mixer(m.amps, t.m, params.betas[k]);
        next.push_back(std::move(m));
      }
    }
    members = std::move(next);
  }

  Eigen::VectorXd dist = Eigen::VectorXd::Zero(t.dim);
  for (const auto& m : members)
    for (Index i = 0; i < t.dim; ++i) dist[i] += m.weight * std::norm(m.amps[i]);
  return dist;
}

}  // namespace knapq
