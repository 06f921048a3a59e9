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

#include "knapq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>

#include "knapq/circuit.hpp"
#include "knapq/ising.hpp"
#include "knapq/metrics.hpp"
#include "knapq/reduced.hpp"

namespace knapq {

namespace {

double checked_eval(const Objective& objective, const Eigen::VectorXd& x, long& nfev) {
  const double f = objective(x);
  ++nfev;
  if (!std::isfinite(f)) {
    std::string point = "(";
    for (Index i = 0; i < x.size(); ++i)
      point += (i ? ", " : "") + std::to_string(x[i]);
    throw Error("minimize: objective returned a non-finite value at " + point + ")");
  }
  return f;
}

}  // namespace

OptimizationTrace minimize(const Objective& objective, const Eigen::VectorXd& x0,
                           const OptimizerOptions& opts) {
  const int n = static_cast<int>(x0.size());
  if (n < 1) throw ValidationError("minimize: empty start point");
  if (opts.max_iterations < 1 || !(opts.tolerance > 0))
    throw ValidationError("minimize: bad options");

  // Nelder, J.A. and Mead, R., Computer Journal 7 (1965); adaptive
  // coefficients from Gao, F. and Han, L., Comput. Optim. Appl. 51 (2012).
  const double refl = 1.0;
  const double expa = 1.0 + 2.0 / n;
  const double contr = 0.75 - 1.0 / (2.0 * n);
  const double shrink = 1.0 - 1.0 / n;

  long nfev = 0;
  std::vector<Eigen::VectorXd> xs(static_cast<std::size_t>(n) + 1, x0);
  std::vector<double> fs(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) xs[static_cast<std::size_t>(i)][i - 1] += opts.initial_step;
  for (int i = 0; i <= n; ++i) fs[static_cast<std::size_t>(i)] = checked_eval(objective, xs[static_cast<std::size_t>(i)], nfev);

  std::vector<int> order(static_cast<std::size_t>(n) + 1);
  OptimizationTrace trace;

  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fs[static_cast<std::size_t>(a)] < fs[static_cast<std::size_t>(b)]; });
  };

  long iteration = 0;
  for (; iteration < opts.max_iterations; ++iteration) {
    sort_simplex();
    const int best = order[0], worst = order[static_cast<std::size_t>(n)];
    const int second_worst = order[static_cast<std::size_t>(n) - 1];
    trace.history.emplace_back(iteration, fs[static_cast<std::size_t>(best)]);

    double diameter = 0.0, spread = 0.0;
    for (int i = 0; i <= n; ++i) {
      diameter = std::max(
          diameter, (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(best)]).cwiseAbs().maxCoeff());
      spread = std::max(spread, std::abs(fs[static_cast<std::size_t>(i)] - fs[static_cast<std::size_t>(best)]));
    }
    if (diameter < opts.tolerance) break;
    if (spread < 1e-12 * (1.0 + std::abs(fs[static_cast<std::size_t>(best)]))) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += xs[static_cast<std::size_t>(i)];
    centroid /= n;

    const Eigen::VectorXd reflected = centroid + refl * (centroid - xs[static_cast<std::size_t>(worst)]);
    const double f_reflected = checked_eval(objective, reflected, nfev);

    if (f_reflected < fs[static_cast<std::size_t>(best)]) {
      const Eigen::VectorXd expanded = centroid + expa * (reflected - centroid);
      const double f_expanded = checked_eval(objective, expanded, nfev);
      if (f_expanded < f_reflected) {
        xs[static_cast<std::size_t>(worst)] = expanded;
        fs[static_cast<std::size_t>(worst)] = f_expanded;
      } else {
        xs[static_cast<std::size_t>(worst)] = reflected;
        fs[static_cast<std::size_t>(worst)] = f_reflected;
      }
      continue;
    }
    if (f_reflected < fs[static_cast<std::size_t>(second_worst)]) {
      xs[static_cast<std::size_t>(worst)] = reflected;
      fs[static_cast<std::size_t>(worst)] = f_reflected;
      continue;
    }

    if (f_reflected < fs[static_cast<std::size_t>(worst)]) {
      const Eigen::VectorXd outside = centroid + contr * (reflected - centroid);
      const double f_outside = checked_eval(objective, outside, nfev);
      if (f_outside <= f_reflected) {
        xs[static_cast<std::size_t>(worst)] = outside;
        fs[static_cast<std::size_t>(worst)] = f_outside;
        continue;
      }
    } else {
      const Eigen::VectorXd inside = centroid - contr * (centroid - xs[static_cast<std::size_t>(worst)]);
      const double f_inside = checked_eval(objective, inside, nfev);
      if (f_inside < fs[static_cast<std::size_t>(worst)]) {
        xs[static_cast<std::size_t>(worst)] = inside;
        fs[static_cast<std::size_t>(worst)] = f_inside;
        continue;
      }
    }

    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      xs[static_cast<std::size_t>(i)] =
          xs[static_cast<std::size_t>(best)] + shrink * (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(best)]);
      fs[static_cast<std::size_t>(i)] = checked_eval(objective, xs[static_cast<std::size_t>(i)], nfev);
    }
  }

  sort_simplex();
  const int best = order[0];
  trace.history.emplace_back(iteration, fs[static_cast<std::size_t>(best)]);
  trace.best_value = fs[static_cast<std::size_t>(best)];
  trace.nfev = nfev;
  if (xs[static_cast<std::size_t>(best)].size() % 2 == 0 && xs[static_cast<std::size_t>(best)].size() >= 2)
    trace.best_params = AnsatzParams::from_flat(xs[static_cast<std::size_t>(best)]);
  return trace;
}

OptimizationTrace multistart(const Objective& objective, int p, int restarts,
                             const OptimizerOptions& opts) {
  if (restarts < 1) throw ValidationError("multistart: need at least one restart");
  if (p < 1) throw ValidationError("multistart: need at least one layer");

  OptimizationTrace best;
  long total_nfev = 0;
  for (int k = 0; k < restarts; ++k) {
    std::mt19937_64 rng(derive_seed(opts.seed, {0x6d73746172ull, static_cast<std::uint64_t>(k)}));
    Eigen::VectorXd x0(2 * p);
    for (Index i = 0; i < x0.size(); ++i)
      x0[i] = uniform_unit(rng()) * 2.0 * M_PI;
    auto trace = minimize(objective, x0, opts);
    total_nfev += trace.nfev;
    if (k == 0 || trace.best_value < best.best_value) best = std::move(trace);
  }
  best.nfev = total_nfev;
  return best;
}

void check_backend(const EncodingMethod& method, StateBackend backend) {
  if (method.tag == MethodTag::Zeno && backend == StateBackend::Statevector)
    throw ConfigError(
        "zeno requires a backend that supports measure-and-reset "
        "(density, trajectory, or ensemble), not statevector");
}

double classical_penalty_weight(const KnapsackInstance& inst) {
  return static_cast<double>(inst.total_value()) + 1.0;
}

Eigen::VectorXd classical_objective_table(const KnapsackInstance& inst) {
  validate(inst);
  const int m = inst.item_count();
  if (m > 24) throw ValidationError("classical_objective_table: guarded at m <= 24");
  const double alpha_cl = classical_penalty_weight(inst);
  Eigen::VectorXd table(Index{1} << m);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    const auto e = evaluate(inst, mask);
    table[mask] = -static_cast<double>(e.value) +
                  alpha_cl * static_cast<double>(std::max<long>(0, e.weight - inst.capacity));
  }
  return table;
}

namespace {

// Fused diagonal evolution of the qubo ansatz: phase pass from the energy
// table, then the mixer butterflies. Same state the circuit prepares.
CVector<double> qubo_reduced_state(const Eigen::VectorXd& energies, int n_vars,
                                   const AnsatzParams& params) {
  const Index dim = Index{1} << n_vars;
  CVector<double> v =
      CVector<double>::Constant(dim, std::complex<double>(1.0 / std::sqrt(double(dim))));
  const auto mixer = [&](double beta) {
    const auto u = single_qubit_matrix<double>(GateKind::RX, 2.0 * beta);
    for (int q = 0; q < n_vars; ++q) detail::apply_1q_vec(v.data(), dim, q, u);
  };
  for (int k = 0; k < params.layers(); ++k) {
    const double gamma = params.gammas[k];
    for (Index i = 0; i < dim; ++i) v[i] *= std::polar(1.0, -gamma * energies[i]);
    mixer(params.betas[k]);
  }
  return v;
}

Eigen::VectorXd data_marginal(const Eigen::VectorXd& full, int m) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(Index{1} << m);
  const Index mask = (Index{1} << m) - 1;
  for (Index i = 0; i < full.size(); ++i) out[i & mask] += full[i];
  return out;
}

Eigen::VectorXd method_distribution(const KnapsackInstance& inst, const EncodingMethod& method,
                                    const AnsatzParams& params, StateBackend backend,
                                    EvalMode mode, bool keep_full_register,
                                    long shots, std::mt19937_64* shot_rng) {
  Eigen::VectorXd dist;
  const int m = inst.item_count();

  if (mode == EvalMode::Reduced) {
    switch (method.tag) {
      case MethodTag::Qubo: {
        const auto model = build_qubo(inst, method.penalty, method.slack);
        const auto energies = ising_energy_table(model);
        dist = qubo_reduced_state(energies, model.n_vars(), params).cwiseAbs2();
        if (!keep_full_register) dist = data_marginal(dist, m);
        break;
      }
      case MethodTag::Dephasing:
        dist = reduced_dephasing_distribution(inst, params, method.alpha, method.penal_mode,
                                              method.penal_fixed_angle);
        break;
      case MethodTag::Zeno:
        dist = reduced_zeno_distribution(inst, params);
        break;
    }
  } else if (backend == StateBackend::Trajectory && method.tag == MethodTag::Zeno) {
    // One statevector path per shot, averaged; exact per-branch marginals.
    const auto ansatz = build_ansatz(inst, method, params);
    const long n_paths = std::max<long>(1, shots);
    for (long s = 0; s < n_paths; ++s) {
      const std::uint64_t seed = shot_rng ? (*shot_rng)() : static_cast<std::uint64_t>(s);
      auto out = run(ansatz, init_state(ansatz.n_qubits, {}, StateBackend::Trajectory, seed));
      auto p = probabilities(out);
      Eigen::VectorXd pd = keep_full_register ? Eigen::VectorXd(p) : data_marginal(p, m);
      if (dist.size() == 0) dist = Eigen::VectorXd::Zero(pd.size());
      dist += pd;
    }
    dist /= static_cast<double>(n_paths);
    return dist;  // shot averaging already applied
  } else {
    const auto ansatz = build_ansatz(inst, method, params);
    auto out = run(ansatz, init_state(ansatz.n_qubits, {}, backend));
    Eigen::VectorXd p = probabilities(out);
    dist = keep_full_register ? p : data_marginal(p, m);
  }

  if (shots > 0 && shot_rng) dist = sample_distribution(dist, shots, (*shot_rng)());
  return dist;
}

}  // namespace

Objective make_objective(const KnapsackInstance& inst, const EncodingMethod& method,
                         StateBackend backend, long shots, EvalMode mode,
                         std::uint64_t seed) {
  validate(inst);
  check_backend(method, backend);

  // Value table over the register the distribution is measured on.
  Eigen::VectorXd table;
  bool full_register = false;
  if (method.tag == MethodTag::Qubo) {
    table = ising_energy_table(build_qubo(inst, method.penalty, method.slack));
    full_register = true;
  } else {
    table = classical_objective_table(inst);
  }

  auto shot_rng = std::make_shared<std::mt19937_64>(seed);
  return [inst, method, backend, mode, shots, table = std::move(table), full_register,
          shot_rng](const Eigen::VectorXd& theta) {
    const auto params = AnsatzParams::from_flat(theta);
    const auto dist = method_distribution(inst, method, params, backend, mode,
                                          full_register, shots, shot_rng.get());
    return dist.dot(table);
  };
}

Eigen::VectorXd final_distribution(const KnapsackInstance& inst, const EncodingMethod& method,
                                   const AnsatzParams& params, StateBackend backend,
                                   EvalMode mode) {
  check_backend(method, backend);
  return method_distribution(inst, method, params, backend, mode,
                             /*keep_full_register=*/false, /*shots=*/0, nullptr);
}

}  // namespace knapq
