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

#include "knapq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "knapq/types.hpp"

namespace knapq {

namespace {

void check_dist(const Eigen::VectorXd& dist, const OracleResult& oracle) {
  if (dist.size() != (Index{1} << oracle.m))
    throw ValidationError("metrics: distribution size does not match the oracle");
  if (std::abs(dist.sum() - 1.0) > 1e-8)
    throw ValidationError("metrics: distribution does not sum to 1");
}

Eigen::VectorXd from_map(const std::map<std::string, double>& dist, int m) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(Index{1} << m);
  for (const auto& [selection, p] : dist) {
    if (static_cast<int>(selection.size()) != m)
      throw ValidationError("metrics: selection length does not match the oracle");
    out[mask_from_selection(selection)] += p;
  }
  return out;
}

}  // namespace

double p_best(const Eigen::VectorXd& dist, const OracleResult& oracle) {
  check_dist(dist, oracle);
  double acc = 0.0;
  for (auto mask : oracle.best_masks) acc += dist[mask];
  return acc;
}

double feasibility_ratio(const Eigen::VectorXd& dist, const OracleResult& oracle) {
  check_dist(dist, oracle);
  double feasible_mass = 0.0;
  for (Index i = 0; i < dist.size(); ++i)
    if (oracle.feasible[static_cast<std::size_t>(i)]) feasible_mass += dist[i];
  return feasible_mass / static_cast<double>(oracle.feasible_count) *
         static_cast<double>(Index{1} << oracle.m);
}

std::optional<double> avg_performance(const Eigen::VectorXd& dist, const OracleResult& oracle) {
  check_dist(dist, oracle);
  if (oracle.best_value == 0) return std::nullopt;
  double acc = 0.0;
  for (Index i = 0; i < dist.size(); ++i)
    if (oracle.feasible[static_cast<std::size_t>(i)]) acc += dist[i] * oracle.value_of[i];
  return acc / static_cast<double>(oracle.best_value);
}

MetricSet compute_metrics(const Eigen::VectorXd& dist, const OracleResult& oracle) {
  return {p_best(dist, oracle), feasibility_ratio(dist, oracle),
          avg_performance(dist, oracle)};
}

double p_best(const std::map<std::string, double>& dist, const OracleResult& oracle) {
  return p_best(from_map(dist, oracle.m), oracle);
}

double feasibility_ratio(const std::map<std::string, double>& dist,
                         const OracleResult& oracle) {
  return feasibility_ratio(from_map(dist, oracle.m), oracle);
}

std::optional<double> avg_performance(const std::map<std::string, double>& dist,
                                      const OracleResult& oracle) {
  return avg_performance(from_map(dist, oracle.m), oracle);
}

std::optional<double> uniform_avg_performance(const OracleResult& oracle) {
  if (oracle.best_value == 0) return std::nullopt;
  double acc = 0.0;
  for (Index i = 0; i < (Index{1} << oracle.m); ++i)
    if (oracle.feasible[static_cast<std::size_t>(i)]) acc += oracle.value_of[i];
  return acc / static_cast<double>(Index{1} << oracle.m) /
         static_cast<double>(oracle.best_value);
}

Eigen::VectorXd sample_distribution(const Eigen::VectorXd& dist, long shots,
                                    std::uint64_t seed) {
  if (shots < 1) throw ValidationError("sample_distribution: shots must be >= 1");
  std::mt19937_64 rng(seed);
  Eigen::VectorXd cdf(dist.size());
  double acc = 0.0;
  for (Index i = 0; i < dist.size(); ++i) {
    acc += dist[i];
    cdf[i] = acc;
  }
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(dist.size());
  for (long s = 0; s < shots; ++s) {
    const double u = uniform_unit(rng()) * acc;
    const auto it = std::lower_bound(cdf.data(), cdf.data() + cdf.size(), u);
    counts[std::min<Index>(it - cdf.data(), dist.size() - 1)] += 1.0;
  }
  return counts / static_cast<double>(shots);
}

}  // namespace knapq
