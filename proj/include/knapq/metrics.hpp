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

// The three benchmark figures of merit, computed from a data-register
// distribution and the brute-force oracle:
//   p_best             probability mass on optimal feasible selections;
//   feasibility_ratio  (sum of feasible mass / #feasible) * 2^m, exactly 1
//                      under the uniform distribution;
//   avg_performance    feasible-mass value expectation / best value,
//                      undefined when nothing fits (best value 0).

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>

#include "knapq/knapsack.hpp"

namespace knapq {

struct MetricSet {
  double p_best = 0.0;
  double feasibility_ratio = 0.0;
  std::optional<double> avg_performance;
};

/// Distributions are indexed by selection mask and must sum to 1 within 1e-8.
double p_best(const Eigen::VectorXd& dist, const OracleResult& oracle);
double feasibility_ratio(const Eigen::VectorXd& dist, const OracleResult& oracle);
std::optional<double> avg_performance(const Eigen::VectorXd& dist, const OracleResult& oracle);
MetricSet compute_metrics(const Eigen::VectorXd& dist, const OracleResult& oracle);

// Selection-string-keyed convenience forms; missing strings count as zero.
double p_best(const std::map<std::string, double>& dist, const OracleResult& oracle);
double feasibility_ratio(const std::map<std::string, double>& dist, const OracleResult& oracle);
std::optional<double> avg_performance(const std::map<std::string, double>& dist,
                                      const OracleResult& oracle);

/// avg_performance of the uniform distribution; the random-guessing baseline.
std::optional<double> uniform_avg_performance(const OracleResult& oracle);

/// Empirical distribution of `shots` seeded draws from dist.
Eigen::VectorXd sample_distribution(const Eigen::VectorXd& dist, long shots,
                                    std::uint64_t seed);

}  // namespace knapq
