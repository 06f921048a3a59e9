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

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "knapq/types.hpp"

namespace knapq {

/// 0/1 knapsack: maximize sum(v_i x_i) subject to sum(w_i x_i) <= W.
struct KnapsackInstance {
  Eigen::VectorXi weights;
  Eigen::VectorXi values;
  int capacity = 0;

  int item_count() const { return static_cast<int>(weights.size()); }
  long total_weight() const { return weights.cast<long>().sum(); }
  long total_value() const { return values.cast<long>().sum(); }

  bool operator==(const KnapsackInstance& o) const {
    return capacity == o.capacity && weights == o.weights && values == o.values;
  }
};

void validate(const KnapsackInstance& inst);

/// Seeded random instance: weights and values uniform on [1, w_max] and
/// [1, v_max], capacity = max(2, floor(tightness * total weight)).
/// Sampling uses std::mt19937_64 with modulo reduction, so the same seed
/// yields the same instance on every platform.
KnapsackInstance generate(std::uint64_t seed, int m, int w_max = 10, int v_max = 10,
                          double tightness = 0.5);

// Selection strings: character i (leftmost = first item) holds x_{i+1}.
// Selection masks: bit i holds x_{i+1}; equal to the basis index of the data
// register, since item i+1 lives on data qubit i.
std::string selection_from_mask(std::uint32_t mask, int m);
std::uint32_t mask_from_selection(const std::string& selection);

struct Evaluation {
  long value = 0;
  long weight = 0;
  bool feasible = true;
};

Evaluation evaluate(const KnapsackInstance& inst, std::uint32_t mask);
Evaluation evaluate(const KnapsackInstance& inst, const std::string& selection);

/// Exhaustive enumeration of all 2^m selections (m <= 24).
struct OracleResult {
  long best_value = 0;
  std::vector<std::uint32_t> best_masks;
  Eigen::VectorXi value_of;   // indexed by selection mask
  Eigen::VectorXi weight_of;  // indexed by selection mask
  std::vector<char> feasible;
  long feasible_count = 0;
  int m = 0;

  bool is_feasible(std::uint32_t mask) const { return feasible[mask] != 0; }
  bool is_best(std::uint32_t mask) const;
  std::vector<std::string> best_selections() const;
  long value_of_selection(const std::string& s) const;
  long weight_of_selection(const std::string& s) const;
};

OracleResult brute_force(const KnapsackInstance& inst);

// Text format: "m W" on line 1, weights on line 2, values on line 3.
void write_instance(std::ostream& os, const KnapsackInstance& inst);
KnapsackInstance read_instance(std::istream& is);
void write_instance_file(const std::string& path, const KnapsackInstance& inst);
KnapsackInstance read_instance_file(const std::string& path);

}  // namespace knapq
