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

#include "knapq/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace knapq {

void validate(const KnapsackInstance& inst) {
  const int m = inst.item_count();
  if (m < 1) throw ValidationError("knapsack: need at least one item");
  if (static_cast<int>(inst.values.size()) != m)
    throw ValidationError("knapsack: weights and values differ in length");
  if (inst.capacity < 2) throw ValidationError("knapsack: capacity must be >= 2");
  for (int i = 0; i < m; ++i)
    if (inst.weights[i] < 1 || inst.values[i] < 1)
      throw ValidationError("knapsack: weights and values must be positive");
}

KnapsackInstance generate(std::uint64_t seed, int m, int w_max, int v_max,
                          double tightness) {
  if (m < 1) throw ValidationError("generate: m must be >= 1");
  if (w_max < 1 || v_max < 1) throw ValidationError("generate: w_max, v_max must be >= 1");
  if (!(tightness > 0.0) || tightness > 1.0)
    throw ValidationError("generate: tightness must be in (0, 1]");

  std::mt19937_64 rng(seed);
  KnapsackInstance inst;
  inst.weights.resize(m);
  inst.values.resize(m);
  for (int i = 0; i < m; ++i)
    inst.weights[i] = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(w_max));
  for (int i = 0; i < m; ++i)
    inst.values[i] = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(v_max));
  const long cap = std::max<long>(
      2, static_cast<long>(std::floor(tightness * static_cast<double>(inst.total_weight()))));
  inst.capacity = static_cast<int>(cap);
  validate(inst);
  return inst;
}

std::string selection_from_mask(std::uint32_t mask, int m) {
  std::string s(static_cast<std::size_t>(m), '0');
  for (int i = 0; i < m; ++i)
    if (mask >> i & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

std::uint32_t mask_from_selection(const std::string& selection) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < selection.size(); ++i) {
    if (selection[i] != '0' && selection[i] != '1')
      throw ValidationError("selection string must contain only 0 and 1");
    if (selection[i] == '1') mask |= std::uint32_t{1} << i;
  }
  return mask;
}

Evaluation evaluate(const KnapsackInstance& inst, std::uint32_t mask) {
  Evaluation e;
  for (int i = 0; i < inst.item_count(); ++i) {
    if (mask >> i & 1u) {
      e.value += inst.values[i];
      e.weight += inst.weights[i];
    }
  }
  e.feasible = e.weight <= inst.capacity;
  return e;
}

Evaluation evaluate(const KnapsackInstance& inst, const std::string& selection) {
  if (static_cast<int>(selection.size()) != inst.item_count())
    throw ValidationError("evaluate: selection length does not match item count");
  return evaluate(inst, mask_from_selection(selection));
}

OracleResult brute_force(const KnapsackInstance& inst) {
  validate(inst);
  const int m = inst.item_count();
  if (m > 24) throw ValidationError("brute_force: enumeration guarded at m <= 24");

  OracleResult r;
  r.m = m;
  const std::uint32_t n = std::uint32_t{1} << m;
  r.value_of.resize(n);
  r.weight_of.resize(n);
  r.feasible.assign(n, 0);
  r.best_value = 0;

  for (std::uint32_t mask = 0; mask < n; ++mask) {
    const Evaluation e = evaluate(inst, mask);
    r.value_of[mask] = static_cast<int>(e.value);
    r.weight_of[mask] = static_cast<int>(e.weight);
    if (e.feasible) {
      r.feasible[mask] = 1;
      ++r.feasible_count;
      if (e.value > r.best_value) r.best_value = e.value;
    }
  }
  for (std::uint32_t mask = 0; mask < n; ++mask)
    if (r.feasible[mask] && r.value_of[mask] == r.best_value) r.best_masks.push_back(mask);
  return r;
}

bool OracleResult::is_best(std::uint32_t mask) const {
  return std::find(best_masks.begin(), best_masks.end(), mask) != best_masks.end();
}

std::vector<std::string> OracleResult::best_selections() const {
  std::vector<std::string> out;
  for (auto mask : best_masks) out.push_back(selection_from_mask(mask, m));
  return out;
}

long OracleResult::value_of_selection(const std::string& s) const {
  return value_of[mask_from_selection(s)];
}

long OracleResult::weight_of_selection(const std::string& s) const {
  return weight_of[mask_from_selection(s)];
}

void write_instance(std::ostream& os, const KnapsackInstance& inst) {
  os << inst.item_count() << ' ' << inst.capacity << '\n';
  for (int i = 0; i < inst.item_count(); ++i)
    os << inst.weights[i] << (i + 1 < inst.item_count() ? ' ' : '\n');
  for (int i = 0; i < inst.item_count(); ++i)
    os << inst.values[i] << (i + 1 < inst.item_count() ? ' ' : '\n');
}

KnapsackInstance read_instance(std::istream& is) {
  int m = 0;
  KnapsackInstance inst;
  if (!(is >> m >> inst.capacity)) throw IoError("instance: failed to read header line");
  if (m < 1) throw IoError("instance: invalid item count");
  inst.weights.resize(m);
  inst.values.resize(m);
  for (int i = 0; i < m; ++i)
    if (!(is >> inst.weights[i])) throw IoError("instance: failed to read weights");
  for (int i = 0; i < m; ++i)
    if (!(is >> inst.values[i])) throw IoError("instance: failed to read values");
  validate(inst);
  return inst;
}

void write_instance_file(const std::string& path, const KnapsackInstance& inst) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_instance(os, inst);
  if (!os) throw IoError("write failed: " + path);
}

KnapsackInstance read_instance_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  return read_instance(is);
}

}  // namespace knapq
