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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "knapq/harness.hpp"
#include "knapq/svg.hpp"

namespace knapq {

namespace {

struct Stats {
  double mean = 0, stddev = 0, q25 = 0, q75 = 0;
  long count = 0;
};

// Quartiles with linear interpolation between order statistics.
double quantile(std::vector<double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - std::floor(pos);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

Stats make_stats(std::vector<double> values) {
  values.erase(std::remove_if(values.begin(), values.end(),
                              [](double v) { return std::isnan(v); }),
               values.end());
  Stats s;
  s.count = static_cast<long>(values.size());
  if (values.empty()) {
    s.mean = s.stddev = s.q25 = s.q75 = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double var = 0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.stddev = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
  std::sort(values.begin(), values.end());
  s.q25 = quantile(values, 0.25);
  s.q75 = quantile(values, 0.75);
  return s;
}

struct MetricDef {
  const char* name;
  double (*get)(const RunRecord&);
};

const MetricDef kMetrics[] = {
    {"p_best", [](const RunRecord& r) { return r.p_best; }},
    {"feasibility_ratio", [](const RunRecord& r) { return r.feasibility_ratio; }},
    {"avg_performance", [](const RunRecord& r) { return r.avg_performance; }},
    {"nfev", [](const RunRecord& r) { return static_cast<double>(r.nfev); }},
    {"wall_time_ms", [](const RunRecord& r) { return r.wall_time_ms; }},
    {"n_ancilla", [](const RunRecord& r) { return static_cast<double>(r.n_ancilla); }},
    {"n_qubits", [](const RunRecord& r) { return static_cast<double>(r.n_qubits); }},
    {"two_qubit_gates_per_layer",
     [](const RunRecord& r) { return static_cast<double>(r.two_qubit_gates_per_layer); }},
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

using CellKey = std::tuple<std::string, int, int>;  // method, m, p

std::map<CellKey, std::vector<const RunRecord*>> group_cells(
    const std::vector<RunRecord>& records) {
  std::map<CellKey, std::vector<const RunRecord*>> cells;
  for (const auto& r : records) cells[{r.method, r.m, r.p}].push_back(&r);
  return cells;
}

Stats cell_stats(const std::vector<const RunRecord*>& cell, const MetricDef& metric) {
  std::vector<double> values;
  values.reserve(cell.size());
  for (const auto* r : cell) values.push_back(metric.get(*r));
  return make_stats(std::move(values));
}

void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& written) {
  std::ofstream os(path);
  if (!os) throw IoError("emit_report: cannot open for writing: " + path);
  os << content;
  if (!os) throw IoError("emit_report: write failed: " + path);
  written.push_back(path);
}

}  // namespace

std::vector<std::string> emit_report(const std::vector<RunRecord>& records,
                                     const std::string& out_dir) {
  if (records.empty()) throw ValidationError("emit_report: no records");
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;

  const auto cells = group_cells(records);

  // Aggregate CSV: one row per (cell, metric).
  {
    std::string csv = "method,m,p,metric,mean,std,q25,q75,count\n";
    for (const auto& [key, cell] : cells) {
      for (const auto& metric : kMetrics) {
        const auto s = cell_stats(cell, metric);
        csv += std::get<0>(key) + ',' + std::to_string(std::get<1>(key)) + ',' +
               std::to_string(std::get<2>(key)) + ',' + metric.name + ',' + num(s.mean) +
               ',' + num(s.stddev) + ',' + num(s.q25) + ',' + num(s.q75) + ',' +
               std::to_string(s.count) + '\n';
      }
    }
    write_file(out_dir + "/aggregate.csv", csv, written);
  }

  std::set<std::string> methods;
  std::set<int> sizes, layer_counts;
  for (const auto& r : records) {
    methods.insert(r.method);
    sizes.insert(r.m);
    layer_counts.insert(r.p);
  }

  struct Figure {
    const char* metric;
    const char* stem;
    const char* title;
    const char* y_label;
    bool log_y;
  };
  const Figure size_figures[] = {
      {"two_qubit_gates_per_layer", "resources_two_qubit_gates",
       "Two-qubit gates per layer", "CNOT count", false},
      {"n_ancilla", "resources_ancillas", "Ancilla qubits", "qubits", false},
      {"nfev", "resources_nfev", "Optimizer evaluations", "evaluations", true},
      {"wall_time_ms", "resources_runtime", "Runtime per instance", "ms", true},
      {"p_best", "performance_pbest", "Probability of a best feasible solution",
       "P_B", false},
      {"feasibility_ratio", "performance_feasibility", "Feasibility ratio", "F", false},
      {"avg_performance", "performance_avg_value", "Average performance", "V", false},
  };
  const Figure layer_figures[] = {
      {"p_best", "layers_pbest", "Probability of a best feasible solution", "P_B", false},
      {"feasibility_ratio", "layers_feasibility", "Feasibility ratio", "F", false},
      {"avg_performance", "layers_avg_value", "Average performance", "V", false},
      {"nfev", "layers_nfev", "Optimizer evaluations", "evaluations", true},
  };

  auto metric_by_name = [](const std::string& name) -> const MetricDef& {
    for (const auto& m : kMetrics)
      if (name == m.name) return m;
    throw ValidationError("emit_report: unknown metric " + name);
  };

  // Per-size figures, one file per layer count.
  for (int p : layer_counts) {
    for (const auto& fig : size_figures) {
      const auto& metric = metric_by_name(fig.metric);
      std::vector<svg::Series> series;
      for (const auto& method : methods) {
        svg::Series s;
        s.label = method;
        for (int m : sizes) {
          const auto it = cells.find({method, m, p});
          if (it == cells.end()) continue;
          const auto stats = cell_stats(it->second, metric);
          if (std::isnan(stats.mean)) continue;
          s.x.push_back(m);
          s.mean.push_back(stats.mean);
          s.lo.push_back(stats.q25);
          s.hi.push_back(stats.q75);
        }
        if (!s.x.empty()) series.push_back(std::move(s));
      }
      if (series.empty()) continue;
      svg::PlotSpec spec;
      spec.title = std::string(fig.title) + " (p = " + std::to_string(p) + ")";
      spec.x_label = "problem size m";
      spec.y_label = fig.y_label;
      spec.log_y = fig.log_y;
      std::string path = out_dir + "/" + fig.stem;
      if (layer_counts.size() > 1) path += "_p" + std::to_string(p);
      path += ".svg";
      write_file(path, svg::render_line_plot(spec, series), written);
    }
  }

  // Per-layer figures when the sweep varied p.
  if (layer_counts.size() > 1) {
    for (int m : sizes) {
      for (const auto& fig : layer_figures) {
        const auto& metric = metric_by_name(fig.metric);
        std::vector<svg::Series> series;
        for (const auto& method : methods) {
          svg::Series s;
          s.label = method;
          for (int p : layer_counts) {
            const auto it = cells.find({method, m, p});
            if (it == cells.end()) continue;
            const auto stats = cell_stats(it->second, metric);
            if (std::isnan(stats.mean)) continue;
            s.x.push_back(p);
            s.mean.push_back(stats.mean);
            s.lo.push_back(stats.q25);
            s.hi.push_back(stats.q75);
          }
          if (!s.x.empty()) series.push_back(std::move(s));
        }
        if (series.empty()) continue;
        svg::PlotSpec spec;
        spec.title = std::string(fig.title) + " (m = " + std::to_string(m) + ")";
        spec.x_label = "layers p";
        spec.y_label = fig.y_label;
        spec.log_y = fig.log_y;
        write_file(out_dir + "/" + fig.stem + "_m" + std::to_string(m) + ".svg",
                   svg::render_line_plot(spec, series), written);
      }
    }
  }

  return written;
}

}  // namespace knapq
