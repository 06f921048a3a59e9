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

#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include "knapq/harness.hpp"
#include "knapq/metrics.hpp"
#include "knapq/reduced.hpp"

namespace {

using namespace knapq;

// String-valued mirror of ExperimentConfig for CLI11 binding; converted (and
// validated) after parsing.
struct CliOptions {
  ExperimentConfig cfg;
  std::vector<std::string> methods = {"qubo", "dephasing", "zeno"};
  std::string penal_mode = "flat";
  std::string slack_convention = "compact";
  std::string eval = "reduced";
};

void add_experiment_options(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--methods", o.methods, "encodings to run (qubo,dephasing,zeno)")
      ->delimiter(',');
  cmd->add_option("--sizes", o.cfg.sizes, "problem sizes m")->delimiter(',');
  cmd->add_option("--layers", o.cfg.layers, "ansatz layer counts p")->delimiter(',');
  cmd->add_option("--instances", o.cfg.instances_per_cell, "instances per cell");
  cmd->add_option("--seed", o.cfg.seed, "master seed");
  cmd->add_option("--P", o.cfg.penalty, "qubo penalty multiplier");
  cmd->add_option("--alpha", o.cfg.alpha, "dephasing penalty strength");
  cmd->add_option("--penal-mode", o.penal_mode, "flat | proportional");
  cmd->add_flag("--penal-fixed-angle", o.cfg.penal_fixed_angle,
                "apply alpha as a raw angle instead of alpha*gamma");
  cmd->add_option("--slack-convention", o.slack_convention, "compact | paper");
  cmd->add_option("--backend", o.cfg.backend,
                  "auto | statevector | density | trajectory | ensemble");
  cmd->add_option("--shots", o.cfg.shots, "samples per distribution (0 = exact)");
  cmd->add_option("--restarts", o.cfg.restarts, "optimizer multistart count");
  cmd->add_option("--max-iters", o.cfg.max_iterations, "optimizer iterations per restart");
  cmd->add_option("--tolerance", o.cfg.tolerance, "optimizer simplex tolerance");
  cmd->add_option("--initial-step", o.cfg.initial_step, "optimizer initial step");
  cmd->add_option("--eval", o.eval, "circuit | reduced objective evaluation");
  cmd->add_option("--w-max", o.cfg.w_max, "maximum item weight");
  cmd->add_option("--v-max", o.cfg.v_max, "maximum item value");
  cmd->add_option("--tightness", o.cfg.tightness, "capacity / total weight ratio");
  cmd->add_option("--out", o.cfg.output_dir, "output directory");
  cmd->add_option("--threads", o.cfg.threads, "worker threads (0 = KNAPQ_THREADS or 1)");
}

ExperimentConfig finalize(const CliOptions& o) {
  ExperimentConfig cfg = o.cfg;
  cfg.methods.clear();
  for (const auto& name : o.methods) cfg.methods.push_back(parse_method(name));
  cfg.penal_mode = parse_penal_mode(o.penal_mode);
  cfg.slack = parse_slack_convention(o.slack_convention);
  cfg.eval = parse_eval_mode(o.eval);
  return cfg;
}

void write_config_echo(const ExperimentConfig& cfg, const std::vector<std::string>& methods,
                       const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path);
  os << "methods=";
  for (std::size_t i = 0; i < methods.size(); ++i) os << (i ? "," : "") << methods[i];
  os << "\nsizes=";
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) os << (i ? "," : "") << cfg.sizes[i];
  os << "\nlayers=";
  for (std::size_t i = 0; i < cfg.layers.size(); ++i) os << (i ? "," : "") << cfg.layers[i];
  os << "\ninstances=" << cfg.instances_per_cell << "\nseed=" << cfg.seed
     << "\nP=" << cfg.penalty << "\nalpha=" << cfg.alpha
     << "\npenal-mode=" << penal_mode_name(cfg.penal_mode)
     << "\npenal-fixed-angle=" << (cfg.penal_fixed_angle ? "true" : "false")
     << "\nslack-convention=" << slack_convention_name(cfg.slack)
     << "\nbackend=" << cfg.backend << "\nshots=" << cfg.shots
     << "\nrestarts=" << cfg.restarts << "\nmax-iters=" << cfg.max_iterations
     << "\ntolerance=" << cfg.tolerance << "\ninitial-step=" << cfg.initial_step
     << "\neval=" << eval_mode_name(cfg.eval) << "\nw-max=" << cfg.w_max
     << "\nv-max=" << cfg.v_max << "\ntightness=" << cfg.tightness << "\n";
}

void print_record(const RunRecord& r) {
  std::cout << "method                     = " << r.method << '\n'
            << "m                          = " << r.m << '\n'
            << "p                          = " << r.p << '\n'
            << "instance_seed              = " << r.instance_seed << '\n'
            << "nfev                       = " << r.nfev << '\n'
            << "wall_time_ms               = " << r.wall_time_ms << '\n'
            << "p_best                     = " << r.p_best << '\n'
            << "feasibility_ratio          = " << r.feasibility_ratio << '\n'
            << "avg_performance            = " << r.avg_performance << '\n'
            << "n_qubits                   = " << r.n_qubits << '\n'
            << "n_ancilla                  = " << r.n_ancilla << '\n'
            << "two_qubit_gates_per_layer  = " << r.two_qubit_gates_per_layer << '\n';
}

int cmd_gen(std::uint64_t seed, int m, int count, const std::string& out_dir, int w_max,
            int v_max, double tightness) {
  std::filesystem::create_directories(out_dir);
  for (int k = 0; k < count; ++k) {
    const auto inst_seed = derive_seed(seed, {static_cast<std::uint64_t>(m),
                                              static_cast<std::uint64_t>(k)});
    const auto inst = generate(inst_seed, m, w_max, v_max, tightness);
    const auto path =
        out_dir + "/instance_m" + std::to_string(m) + "_" + std::to_string(k) + ".txt";
    write_instance_file(path, inst);
    std::cout << path << '\n';
  }
  return 0;
}

int cmd_run(const CliOptions& options, const std::string& method_name_str, int m, int p,
            int instance_index, const std::string& instance_path) {
  ExperimentConfig cfg = finalize(options);
  const MethodTag tag = parse_method(method_name_str);
  cfg.methods = {tag};
  validate(cfg);

  RunRecord rec;
  if (!instance_path.empty()) {
    const auto inst = read_instance_file(instance_path);
    rec = run_single(cfg, tag, inst, p, cfg.seed);
  } else {
    rec = run_cell(cfg, tag, m, p, instance_index);
  }
  print_record(rec);
  return 0;
}

int cmd_sweep(const CliOptions& options) {
  const ExperimentConfig cfg = finalize(options);
  validate(cfg);
  std::filesystem::create_directories(cfg.output_dir);

  const auto t0 = std::chrono::steady_clock::now();
  const auto records = run_experiment(cfg);
  const auto seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto csv_path = cfg.output_dir + "/runs.csv";
  emit_csv(records, csv_path);
  write_config_echo(cfg, options.methods, cfg.output_dir + "/config_used.txt");
  const auto files = emit_report(records, cfg.output_dir);

  std::cout << records.size() << " rows in " << seconds << " s\n" << csv_path << '\n';
  for (const auto& f : files) std::cout << f << '\n';
  return 0;
}

int cmd_report(const std::string& csv_path, const std::string& out_dir) {
  const auto records = read_csv(csv_path);
  if (records.empty()) throw IoError("report: no records in " + csv_path);
  const auto files = emit_report(records, out_dir.empty()
                                              ? std::filesystem::path(csv_path)
                                                    .parent_path()
                                                    .string()
                                              : out_dir);
  for (const auto& f : files) std::cout << f << '\n';
  return 0;
}

int cmd_selftest(std::uint64_t seed) {
  int failures = 0;
  auto check = [&failures](bool ok, const std::string& what) {
    std::cout << (ok ? "ok:   " : "FAIL: ") << what << '\n';
    if (!ok) ++failures;
  };

  for (std::uint64_t s = seed; s < seed + 3; ++s) {
    const auto inst = generate(s, 3);
    const auto oracle = brute_force(inst);
    const auto plan = RegisterPlan::for_instance(inst);

    // Weight adder and comparator against the brute-force oracle.
    const auto circuit = compose(adder(inst, plan), test_block(inst.capacity, plan));
    bool add_ok = true, test_ok = true;
    for (std::uint32_t xmask = 0; xmask < 8 && (add_ok || test_ok); ++xmask) {
      auto state = init_state(plan.total_qubits(), {}, StateBackend::Statevector);
      for (int q = 0; q < 3; ++q)
        if (xmask >> q & 1u) state.apply(x(q));
      auto out = run(circuit, state);
      Index imax = 0;
      out.amplitudes().cwiseAbs().maxCoeff(&imax);
      const auto weight = (imax >> plan.weight_begin) & ((Index{1} << plan.weight_count) - 1);
      const auto flag = imax >> plan.flag & 1;
      if (weight != oracle.weight_of[xmask]) add_ok = false;
      if (flag != (oracle.is_feasible(xmask) ? 0 : 1)) test_ok = false;
    }
    check(add_ok, "adder matches oracle weights (seed " + std::to_string(s) + ")");
    check(test_ok, "comparator matches oracle feasibility (seed " + std::to_string(s) + ")");

    // Quadratization ground state under a dominant penalty.
    const auto model = build_qubo(inst, 2.0 * static_cast<double>(inst.total_value()));
    const auto table = ising_energy_table(model);
    Index argmin = 0;
    const double emin = table.minCoeff(&argmin);
    const auto best_mask = static_cast<std::uint32_t>(argmin) & 7u;
    check(oracle.is_best(best_mask) && emin == -double(oracle.best_value),
          "qubo ground state encodes the optimum (seed " + std::to_string(s) + ")");

    // Reduced evaluators against full circuit simulations.
    AnsatzParams params(Eigen::Vector2d(0.4 + 0.1 * double(s - seed), 0.9),
                        Eigen::Vector2d(0.3, 0.7));
    const auto deph_ansatz = build_ansatz(inst, EncodingMethod::dephasing(), params);
    auto deph_out =
        run(deph_ansatz, init_state(deph_ansatz.n_qubits, {}, StateBackend::Statevector));
    std::vector<int> data_reg = {0, 1, 2};
    const auto deph_full = probabilities(deph_out, std::span<const int>(data_reg));
    const auto deph_fast = reduced_dephasing_distribution(inst, params, 10000.0);
    check((deph_full - deph_fast).cwiseAbs().maxCoeff() < 1e-9,
          "reduced dephasing matches the circuit (seed " + std::to_string(s) + ")");

    const auto zeno_ansatz = build_ansatz(inst, EncodingMethod::zeno(), params);
    auto zeno_out =
        run(zeno_ansatz, init_state(zeno_ansatz.n_qubits, {}, StateBackend::Ensemble));
    const auto zeno_full = probabilities(zeno_out, std::span<const int>(data_reg));
    const auto zeno_fast = reduced_zeno_distribution(inst, params);
    check((zeno_full - zeno_fast).cwiseAbs().maxCoeff() < 1e-9,
          "reduced zeno matches the circuit (seed " + std::to_string(s) + ")");
  }

  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knapq: comparing QUBO, penalty-dephasing, and Zeno constraint "
               "encodings for QAOA on knapsack problems"};
  app.require_subcommand(1);
  std::function<int()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "write random instance files");
  struct {
    std::uint64_t seed = 0;
    int m = 4, count = 10, w_max = 10, v_max = 10;
    double tightness = 0.5;
    std::string out = "instances";
  } gen_opts;
  gen->add_option("--seed", gen_opts.seed, "base seed");
  gen->add_option("--m", gen_opts.m, "items per instance");
  gen->add_option("--count", gen_opts.count, "number of instances");
  gen->add_option("--w-max", gen_opts.w_max, "maximum weight");
  gen->add_option("--v-max", gen_opts.v_max, "maximum value");
  gen->add_option("--tightness", gen_opts.tightness, "capacity ratio");
  gen->add_option("--out", gen_opts.out, "output directory");
  gen->callback([&] {
    action = [&] {
      return cmd_gen(gen_opts.seed, gen_opts.m, gen_opts.count, gen_opts.out,
                     gen_opts.w_max, gen_opts.v_max, gen_opts.tightness);
    };
  });

  // run
  auto* run_cmd = app.add_subcommand("run", "benchmark one (method, instance, p) cell");
  static CliOptions run_options;
  struct {
    std::string method = "qubo";
    int m = 3, p = 5, instance_index = 0;
    std::string instance_path;
  } run_opts;
  run_cmd->add_option("--method", run_opts.method, "qubo | dephasing | zeno")->required();
  run_cmd->add_option("--m", run_opts.m, "problem size (generated instance)");
  run_cmd->add_option("--p", run_opts.p, "ansatz layers");
  run_cmd->add_option("--instance-index", run_opts.instance_index, "index within the cell");
  run_cmd->add_option("--instance", run_opts.instance_path, "instance file to load");
  add_experiment_options(run_cmd, run_options);
  run_cmd->callback([&] {
    action = [&] {
      return cmd_run(run_options, run_opts.method, run_opts.m, run_opts.p,
                     run_opts.instance_index, run_opts.instance_path);
    };
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "full benchmark sweep with reports");
  static CliOptions sweep_options;
  add_experiment_options(sweep, sweep_options);
  sweep->set_config("--config", "", "key=value file; command-line flags win");
  sweep->callback([&] {
    action = [&] { return cmd_sweep(sweep_options); };
  });

  // report
  auto* report = app.add_subcommand("report", "aggregate a runs.csv into plots");
  struct {
    std::string csv;
    std::string out;
  } report_opts;
  report->add_option("csv", report_opts.csv, "input runs.csv")->required();
  report->add_option("--out", report_opts.out, "output directory (default: beside the csv)");
  report->callback([&] {
    action = [&] { return cmd_report(report_opts.csv, report_opts.out); };
  });

  // selftest
  auto* selftest = app.add_subcommand("selftest", "oracle-vs-circuit consistency checks");
  static std::uint64_t selftest_seed = 1;
  selftest->add_option("--seed", selftest_seed, "base seed");
  selftest->callback([&] {
    action = [&] { return cmd_selftest(selftest_seed); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << '\n';
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const knapq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
