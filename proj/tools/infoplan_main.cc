// Copyright 2026 The Authors.
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


// infoplan: run scenario experiments, sweeps, the verification suite and
// trace audits.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infoplan/bench/config.h"
#include "infoplan/bench/experiment.h"
#include "infoplan/bench/verify.h"
#include "infoplan/dls.h"
#include "infoplan/errors.h"

namespace infoplan::bench {
namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> trials;
  bool lazy = false, no_lazy = false, warm = false, no_warm = false;
  std::optional<double> downsample;
  std::optional<std::string> cd_order;
  std::optional<std::string> schedule;
  bool no_runtime = false;
  bool traces = false;
  bool quiet = false;
};

void AddCommon(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Base seed (overrides the config)");
  cmd->add_option("--out", o.out, "Output directory (overrides INFOPLAN_OUT_DIR and the config)");
  cmd->add_option("--trials", o.trials, "Trials per sweep point")->check(CLI::PositiveNumber);
  auto* lazy = cmd->add_flag("--lazy", o.lazy, "Lazy search for every DLS variant");
  cmd->add_flag("--no-lazy", o.no_lazy, "Naive search for every DLS variant")->excludes(lazy);
  auto* warm = cmd->add_flag("--warm", o.warm, "Greedy warm start for every DLS variant");
  cmd->add_flag("--no-warm", o.no_warm, "No warm start for any DLS variant")->excludes(warm);
  cmd->add_option("--downsample", o.downsample,
                  "Fraction of each robot's best trajectories given to DLS")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--cd-order", o.cd_order, "CD planning order")
      ->check(CLI::IsMember({"cheap-first", "expensive-first"}));
  cmd->add_option("--schedule", o.schedule, "DLS schedule")
      ->check(CLI::IsMember({"canonical", "concurrent"}));
  cmd->add_flag("--no-runtime", o.no_runtime, "Write 0 for runtime_s (byte-stable output)");
  cmd->add_flag("--traces", o.traces, "Write DLS message traces (JSON Lines)");
  cmd->add_flag("-q,--quiet", o.quiet, "No progress output");
}

void Apply(const Overrides& o, ScenarioConfig& cfg) {
  if (o.seed) cfg.seed = *o.seed;
  if (o.trials) cfg.trials = *o.trials;
  if (o.traces) cfg.traces = true;
  if (o.schedule) {
    cfg.schedule = *o.schedule == "canonical" ? Schedule::kCanonical : Schedule::kConcurrent;
  }
  if (o.downsample && !(*o.downsample > 0.0)) {
    throw ConfigError("--downsample", 0, "must be in (0, 1]", "flags");
  }
  std::vector<Variant> out;
  for (Variant v : cfg.variants) {
    if (v.solver == SolverKind::kDls) {
      if (o.lazy) v.lazy = true;
      if (o.no_lazy) v.lazy = false;
      if (o.warm) v.warm = true;
      if (o.no_warm) v.warm = false;
      if (o.downsample) v.downsample = *o.downsample;
      if (o.schedule) v.schedule.reset();
    }
    if (v.solver == SolverKind::kCd && o.cd_order) v.cheap_first = *o.cd_order == "cheap-first";
    bool dup = false;
    for (const Variant& u : out) dup = dup || u.Name() == v.Name();
    if (!dup) out.push_back(v);
  }
  cfg.variants = std::move(out);
}

double RoundSweep(double v) { return std::round(v * 1e9) / 1e9; }

// "a..b" (integer step 1), "a..b:step" or "x,y,z".
std::vector<double> ParseList(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  try {
    const size_t dots = text.find("..");
    if (dots == std::string::npos) {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    } else {
      const double lo = std::stod(text.substr(0, dots));
      std::string rest = text.substr(dots + 2);
      double step = 1.0;
      if (const size_t colon = rest.find(':'); colon != std::string::npos) {
        step = std::stod(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
      }
      const double hi = std::stod(rest);
      if (!(step > 0)) throw std::invalid_argument("step");
      for (int k = 0;; ++k) {
        const double v = RoundSweep(lo + k * step);
        if (v > hi + 1e-9) break;
        out.push_back(v);
      }
    }
  } catch (const std::exception&) {
    throw ConfigError(flag, 0, "cannot parse '" + text + "'", "flags");
  }
  if (out.empty()) throw ConfigError(flag, 0, "empty list", "flags");
  return out;
}

int RunAndWrite(ScenarioConfig cfg, const Overrides& o) {
  Apply(o, cfg);
  ValidateConfig(cfg);
  const std::string dir = o.out ? *o.out : OutputDir(cfg);
  cfg.out_dir = dir;
  if (o.out) setenv("INFOPLAN_OUT_DIR", dir.c_str(), 1);
  ExperimentOptions eo;
  eo.record_runtime = !o.no_runtime;
  eo.progress = o.quiet ? nullptr : &std::cerr;
  const auto records = RunExperiment(cfg, eo);
  for (const std::string& path : WriteOutputs(cfg, dir, records)) {
    if (!o.quiet) std::cerr << "wrote " << path << "\n";
  }
  return 0;
}

int Replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  TraceHeader header;
  std::vector<TraceRecord> records;
  ReadTrace(in, header, records);
  const TraceAudit audit = AuditTrace(header, records);
  if (!audit.error.empty()) {
    std::cout << "FAIL " << path << ": " << audit.error << "\n";
    return 1;
  }
  std::cout << "OK " << path << ": " << audit.broadcasts << " broadcasts, " << audit.commits
            << " commits, " << audit.round_ends.size() << " round(s), best g = "
            << audit.best_g << "\n";
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Multi-robot sensing trajectory planning experiments"};
  app.require_subcommand(1);

  Overrides run_o;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("--config", run_o.config, "YAML scenario config")->required()->check(CLI::ExistingFile);
  AddCommon(run, run_o);

  Overrides sweep_o;
  int scenario = 1;
  std::string robots, weights;
  auto* sweep = app.add_subcommand("sweep", "Sweep robot count (scenario 1) or weight r (scenario 2)");
  sweep->add_option("--scenario", scenario, "Scenario 1 or 2")->check(CLI::IsMember({1, 2}));
  sweep->add_option("--robots", robots, "Robot counts, e.g. 2..6 or 2,4,6");
  sweep->add_option("--weights", weights, "Weights, e.g. 0..0.5:0.1 or 0,0.25,0.5");
  sweep->add_option("--config", sweep_o.config, "YAML config to start from")->check(CLI::ExistingFile);
  AddCommon(sweep, sweep_o);

  auto* verify = app.add_subcommand("verify", "Run guarantee and property checks on random small instances");

  std::string trace_path;
  auto* replay = app.add_subcommand("replay", "Audit a DLS message trace");
  replay->add_option("--trace", trace_path, "Trace file (JSON Lines)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  try {
    if (*run) return RunAndWrite(LoadConfig(run_o.config), run_o);
    if (*sweep) {
      ScenarioConfig cfg;
      if (!sweep_o.config.empty()) {
        cfg = LoadConfig(sweep_o.config);
        if (sweep->count("--scenario") && cfg.scenario != scenario) {
          throw ConfigError("--scenario", 0, "does not match the config's scenario", "flags");
        }
      } else {
        cfg = scenario == 1 ? DefaultScenario1() : DefaultScenario2();
      }
      if (!robots.empty()) {
        if (cfg.scenario != 1) throw ConfigError("--robots", 0, "scenario 1 only", "flags");
        cfg.sweep = ParseList(robots, "--robots");
      }
      if (!weights.empty()) {
        if (cfg.scenario != 2) throw ConfigError("--weights", 0, "scenario 2 only", "flags");
        cfg.sweep = ParseList(weights, "--weights");
      }
      return RunAndWrite(cfg, sweep_o);
    }
    if (*verify) {
      const std::vector<CheckResult> results = RunVerify(&std::cout);
      for (const CheckResult& r : results) {
        if (!r.pass) return 1;
      }
      return 0;
    }
    if (*replay) return Replay(trace_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace
}  // namespace infoplan::bench

int main(int argc, char** argv) { return infoplan::bench::Main(argc, argv); }
