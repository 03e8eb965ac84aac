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


// Experiment runner: trials over a sweep, per-trial and aggregate CSV.
//
// Per-trial CSV columns, in order:
//   scenario, n_or_r, trial, solver, variant, g, J, MI, C, oracle_calls,
//   oracle_calls_per_N, proposal_exchanges, runtime_s, traj_set_hash,
//   proposal_exchanges_no_nop, energy_unweighted, commits
// Aggregate CSV: scenario, n_or_r, solver, variant, trials, then mean_<m> and
// std_<m> (sample standard deviation) for every numeric metric m.

#ifndef INFOPLAN_BENCH_EXPERIMENT_H_
#define INFOPLAN_BENCH_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "infoplan/bench/scenario.h"

namespace infoplan::bench {

struct TrialRecord {
  int scenario = 1;
  double point = 0.0;  // n or r
  int trial = 0;
  std::uint64_t seed = 0;
  std::string solver;
  std::string variant;
  double g = 0.0;
  double j = 0.0;
  double mi = 0.0;
  double c = 0.0;  // weighted energy
  double energy_unweighted = 0.0;
  std::int64_t oracle_calls = 0;
  double oracle_calls_per_n = 0.0;  // over the ground set the solver ran on
  std::int64_t proposal_exchanges = 0;
  std::int64_t exchanges_no_nop = 0;
  int commits = 0;
  double runtime_s = 0.0;
  std::uint64_t traj_set_hash = 0;
};

struct ExperimentOptions {
  bool record_runtime = true;
  std::ostream* progress = nullptr;
};

// Every variant of `cfg` on one trial of one sweep point. Trajectories are
// generated once and shared by all variants.
std::vector<TrialRecord> RunTrial(const ScenarioConfig& cfg, double point, int trial,
                                  const ExperimentOptions& opts = {});

std::vector<TrialRecord> RunExperiment(const ScenarioConfig& cfg,
                                       const ExperimentOptions& opts = {});

struct Stat {
  double mean = 0.0;
  double std = 0.0;
};

struct AggregateRow {
  int scenario = 1;
  double point = 0.0;
  std::string solver;
  std::string variant;
  int trials = 0;
  Stat g, j, mi, c, energy_unweighted, oracle_calls, oracle_calls_per_n,
      proposal_exchanges, exchanges_no_nop, commits, runtime_s;
};

// One row per (scenario, point, solver, variant), in first-appearance order.
std::vector<AggregateRow> Aggregate(const std::vector<TrialRecord>& records);

Stat MeanStd(const std::vector<double>& xs);

void WriteTrialCsv(std::ostream& out, const std::vector<TrialRecord>& records);
void WriteAggregateCsv(std::ostream& out, const std::vector<AggregateRow>& rows);

// Writes trials.csv, aggregate.csv and, if cfg.plots, SVG plots to `dir`.
// Returns the files written.
std::vector<std::string> WriteOutputs(const ScenarioConfig& cfg, const std::string& dir,
                                      const std::vector<TrialRecord>& records);

// $INFOPLAN_OUT_DIR if set, else cfg.out_dir.
std::string OutputDir(const ScenarioConfig& cfg);

}  // namespace infoplan::bench

#endif  // INFOPLAN_BENCH_EXPERIMENT_H_
