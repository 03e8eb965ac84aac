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


#include "infoplan/bench/experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "infoplan/bench/plot.h"
#include "infoplan/central.h"
#include "infoplan/errors.h"

namespace infoplan::bench {
namespace {

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string Hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string TracePath(const ScenarioConfig& cfg, const std::string& dir, double point,
                      int trial, const Variant& v) {
  return dir + "/traces/s" + std::to_string(cfg.scenario) + "_p" + Fmt(point) + "_t" +
         std::to_string(trial) + "_" + v.Name() + ".jsonl";
}

SolverResult RunVariant(const ScenarioConfig& cfg, const Variant& v, const Problem& p,
                        CountingOracle& oracle, std::uint64_t seed, TraceWriter* trace) {
  const PartitionMatroid& m = *p.matroid;
  const World& w = p.model->world();
  switch (v.solver) {
    case SolverKind::kDls: {
      DlsOptions o;
      o.alpha = cfg.alpha;
      o.lazy = v.lazy;
      o.warm_start = v.warm;
      o.schedule = v.schedule.value_or(cfg.schedule);
      o.seed = seed;
      o.latency = cfg.latency;
      o.jitter = cfg.jitter;
      o.trace = trace;
      return Dls(m, oracle, o);
    }
    case SolverKind::kCd: {
      std::vector<int> order = CheapFirstOrder(w.robots, w.field, w.horizon);
      if (!v.cheap_first) std::reverse(order.begin(), order.end());
      return CoordinateDescent(m, oracle, order, v.lazy);
    }
    case SolverKind::kCls: {
      ClsOptions o;
      o.alpha = cfg.alpha;
      return Cls(m, oracle, o);
    }
  }
  throw ContractViolation("unknown solver");
}

}  // namespace

std::vector<TrialRecord> RunTrial(const ScenarioConfig& cfg, double point, int trial,
                                  const ExperimentOptions& opts) {
  const std::uint64_t seed = TrialSeed(cfg.seed, trial);
  const Problem full = BuildProblem(BuildWorld(cfg, point, seed), cfg.trajgen);
  std::map<double, Problem> reduced;
  const std::string dir = OutputDir(cfg);

  std::vector<TrialRecord> out;
  for (const Variant& v : cfg.variants) {
    const Problem* p = &full;
    if (v.downsample < 1.0) {
      auto it = reduced.find(v.downsample);
      if (it == reduced.end()) {
        it = reduced.emplace(v.downsample, Downsampled(full, v.downsample)).first;
      }
      p = &it->second;
    }
    CountingOracle oracle(*p->objective);

    std::ofstream trace_file;
    std::unique_ptr<TraceWriter> trace;
    if (cfg.traces && v.solver == SolverKind::kDls) {
      const std::string path = TracePath(cfg, dir, point, trial, v);
      std::filesystem::create_directories(std::filesystem::path(path).parent_path());
      trace_file.open(path);
      if (!trace_file) throw ConfigError("output.dir", 0, "cannot write " + path);
      trace = std::make_unique<TraceWriter>(trace_file);
    }
    const SolverResult res = RunVariant(cfg, v, *p, oracle, seed, trace.get());

    const MatroidObjective& f = *p->objective;
    TrialRecord r;
    r.scenario = cfg.scenario;
    r.point = point;
    r.trial = trial;
    r.seed = seed;
    r.solver = std::string(SolverName(v.solver));
    r.variant = v.OptionName();
    r.j = f.Value(res.solution);
    r.g = r.j + f.Offset();
    r.mi = f.MutualInformation(res.solution);
    r.c = f.Energy(res.solution);
    r.energy_unweighted = f.UnweightedEnergy(res.solution);
    if (std::abs(r.j - (r.mi - r.c)) > 1e-9) {
      throw NumericalDomainError("J differs from MI - C by more than 1e-9");
    }
    r.oracle_calls = res.metrics.oracle_calls;
    r.oracle_calls_per_n =
        static_cast<double>(r.oracle_calls) / std::max(p->matroid->size(), 1);
    r.proposal_exchanges = res.metrics.proposal_exchanges;
    r.exchanges_no_nop = res.metrics.exchanges_without_nop();
    r.commits = res.metrics.commits;
    r.runtime_s = opts.record_runtime ? res.metrics.runtime_s : 0.0;
    r.traj_set_hash = p->matroid->Hash();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TrialRecord> RunExperiment(const ScenarioConfig& cfg,
                                       const ExperimentOptions& opts) {
  std::vector<TrialRecord> all;
  for (double point : cfg.sweep) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      auto recs = RunTrial(cfg, point, trial, opts);
      all.insert(all.end(), recs.begin(), recs.end());
    }
    if (opts.progress) {
      *opts.progress << "scenario " << cfg.scenario << " point " << Fmt(point) << ": "
                     << cfg.trials << " trials done\n";
    }
  }
  return all;
}

Stat MeanStd(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

std::vector<AggregateRow> Aggregate(const std::vector<TrialRecord>& records) {
  std::vector<AggregateRow> rows;
  std::vector<std::vector<const TrialRecord*>> groups;
  for (const TrialRecord& r : records) {
    size_t k = 0;
    for (; k < rows.size(); ++k) {
      const AggregateRow& a = rows[k];
      if (a.scenario == r.scenario && a.point == r.point && a.solver == r.solver &&
          a.variant == r.variant) {
        break;
      }
    }
    if (k == rows.size()) {
      AggregateRow a;
      a.scenario = r.scenario;
      a.point = r.point;
      a.solver = r.solver;
      a.variant = r.variant;
      rows.push_back(a);
      groups.emplace_back();
    }
    groups[k].push_back(&r);
  }
  for (size_t k = 0; k < rows.size(); ++k) {
    AggregateRow& a = rows[k];
    const auto& g = groups[k];
    a.trials = static_cast<int>(g.size());
    auto stat = [&](auto field) {
      std::vector<double> xs;
      for (const TrialRecord* r : g) xs.push_back(static_cast<double>(field(*r)));
      return MeanStd(xs);
    };
    a.g = stat([](const TrialRecord& r) { return r.g; });
    a.j = stat([](const TrialRecord& r) { return r.j; });
    a.mi = stat([](const TrialRecord& r) { return r.mi; });
    a.c = stat([](const TrialRecord& r) { return r.c; });
    a.energy_unweighted = stat([](const TrialRecord& r) { return r.energy_unweighted; });
    a.oracle_calls = stat([](const TrialRecord& r) { return r.oracle_calls; });
    a.oracle_calls_per_n = stat([](const TrialRecord& r) { return r.oracle_calls_per_n; });
    a.proposal_exchanges = stat([](const TrialRecord& r) { return r.proposal_exchanges; });
    a.exchanges_no_nop = stat([](const TrialRecord& r) { return r.exchanges_no_nop; });
    a.commits = stat([](const TrialRecord& r) { return r.commits; });
    a.runtime_s = stat([](const TrialRecord& r) { return r.runtime_s; });
  }
  return rows;
}

void WriteTrialCsv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "scenario,n_or_r,trial,solver,variant,g,J,MI,C,oracle_calls,oracle_calls_per_N,"
         "proposal_exchanges,runtime_s,traj_set_hash,proposal_exchanges_no_nop,"
         "energy_unweighted,commits\n";
  for (const TrialRecord& r : records) {
    out << r.scenario << ',' << Fmt(r.point) << ',' << r.trial << ',' << r.solver << ','
        << r.variant << ',' << Fmt(r.g) << ',' << Fmt(r.j) << ',' << Fmt(r.mi) << ','
        << Fmt(r.c) << ',' << r.oracle_calls << ',' << Fmt(r.oracle_calls_per_n) << ','
        << r.proposal_exchanges << ',' << Fmt(r.runtime_s) << ',' << Hex(r.traj_set_hash)
        << ',' << r.exchanges_no_nop << ',' << Fmt(r.energy_unweighted) << ','
        << r.commits << '\n';
  }
}

void WriteAggregateCsv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  static const char* const kMetrics[] = {
      "g", "J", "MI", "C", "energy_unweighted", "oracle_calls", "oracle_calls_per_N",
      "proposal_exchanges", "proposal_exchanges_no_nop", "commits", "runtime_s"};
  out << "scenario,n_or_r,solver,variant,trials";
  for (const char* m : kMetrics) out << ",mean_" << m << ",std_" << m;
  out << '\n';
  for (const AggregateRow& a : rows) {
    out << a.scenario << ',' << Fmt(a.point) << ',' << a.solver << ',' << a.variant << ','
        << a.trials;
    for (const Stat* s : {&a.g, &a.j, &a.mi, &a.c, &a.energy_unweighted, &a.oracle_calls,
                          &a.oracle_calls_per_n, &a.proposal_exchanges,
                          &a.exchanges_no_nop, &a.commits, &a.runtime_s}) {
      out << ',' << Fmt(s->mean) << ',' << Fmt(s->std);
    }
    out << '\n';
  }
}

namespace {

// One series per solver/variant with y = metric mean against the sweep point.
Chart SweepChart(const std::vector<AggregateRow>& rows, const std::string& title,
                 const std::string& x_label, const std::string& y_label,
                 Stat AggregateRow::*metric) {
  Chart chart{title, x_label, y_label, {}};
  std::map<std::string, size_t> index;
  for (const AggregateRow& a : rows) {
    const std::string label = a.solver + "_" + a.variant;
    auto [it, fresh] = index.emplace(label, chart.series.size());
    if (fresh) chart.series.push_back(Series{label, {}, {}, {}, {}});
    Series& s = chart.series[it->second];
    s.x.push_back(a.point);
    s.y.push_back((a.*metric).mean);
    s.err.push_back((a.*metric).std);
  }
  return chart;
}

// Mean MI against mean unweighted energy, one point per weight r.
Chart TradeoffChart(const std::vector<AggregateRow>& rows) {
  Chart chart{"Information vs. energy", "energy C/r (unweighted)", "mutual information", {}};
  std::map<std::string, size_t> index;
  for (const AggregateRow& a : rows) {
    const std::string label = a.solver + "_" + a.variant;
    auto [it, fresh] = index.emplace(label, chart.series.size());
    if (fresh) chart.series.push_back(Series{label, {}, {}, {}, {}});
    Series& s = chart.series[it->second];
    s.x.push_back(a.energy_unweighted.mean);
    s.y.push_back(a.mi.mean);
    s.point_labels.push_back("r=" + Fmt(a.point));
  }
  return chart;
}

void WriteFile(const std::string& path, const std::string& text,
               std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("output.dir", 0, "cannot write " + path);
  out << text;
  written.push_back(path);
}

}  // namespace

std::vector<std::string> WriteOutputs(const ScenarioConfig& cfg, const std::string& dir,
                                      const std::vector<TrialRecord>& records) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  std::ostringstream trials, agg;
  WriteTrialCsv(trials, records);
  const auto rows = Aggregate(records);
  WriteAggregateCsv(agg, rows);
  WriteFile(dir + "/trials.csv", trials.str(), written);
  WriteFile(dir + "/aggregate.csv", agg.str(), written);
  if (!cfg.plots) return written;
  const std::string x = cfg.scenario == 1 ? "robots n" : "weight r";
  WriteFile(dir + "/objective.svg",
            RenderSvg(SweepChart(rows, "Objective g", x, "g", &AggregateRow::g)), written);
  WriteFile(dir + "/oracle_calls.svg",
            RenderSvg(SweepChart(rows, "Oracle calls per trajectory", x, "oracle calls / N",
                                 &AggregateRow::oracle_calls_per_n)),
            written);
  WriteFile(dir + "/exchanges.svg",
            RenderSvg(SweepChart(rows, "Proposal exchanges", x, "messages",
                                 &AggregateRow::proposal_exchanges)),
            written);
  if (cfg.scenario == 2) {
    WriteFile(dir + "/tradeoff.svg", RenderSvg(TradeoffChart(rows)), written);
  }
  return written;
}

std::string OutputDir(const ScenarioConfig& cfg) {
  if (const char* env = std::getenv("INFOPLAN_OUT_DIR"); env && *env) return env;
  return cfg.out_dir;
}

}  // namespace infoplan::bench
