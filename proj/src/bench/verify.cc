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


#include "infoplan/bench/verify.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "infoplan/bench/random_instance.h"
#include "infoplan/central.h"
#include "infoplan/dls.h"
#include "infoplan/filtering.h"

namespace infoplan::bench {
namespace {

class Check {
 public:
  explicit Check(std::string name) : start_(std::chrono::steady_clock::now()) {
    r_.name = std::move(name);
  }

  // Records the first failure only.
  void Fail(const std::string& what) {
    if (failures_++ == 0) first_ = what;
  }
  bool failed() const { return failures_ > 0; }

  CheckResult Finish(const std::string& summary) {
    r_.pass = failures_ == 0;
    r_.detail = r_.pass ? summary
                        : std::to_string(failures_) + " failure(s); first: " + first_;
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                     .count();
    return r_;
  }

 private:
  CheckResult r_;
  std::chrono::steady_clock::time_point start_;
  int failures_ = 0;
  std::string first_;
};

std::uint64_t InstanceSeed(std::uint64_t base, int k) {
  std::uint64_t s = base * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(k);
  return SplitMix64(s);
}

double GOf(const Problem& p, const SolutionSet& s) {
  return p.objective->Value(s) + p.objective->Offset();
}

Mat RandomSpd(std::mt19937_64& rng, int dim, double shift) {
  std::normal_distribution<double> normal;
  Mat a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
  }
  return a * a.transpose() + shift * Mat::Identity(dim, dim);
}

// Every admissible set of a small ground set.
std::vector<SolutionSet> AllSets(const PartitionMatroid& m) {
  std::vector<SolutionSet> out{SolutionSet(m.num_robots())};
  for (int i = 0; i < m.num_robots(); ++i) {
    const size_t k = out.size();
    for (TrajId a : m.partition(i)) {
      for (size_t j = 0; j < k; ++j) {
        SolutionSet s = out[j];
        s.Add(m, a);
        out.push_back(s);
      }
    }
  }
  return out;
}

bool Subset(const SolutionSet& a, const SolutionSet& b) {
  for (int i = 0; i < a.num_robots(); ++i) {
    if (a.has(i) && a.slot(i) != b.slot(i)) return false;
  }
  return true;
}

std::string Seeded(const std::string& what, std::uint64_t seed) {
  return what + " (instance seed " + std::to_string(seed) + ")";
}

}  // namespace

CheckResult CheckGuarantee(int instances, std::uint64_t seed) {
  Check check("guarantee");
  constexpr double kAlpha = 1.0;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < instances; ++k) {
    const std::uint64_t s = InstanceSeed(seed, k);
    const Problem p = RandomProblem(s);
    const PartitionMatroid& m = *p.matroid;
    CountingOracle oracle(*p.objective);
    const double opt = GOf(p, BruteForceOpt(m, oracle));
    const double bound = opt / (4.0 * (1.0 + kAlpha));
    auto check_one = [&](const char* name, const SolverResult& r) {
      const double g = GOf(p, r.solution);
      if (opt > 0) worst = std::min(worst, g / opt);
      if (g < bound - 1e-9) {
        check.Fail(Seeded(std::string(name) + " g=" + std::to_string(g) +
                              " below bound " + std::to_string(bound),
                          s));
      }
    };
    ClsOptions co;
    co.alpha = kAlpha;
    check_one("CLS", Cls(m, oracle, co));
    for (Schedule sched : {Schedule::kCanonical, Schedule::kConcurrent}) {
      DlsOptions o;
      o.alpha = kAlpha;
      o.schedule = sched;
      o.seed = s;
      o.lazy = k % 2 == 0;
      o.warm_start = k % 3 == 0;
      check_one("DLS", Dls(m, oracle, o));
    }
  }
  std::ostringstream summary;
  summary << instances << " instances, worst g/g* = " << worst << " (bound 0.125)";
  return check.Finish(summary.str());
}

CheckResult CheckEquivalence(int instances, std::uint64_t seed) {
  Check check("cls_dls_equivalence");
  for (int k = 0; k < instances; ++k) {
    const std::uint64_t s = InstanceSeed(seed, k);
    RandomInstanceOptions ro;
    ro.max_robots = 4;
    ro.max_trajectories = 4;
    const Problem p = RandomProblem(s, ro);
    for (bool lazy : {false, true}) {
      CountingOracle o1(*p.objective), o2(*p.objective);
      ClsOptions co;
      co.order = ScanOrder::kAgentMajor;
      co.lazy = lazy;
      const SolverResult a = Cls(*p.matroid, o1, co);
      DlsOptions d;
      d.lazy = lazy;
      d.schedule = Schedule::kCanonical;
      const SolverResult b = Dls(*p.matroid, o2, d);
      if (!(a.op_trace == b.op_trace) || !(a.solution == b.solution) ||
          a.g_value != b.g_value) {
        check.Fail(Seeded("CLS and DLS diverge", s));
      }
    }
  }
  return check.Finish(std::to_string(instances) +
                      " instances, identical traces with lazy off and on");
}

CheckResult CheckLazySoundness(int instances, std::uint64_t seed) {
  Check check("lazy_soundness");
  std::int64_t naive_calls = 0, lazy_calls = 0;
  for (int k = 0; k < instances; ++k) {
    const std::uint64_t s = InstanceSeed(seed, k);
    RandomInstanceOptions ro;
    ro.max_robots = 4;
    ro.max_trajectories = 5;
    const Problem p = RandomProblem(s, ro);
    const PartitionMatroid& m = *p.matroid;
    for (bool warm : {false, true}) {
      SolverResult r[2];
      for (int lazy = 0; lazy < 2; ++lazy) {
        CountingOracle oracle(*p.objective);
        DlsOptions o;
        o.lazy = lazy == 1;
        o.warm_start = warm;
        r[lazy] = Dls(m, oracle, o);
      }
      naive_calls += r[0].metrics.oracle_calls;
      lazy_calls += r[1].metrics.oracle_calls;
      if (!(r[0].op_trace == r[1].op_trace) || !(r[0].solution == r[1].solution)) {
        check.Fail(Seeded(std::string("DLS lazy changes commits, warm=") +
                              (warm ? "on" : "off"),
                          s));
      }
    }
    std::vector<int> order(m.num_robots());
    for (int i = 0; i < m.num_robots(); ++i) order[i] = i;
    CountingOracle o1(*p.objective), o2(*p.objective);
    if (!(CoordinateDescent(m, o1, order, false).solution ==
          CoordinateDescent(m, o2, order, true).solution)) {
      check.Fail(Seeded("CD lazy changes the solution", s));
    }
  }
  std::ostringstream summary;
  summary << instances << " instances, oracle calls naive " << naive_calls << " lazy "
          << lazy_calls;
  return check.Finish(summary.str());
}

CheckResult CheckOracle(std::uint64_t seed) {
  Check check("oracle");
  {
    const TargetModel model(Mat::Constant(1, 1, 1.0), Mat::Constant(1, 1, 1.0));
    const std::vector<std::vector<Mat>> infos{{Mat::Constant(1, 1, 1.0)}};
    const double mi = MutualInformation(model, Mat::Constant(1, 1, 1.0), infos);
    if (std::abs(mi - 0.5 * std::log(3.0)) > 1e-12) {
      check.Fail("scalar example gives " + std::to_string(mi));
    }
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 1000; ++k) {
    const int d = std::uniform_int_distribution<int>(1, 6)(rng);
    const int dz = std::uniform_int_distribution<int>(1, d)(rng);
    const Mat sigma = RandomSpd(rng, d, 0.5);
    std::normal_distribution<double> normal;
    Mat h(dz, d);
    for (int i = 0; i < dz; ++i) {
      for (int j = 0; j < d; ++j) h(i, j) = normal(rng);
    }
    const Mat v = RandomSpd(rng, dz, 0.1);
    const Mat gain = sigma - sigma * h.transpose() *
                                 (h * sigma * h.transpose() + v).inverse() * h * sigma;
    const std::vector<Mat> infos{MeasurementInformation(h, v)};
    const double err = (KfUpdateInfo(sigma, infos) - gain).cwiseAbs().maxCoeff();
    if (err > 1e-8) check.Fail("information and gain forms differ by " + std::to_string(err));
  }
  int nested = 0;
  for (int k = 0; k < 150; ++k) {
    const std::uint64_t s = InstanceSeed(seed, k);
    const Problem p = RandomProblem(s);
    const PartitionMatroid& m = *p.matroid;
    const MatroidObjective& f = *p.objective;
    const auto sets = AllSets(m);
    for (const SolutionSet& small : sets) {
      const double mi_small = f.MutualInformation(small);
      if (mi_small < -1e-9) check.Fail(Seeded("negative MI", s));
      for (const SolutionSet& big : sets) {
        if (!Subset(small, big)) continue;
        ++nested;
        const double mi_big = f.MutualInformation(big);
        if (mi_small > mi_big + 1e-9) check.Fail(Seeded("MI not monotone", s));
        for (int i = 0; i < m.num_robots(); ++i) {
          if (big.has(i)) continue;
          for (TrajId a : m.partition(i)) {
            SolutionSet sa = small, ba = big;
            sa.Add(m, a);
            ba.Add(m, a);
            const double gain_small = f.MutualInformation(sa) - mi_small;
            const double gain_big = f.MutualInformation(ba) - mi_big;
            if (gain_small < gain_big - 1e-9) check.Fail(Seeded("MI not submodular", s));
          }
        }
      }
    }
  }
  return check.Finish("1/2 ln 3 to 1e-12, 1000 SPD updates, " + std::to_string(nested) +
                      " nested pairs");
}

CheckResult CheckProtocolFuzz(int runs, std::uint64_t seed) {
  Check check("protocol_fuzz");
  std::int64_t stale = 0, commits = 0;
  for (int k = 0; k < runs; ++k) {
    const std::uint64_t s = InstanceSeed(seed, k);
    RandomInstanceOptions ro;
    ro.min_robots = 2;
    ro.max_robots = 5;
    ro.max_trajectories = 4;
    const Problem p = RandomProblem(s, ro);
    const PartitionMatroid& m = *p.matroid;
    CountingOracle oracle(*p.objective);
    std::stringstream buf;
    TraceWriter writer(buf);
    DlsOptions o;
    o.schedule = Schedule::kConcurrent;
    o.seed = s;
    o.lazy = k % 2 == 0;
    o.warm_start = k % 4 < 2;
    o.latency = 0.25 * (k % 13);
    o.jitter = (k % 5) / 4.0;
    o.trace = &writer;
    SolverResult r;
    try {
      r = Dls(m, oracle, o);
    } catch (const std::exception& e) {
      check.Fail(Seeded(std::string("run raised: ") + e.what(), s));
      continue;
    }
    stale += r.metrics.stale_discarded;
    commits += r.metrics.commits;
    TraceHeader header;
    std::vector<TraceRecord> records;
    ReadTrace(buf, header, records);
    const TraceAudit audit = AuditTrace(header, records);
    if (!audit.error.empty()) {
      check.Fail(Seeded("audit: " + audit.error, s));
      continue;
    }
    if (!(audit.best == r.solution)) check.Fail(Seeded("replayed result differs", s));

    const double opt = GOf(p, BruteForceOpt(m, oracle));
    const double n = std::max(m.size(), 1);
    for (int round = 1; round <= static_cast<int>(r.round_starts.size()); ++round) {
      const double g0 = GOf(p, r.round_starts[round - 1]);
      if (g0 <= 0.0) continue;
      const double bound =
          std::ceil(std::log(opt / g0) / std::log1p(o.alpha / std::pow(n, 4))) + 1;
      std::int64_t in_round = 0;
      for (const LocalOp& op : r.op_trace) in_round += op.round == round;
      if (in_round > bound) check.Fail(Seeded("commit bound exceeded", s));
    }
  }
  std::ostringstream summary;
  summary << runs << " runs, " << commits << " commits, " << stale
          << " stale proposals discarded";
  return check.Finish(summary.str());
}

std::vector<CheckResult> RunVerify(std::ostream* progress) {
  std::vector<CheckResult> out;
  auto run = [&](CheckResult r) {
    if (progress) {
      *progress << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << " ("
                << r.seconds << " s)\n";
    }
    out.push_back(std::move(r));
  };
  run(CheckGuarantee());
  run(CheckEquivalence());
  run(CheckLazySoundness());
  run(CheckOracle());
  run(CheckProtocolFuzz());
  return out;
}

}  // namespace infoplan::bench
