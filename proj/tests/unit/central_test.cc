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


#include "infoplan/central.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "infoplan/bench/random_instance.h"
#include "infoplan/errors.h"
#include "problem_util.h"

namespace infoplan {
namespace {

using bench::RandomProblem;
using testing::AllSets;
using testing::OptimalG;

double G(const Problem& p, const SolutionSet& s) {
  return p.objective->Value(s) + p.objective->Offset();
}

// Replays each round of a CLS result and checks every recorded operation.
void ExpectAuditedRounds(const Problem& p, const SolverResult& r, double alpha) {
  const PartitionMatroid& m = *p.matroid;
  const SearchContext ctx{&m, alpha, std::max(m.size(), 1)};
  ASSERT_EQ(r.round_starts.size(), 2u);
  std::vector<SolutionSet> ends;
  for (int round = 1; round <= 2; ++round) {
    std::vector<LocalOp> ops;
    for (const LocalOp& op : r.op_trace) {
      if (op.round == round) ops.push_back(op);
    }
    SolutionSet end;
    EXPECT_EQ(AuditOps(ctx, p.objective->Offset(), r.round_starts[round - 1], ops,
                       &end),
              "");
    ends.push_back(end);
  }
  for (TrajId id : ends[0].Ids()) {
    EXPECT_FALSE(r.round_starts[1].Contains(m, id));
    for (const LocalOp& op : r.op_trace) {
      if (op.round == 2) {
        EXPECT_NE(op.a, id);
      }
    }
  }
  const double g1 = G(p, ends[0]);
  const double g2 = G(p, ends[1]);
  EXPECT_EQ(r.solution, g2 > g1 ? ends[1] : ends[0]);
  EXPECT_EQ(r.g_value, std::max(g1, g2));
  EXPECT_EQ(r.j_value, p.objective->Value(r.solution));
}

TEST(ClsTest, GuaranteeAgainstExhaustiveOptimum) {
  for (double alpha : {1.0, 0.25}) {
    for (ScanOrder order : {ScanOrder::kDeleteAddSwap, ScanOrder::kAgentMajor}) {
      for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const Problem p = RandomProblem(seed);
        CountingOracle oracle(*p.objective);
        const SolverResult r = Cls(*p.matroid, oracle, {alpha, order, false});
        const double opt = OptimalG(p);
        EXPECT_GE(r.g_value, opt / (4.0 * (1.0 + alpha))) << "seed " << seed;
        EXPECT_LE(r.g_value, opt) << "seed " << seed;
        ExpectAuditedRounds(p, r, alpha);
      }
    }
  }
}

TEST(ClsTest, CommitCountWithinImprovementBound) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Problem p = RandomProblem(seed);
    CountingOracle oracle(*p.objective);
    const double alpha = 1.0;
    const SolverResult r = Cls(*p.matroid, oracle, {alpha});
    const double n = p.matroid->size();
    const double opt = OptimalG(p);
    for (int round = 1; round <= 2; ++round) {
      const double g0 = G(p, r.round_starts[round - 1]);
      if (g0 <= 0.0) continue;
      const double bound =
          std::ceil(std::log(opt / g0) / std::log1p(alpha / std::pow(n, 4))) + 1;
      const auto commits = std::count_if(
          r.op_trace.begin(), r.op_trace.end(),
          [round](const LocalOp& op) { return op.round == round; });
      EXPECT_LE(commits, bound) << "seed " << seed;
    }
  }
}

TEST(ClsTest, SingleTrajectoryIsChosen) {
  using testing::Robot;
  World w;
  w.horizon = 3;
  w.robots = {Robot(0, RobotClass::kUgv, {0, 0, 0}, 0.1)};
  w.targets = {testing::StaticTarget(5, 0)};
  TrackingModel model(w);
  std::vector<std::vector<Trajectory>> parts(1);
  parts[0].push_back(model.MakeTrajectory(0, testing::Repeat(0, 3)));
  ASSERT_GT(parts[0][0].standalone, 0.0);
  const Problem p = MakeProblem(w, std::move(parts));
  CountingOracle oracle(*p.objective);
  const SolverResult r = Cls(*p.matroid, oracle);
  EXPECT_EQ(r.solution.Ids(), std::vector<TrajId>{0});
}

TEST(ClsTest, EmptyGroundSetGivesLambda) {
  World w;
  w.horizon = 2;
  w.robots = {testing::Robot(0, RobotClass::kUgv, {}, 1.0),
              testing::Robot(1, RobotClass::kUav, {}, 1.0)};
  w.targets = {testing::StaticTarget(5, 0)};
  const Problem p = MakeProblem(w, {{}, {}});
  CountingOracle oracle(*p.objective);
  const SolverResult r = Cls(*p.matroid, oracle);
  EXPECT_TRUE(r.solution.empty());
  EXPECT_EQ(r.g_value, p.objective->Offset());
  EXPECT_TRUE(r.op_trace.empty());
  EXPECT_TRUE(BruteForceOpt(*p.matroid, oracle).empty());
}

TEST(ClsTest, RejectsNonPositiveAlpha) {
  const Problem p = RandomProblem(1);
  CountingOracle oracle(*p.objective);
  EXPECT_THROW(Cls(*p.matroid, oracle, {0.0}), ContractViolation);
}

TEST(ClsTest, Deterministic) {
  const Problem p = RandomProblem(7);
  CountingOracle a(*p.objective), b(*p.objective);
  const SolverResult x = Cls(*p.matroid, a);
  const SolverResult y = Cls(*p.matroid, b);
  EXPECT_EQ(x.op_trace, y.op_trace);
  EXPECT_EQ(x.metrics.oracle_calls, y.metrics.oracle_calls);
}

TEST(BruteForceTest, MatchesEnumerationAndCount) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Problem p = RandomProblem(seed);
    CountingOracle oracle(*p.objective);
    const SolutionSet best = BruteForceOpt(*p.matroid, oracle);
    EXPECT_EQ(G(p, best), OptimalG(p));
    EXPECT_EQ(oracle.misses(), static_cast<std::int64_t>(AllSets(*p.matroid).size()));
  }
}

TEST(BruteForceTest, TwoByTwoEnumeratesNine) {
  bench::RandomInstanceOptions opts;
  opts.min_robots = opts.max_robots = 2;
  opts.min_trajectories = opts.max_trajectories = 2;
  const Problem p = RandomProblem(3, opts);
  CountingOracle oracle(*p.objective);
  BruteForceOpt(*p.matroid, oracle);
  EXPECT_EQ(oracle.misses(), 9);
}

TEST(BruteForceTest, RefusesLargeInstances) {
  bench::RandomInstanceOptions opts;
  opts.min_robots = opts.max_robots = 3;
  opts.min_trajectories = opts.max_trajectories = 101;
  opts.horizon = 7;
  const Problem p = RandomProblem(3, opts);
  CountingOracle oracle(*p.objective);
  EXPECT_THROW(BruteForceOpt(*p.matroid, oracle), ContractViolation);
}

TEST(BruteForceTest, TiesGoToLexicographicallySmallest) {
  World w;
  w.horizon = 2;
  w.robots = {testing::Robot(0, RobotClass::kUgv, {0, 0, 0}, 1.0)};
  w.targets = {testing::StaticTarget(500, 0)};
  TrackingModel model(w);
  // Nothing is ever visible and the stop sequence costs nothing, so the
  // empty set and the stop trajectory tie at g = lambda.
  std::vector<std::vector<Trajectory>> parts(1);
  parts[0].push_back(model.MakeTrajectory(0, testing::Repeat(0, 2)));
  const Problem p = MakeProblem(w, std::move(parts));
  CountingOracle oracle(*p.objective);
  EXPECT_TRUE(BruteForceOpt(*p.matroid, oracle).empty());
}

// Exact argmax by evaluating every candidate, lowest id on ties.
ArgmaxResult NaiveArgmax(const PartitionMatroid& m, CountingOracle& oracle,
                         std::span<const TrajId> candidates, const SolutionSet& s) {
  ArgmaxResult r;
  const double j_s = oracle.J(s);
  for (TrajId id : candidates) {
    SolutionSet plus = s;
    plus.Add(m, id);
    const double gain = oracle.J(plus) - j_s;
    ++r.evaluations;
    if (r.best == kNop || gain > r.gain || (gain == r.gain && id < r.best)) {
      r.best = id;
      r.gain = gain;
    }
  }
  return r;
}

TEST(LazyArgmaxTest, EqualsNaiveArgmax) {
  std::mt19937_64 rng(11);
  int instances = 0;
  for (std::uint64_t seed = 0; instances < 200; ++seed) {
    bench::RandomInstanceOptions opts;
    opts.min_robots = 2;
    opts.max_trajectories = 6;
    const Problem p = RandomProblem(seed, opts);
    const PartitionMatroid& m = *p.matroid;
    const int robot = static_cast<int>(rng() % m.num_robots());
    if (m.partition_size(robot) == 0) continue;
    // S: random picks for the other robots, built up one at a time so that
    // bounds carried from a subset stay valid upper bounds.
    SolutionSet s(m.num_robots());
    CountingOracle oracle(*p.objective);
    const auto part = m.partition(robot);
    std::vector<double> bounds(part.size());
    for (size_t k = 0; k < part.size(); ++k) bounds[k] = m.at(part[k]).standalone;
    for (int i = 0; i < m.num_robots(); ++i) {
      if (i == robot || m.partition_size(i) == 0 || rng() % 3 == 0) continue;
      s.Add(m, m.partition(i)[rng() % m.partition_size(i)]);
      const ArgmaxResult naive = NaiveArgmax(m, oracle, part, s);
      const ArgmaxResult lazy = LazyGreedyArgmax(m, oracle, part, bounds, s);
      EXPECT_EQ(lazy.best, naive.best) << "seed " << seed;
      EXPECT_EQ(lazy.gain, naive.gain) << "seed " << seed;
      EXPECT_LE(lazy.evaluations, naive.evaluations);
    }
    const ArgmaxResult naive = NaiveArgmax(m, oracle, part, s);
    const ArgmaxResult lazy = LazyGreedyArgmax(m, oracle, part, bounds, s);
    EXPECT_EQ(lazy.best, naive.best) << "seed " << seed;
    EXPECT_EQ(lazy.gain, naive.gain) << "seed " << seed;
    EXPECT_LE(lazy.evaluations, naive.evaluations);
    ++instances;
  }
}

TEST(LazyArgmaxTest, SingleFreshCandidateTakesOneEvaluation) {
  const Problem p = RandomProblem(5);
  const PartitionMatroid& m = *p.matroid;
  CountingOracle oracle(*p.objective);
  const TrajId id = m.partition(0)[0];
  std::vector<double> bounds{m.at(id).standalone};
  const std::vector<TrajId> cands{id};
  const ArgmaxResult r =
      LazyGreedyArgmax(m, oracle, cands, bounds, SolutionSet(m.num_robots()));
  EXPECT_EQ(r.evaluations, 1);
  EXPECT_EQ(r.best, id);
}

TEST(CoordinateDescentTest, NeverBelowEmptySet) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Problem p = RandomProblem(seed);
    std::vector<int> order(p.matroid->num_robots());
    std::iota(order.begin(), order.end(), 0);
    std::reverse(order.begin(), order.end());
    for (bool lazy : {false, true}) {
      CountingOracle oracle(*p.objective);
      const SolverResult r = CoordinateDescent(*p.matroid, oracle, order, lazy);
      EXPECT_GE(r.g_value, p.objective->Offset());
    }
  }
}

TEST(CoordinateDescentTest, LazyMatchesNaive) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Problem p = RandomProblem(seed);
    std::vector<int> order(p.matroid->num_robots());
    std::iota(order.begin(), order.end(), 0);
    CountingOracle a(*p.objective), b(*p.objective);
    const SolverResult naive = CoordinateDescent(*p.matroid, a, order, false);
    const SolverResult lazy = CoordinateDescent(*p.matroid, b, order, true);
    EXPECT_EQ(naive.solution, lazy.solution);
    EXPECT_LE(lazy.metrics.oracle_calls, naive.metrics.oracle_calls);
  }
}

TEST(CoordinateDescentTest, SingleRobotPicksBestSingletonOrNothing) {
  bench::RandomInstanceOptions opts;
  opts.max_robots = 1;
  opts.max_trajectories = 5;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Problem p = RandomProblem(seed, opts);
    const PartitionMatroid& m = *p.matroid;
    TrajId best = kNop;
    double best_j = 0.0;
    for (TrajId id = 0; id < m.size(); ++id) {
      SolutionSet s(1);
      s.Add(m, id);
      const double j = p.objective->Value(s);
      if (j >= 0.0 && (best == kNop || j > best_j)) {
        best = id;
        best_j = j;
      }
    }
    CountingOracle oracle(*p.objective);
    const std::vector<int> order{0};
    const SolverResult r = CoordinateDescent(m, oracle, order);
    EXPECT_EQ(r.solution.slot(0), best) << "seed " << seed;
  }
}

TEST(CoordinateDescentTest, HugeWeightsGiveEmptySolution) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Problem base = RandomProblem(seed);
    const Problem p = testing::Reweighted(base, 1e9);
    std::vector<int> order(p.matroid->num_robots());
    std::iota(order.begin(), order.end(), 0);
    CountingOracle oracle(*p.objective);
    const SolverResult r = CoordinateDescent(*p.matroid, oracle, order);
    // Zero-energy trajectories stay free, so only those may be assigned.
    for (TrajId id : r.solution.Ids()) EXPECT_EQ(p.matroid->at(id).energy, 0.0);
  }
}

TEST(CoordinateDescentTest, RejectsNonPermutation) {
  const Problem p = RandomProblem(2);
  CountingOracle oracle(*p.objective);
  const std::vector<int> order(p.matroid->num_robots() + 1, 0);
  EXPECT_THROW(CoordinateDescent(*p.matroid, oracle, order), ContractViolation);
}

// Two robots watch the same target. The expensive one gains on its own but
// is redundant after the cheap one.
TEST(CoordinateDescentTest, OrderSensitivity) {
  using testing::Robot;
  World w;
  w.horizon = 4;
  w.robots = {Robot(0, RobotClass::kUgv, {0, 0, 0}, 1.0),
              Robot(1, RobotClass::kUav, {10, -8, kPi / 2}, 0.5)};
  w.targets = {testing::StaticTarget(10, 0)};
  TrackingModel model(w);
  std::vector<std::vector<Trajectory>> parts(2);
  parts[0].push_back(model.MakeTrajectory(0, testing::Repeat(0, 4)));
  parts[1].push_back(model.MakeTrajectory(1, testing::Repeat(0, 4)));
  const Problem p = MakeProblem(w, std::move(parts));
  const PartitionMatroid& m = *p.matroid;

  // Sequential choice evaluated directly on the objective.
  auto sequential = [&](std::vector<int> order) {
    SolutionSet s(2);
    for (int robot : order) {
      SolutionSet plus = s;
      plus.Add(m, m.partition(robot)[0]);
      if (p.objective->Value(plus) - p.objective->Value(s) >= 0.0) s = plus;
    }
    return G(p, s);
  };
  // The UGV stops for free; the hovering UAV pays for every step.
  const std::vector<int> cheap{0, 1};
  const std::vector<int> expensive{1, 0};
  const double g_cheap = sequential(cheap);
  const double g_expensive = sequential(expensive);
  ASSERT_NE(g_cheap, g_expensive);

  CountingOracle a(*p.objective), b(*p.objective);
  EXPECT_EQ(CoordinateDescent(m, a, cheap).g_value, g_cheap);
  EXPECT_EQ(CoordinateDescent(m, b, expensive).g_value, g_expensive);
}

TEST(CheapFirstOrderTest, SortsByWeightedMaxCost) {
  using testing::Robot;
  std::vector<RobotSpec> robots{Robot(0, RobotClass::kUav, {}, 1.0),
                                Robot(1, RobotClass::kUgv, {}, 1.0),
                                Robot(2, RobotClass::kUgv, {}, 3.0)};
  CostField field;
  EXPECT_EQ(CheapFirstOrder(robots, field, 10), (std::vector<int>{1, 0, 2}));
}

}  // namespace
}  // namespace infoplan
