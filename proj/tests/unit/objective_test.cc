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

#include "infoplan/objective.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "infoplan/bench/random_instance.h"
#include "infoplan/errors.h"
#include "infoplan/kernels.h"

namespace infoplan {
namespace {

using bench::RandomProblem;

// Every admissible set: each robot picks one of its trajectories or none.
std::vector<SolutionSet> AllSets(const PartitionMatroid& m) {
  std::vector<SolutionSet> out{SolutionSet(m.num_robots())};
  for (int i = 0; i < m.num_robots(); ++i) {
    std::vector<SolutionSet> next;
    for (const SolutionSet& s : out) {
      next.push_back(s);
      for (TrajId id : m.partition(i)) {
        SolutionSet t = s;
        t.Add(m, id);
        next.push_back(t);
      }
    }
    out = std::move(next);
  }
  return out;
}

bool Subset(const SolutionSet& a, const SolutionSet& b) {
  for (int i = 0; i < a.num_robots(); ++i) {
    if (a.has(i) && a.slot(i) != b.slot(i)) return false;
  }
  return true;
}

RobotSpec Ugv(double weight) {
  RobotSpec s;
  s.sensor = UgvSensor(6.0);
  s.costs = CostTable::Ugv();
  s.weight = weight;
  return s;
}

TEST(TrackingModelTest, FastMatchesDenseRecursion) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Problem p = RandomProblem(seed);
    for (const SolutionSet& s : AllSets(*p.matroid)) {
      std::vector<const Trajectory*> members;
      for (TrajId id : s.Ids()) members.push_back(&p.matroid->at(id));
      const double fast = p.model->MutualInformation(members);
      const double dense = p.model->DenseMutualInformation(members);
      ASSERT_NEAR(fast, dense, 1e-9 * std::max(1.0, std::abs(dense)))
          << "seed " << seed;
    }
  }
}

TEST(TrackingModelTest, ScalarAndAvx2AgreeExactly) {
  if (!kernels::IsaSupported(kernels::Isa::kAvx2)) GTEST_SKIP();
  const kernels::Isa saved = kernels::ActiveIsa();
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    Problem p = RandomProblem(seed);
    for (const SolutionSet& s : AllSets(*p.matroid)) {
      kernels::SetIsa(kernels::Isa::kScalar);
      const double a = p.objective->Value(s);
      kernels::SetIsa(kernels::Isa::kAvx2);
      const double b = p.objective->Value(s);
      ASSERT_EQ(a, b);
    }
  }
  kernels::SetIsa(saved);
}

TEST(TrackingModelTest, EmptySetIsZero) {
  Problem p = RandomProblem(7);
  const SolutionSet empty(p.matroid->num_robots());
  EXPECT_EQ(p.objective->MutualInformation(empty), 0.0);
  EXPECT_EQ(p.objective->Value(empty), 0.0);
}

TEST(TrackingModelTest, StandaloneIsSingletonValue) {
  Problem p = RandomProblem(8);
  for (const Trajectory& t : p.matroid->trajectories()) {
    SolutionSet s(p.matroid->num_robots());
    s.Add(*p.matroid, t.id);
    EXPECT_EQ(p.objective->Value(s), t.standalone);
  }
}

TEST(TrackingModelTest, AllStopFarFromTargetsIsZero) {
  World w;
  w.horizon = 5;
  w.robots.push_back(Ugv(1.0));
  TrackedTarget t;
  t.model = StaticTargetModel();
  t.mean = Vec(2);
  t.mean << 100, 100;
  t.prior = Mat::Identity(2, 2);
  w.targets.push_back(t);
  TrackingModel model(w);
  const Trajectory tr = model.MakeTrajectory(0, std::vector<std::uint8_t>(5, 0));
  EXPECT_TRUE(tr.info.empty());
  EXPECT_EQ(tr.energy, 0.0);
  EXPECT_EQ(tr.standalone, 0.0);
}

TEST(EnergyTest, TableEntriesSummedFromInitialState) {
  World w;
  w.horizon = 2;
  w.robots.push_back(Ugv(1.0));
  w.field.regions.push_back({RegionKind::kMud, -1, -1, 1, 1});
  TrackingModel model(w);
  // (8, pi/2) then (0, 0): (2 + 3) + (0 + 0).
  const Trajectory tr = model.MakeTrajectory(0, {4, 0});
  EXPECT_EQ(tr.energy, 5.0);
  const Trajectory* s[] = {&tr};
  EXPECT_EQ(model.Energy(s), 5.0);

  w.robots[0].weight = 2.0;
  TrackingModel doubled(w);
  const Trajectory tr2 = doubled.MakeTrajectory(0, {4, 0});
  const Trajectory* s2[] = {&tr2};
  EXPECT_EQ(doubled.Energy(s2), 10.0);
}

TEST(EnergyTest, ModularOverAdmissibleSets) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Problem p = RandomProblem(seed);
    const auto sets = AllSets(*p.matroid);
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 50; ++k) {
      const SolutionSet& a = sets[rng() % sets.size()];
      const SolutionSet& b = sets[rng() % sets.size()];
      SolutionSet uni(a.num_robots()), inter(a.num_robots());
      bool admissible = true;
      for (int i = 0; i < a.num_robots(); ++i) {
        if (a.has(i) && b.has(i) && a.slot(i) != b.slot(i)) admissible = false;
        if (a.has(i)) {
          uni.Add(*p.matroid, a.slot(i));
        } else if (b.has(i)) {
          uni.Add(*p.matroid, b.slot(i));
        }
        if (a.has(i) && a.slot(i) == b.slot(i)) inter.Add(*p.matroid, a.slot(i));
      }
      if (!admissible) continue;
      const auto& o = *p.objective;
      const double lhs = o.Energy(uni) + o.Energy(inter);
      const double rhs = o.Energy(a) + o.Energy(b);
      // Equal up to the rounding of differently grouped sums.
      EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, rhs));
    }
  }
}

TEST(OffsetTest, LambdaExamples) {
  CostField mud;
  mud.regions.push_back({RegionKind::kMud, 0, 0, 1, 1});
  std::vector<RobotSpec> one{Ugv(1.0)};
  EXPECT_EQ(OffsetLambda(one, mud, 10), 50.0);
  std::vector<RobotSpec> two{Ugv(1.0), Ugv(1.0)};
  EXPECT_EQ(OffsetLambda(two, mud, 10), 100.0);
  std::vector<RobotSpec> zero{Ugv(0.0), Ugv(0.0)};
  EXPECT_EQ(OffsetLambda(zero, mud, 10), 0.0);
}

TEST(OracleTest, NonNegativeOnEveryAdmissibleSet) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Problem p = RandomProblem(seed);
    CountingOracle oracle(*p.objective);
    for (const SolutionSet& s : AllSets(*p.matroid)) {
      EXPECT_GE(oracle.G(s), 0.0) << "seed " << seed;
    }
    const SolutionSet empty(p.matroid->num_robots());
    EXPECT_EQ(oracle.G(empty), p.model->Lambda());
  }
}

TEST(OracleTest, MonotoneMutualInformationAndSubmodularity) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    Problem p = RandomProblem(seed);
    const auto& m = *p.matroid;
    const auto& o = *p.objective;
    CountingOracle oracle(o);
    const auto sets = AllSets(m);
    for (const SolutionSet& small : sets) {
      for (const SolutionSet& big : sets) {
        if (!Subset(small, big)) continue;
        EXPECT_LE(o.MutualInformation(small), o.MutualInformation(big) + 1e-9);
        ++checked;
        for (int i = 0; i < m.num_robots(); ++i) {
          if (big.has(i)) continue;
          for (TrajId a : m.partition(i)) {
            SolutionSet sa = small, ba = big;
            sa.Add(m, a);
            ba.Add(m, a);
            const double mi_small = o.MutualInformation(sa) - o.MutualInformation(small);
            const double mi_big = o.MutualInformation(ba) - o.MutualInformation(big);
            EXPECT_GE(mi_small, mi_big - 1e-9);
            EXPECT_GE(MarginalGain(oracle, m, a, small),
                      MarginalGain(oracle, m, a, big) - 1e-9);
          }
        }
      }
    }
  }
  EXPECT_GE(checked, 100);
}

// Two robots with the same sensor and start share everything they see.
TEST(OracleTest, DuplicateTrajectoryGainShrinks) {
  World w;
  w.horizon = 4;
  w.robots = {Ugv(0.1), Ugv(0.1)};
  w.robots[1].id = 1;
  TrackedTarget t;
  t.model = DoubleIntegratorModel(0.5, 0.1);
  t.mean = Vec(4);
  t.mean << 3, 0, 0, 0;
  t.prior = Mat::Identity(4, 4);
  w.targets.push_back(t);
  TrackingModel model(w);
  std::vector<std::vector<Trajectory>> parts(2);
  parts[0].push_back(model.MakeTrajectory(0, {0, 0, 0, 0}));
  parts[1].push_back(model.MakeTrajectory(1, {0, 0, 0, 0}));
  Problem p = MakeProblem(w, std::move(parts));
  CountingOracle oracle(*p.objective);
  SolutionSet empty(2), with_first(2);
  with_first.Add(*p.matroid, 0);
  const double alone = MarginalGain(oracle, *p.matroid, 1, empty);
  const double after = MarginalGain(oracle, *p.matroid, 1, with_first);
  EXPECT_GT(alone, 0.0);
  EXPECT_LT(after, alone);
}

TEST(OracleTest, CostlyFarTrajectoryHasNegativeGain) {
  World w;
  w.horizon = 3;
  w.robots = {Ugv(1.0)};
  TrackedTarget t;
  t.model = StaticTargetModel();
  t.mean = Vec(2);
  t.mean << 100, 100;
  t.prior = Mat::Identity(2, 2);
  w.targets.push_back(t);
  TrackingModel model(w);
  std::vector<std::vector<Trajectory>> parts(1);
  parts[0].push_back(model.MakeTrajectory(0, {3, 3, 3}));
  Problem p = MakeProblem(w, std::move(parts));
  CountingOracle oracle(*p.objective);
  EXPECT_LT(MarginalGain(oracle, *p.matroid, 0, SolutionSet(1)), 0.0);
}

TEST(OracleTest, MarginalGainRejectsInadmissible) {
  Problem p = RandomProblem(3, {.min_robots = 2, .min_trajectories = 2});
  CountingOracle oracle(*p.objective);
  SolutionSet s(p.matroid->num_robots());
  const TrajId first = p.matroid->partition(0)[0];
  const TrajId second = p.matroid->partition(0)[1];
  s.Add(*p.matroid, first);
  EXPECT_THROW(MarginalGain(oracle, *p.matroid, first, s), ContractViolation);
  EXPECT_THROW(MarginalGain(oracle, *p.matroid, second, s), ContractViolation);
}

TEST(CountingOracleTest, TransparentAndCountsMisses) {
  Problem p = RandomProblem(5, {.min_robots = 2});
  CountingOracle oracle(*p.objective);
  CountingOracle raw(*p.objective, /*memoize=*/false);
  const auto sets = AllSets(*p.matroid);
  for (int pass = 0; pass < 2; ++pass) {
    for (const SolutionSet& s : sets) {
      EXPECT_EQ(oracle.J(s), p.objective->Value(s));
      EXPECT_EQ(raw.J(s), p.objective->Value(s));
    }
  }
  const auto n = static_cast<std::int64_t>(sets.size());
  EXPECT_EQ(oracle.requests(), 2 * n);
  EXPECT_EQ(oracle.misses(), n);
  EXPECT_EQ(raw.misses(), 2 * n);
  oracle.ResetCounters();
  EXPECT_EQ(oracle.requests(), 0);
}

TEST(SolutionSetTest, FuzzedMutationsStayAdmissible) {
  Problem p = RandomProblem(9, {.min_robots = 3, .min_trajectories = 3});
  const auto& m = *p.matroid;
  std::mt19937_64 rng(9);
  SolutionSet s(m.num_robots());
  for (int step = 0; step < 5000; ++step) {
    const TrajId id = static_cast<TrajId>(rng() % m.size());
    const int op = static_cast<int>(rng() % 3);
    try {
      if (op == 0) {
        s.Add(m, id);
      } else if (op == 1) {
        s.Remove(m, id);
      } else {
        const TrajId cur = s.slot(m.robot_of(id));
        if (cur != kNop) s.Remove(m, cur);
        s.Add(m, id);
      }
    } catch (const ContractViolation&) {
    }
    for (int i = 0; i < m.num_robots(); ++i) {
      if (s.has(i)) {
        ASSERT_EQ(m.robot_of(s.slot(i)), i);
      }
    }
    ASSERT_LE(s.size(), m.num_robots());
  }
}

TEST(PartitionMatroidTest, SortedRobotMajorIds) {
  Problem p = RandomProblem(11, {.min_robots = 3, .min_trajectories = 3});
  const auto& m = *p.matroid;
  TrajId next = 0;
  for (int i = 0; i < m.num_robots(); ++i) {
    const auto part = m.partition(i);
    for (size_t k = 0; k < part.size(); ++k) {
      EXPECT_EQ(part[k], next++);
      EXPECT_EQ(m.robot_of(part[k]), i);
      if (k > 0) {
        EXPECT_GE(m.at(part[k - 1]).standalone, m.at(part[k]).standalone);
      }
    }
  }
  EXPECT_EQ(next, m.size());
}

TEST(ThresholdTest, RatioAndUlpFloor) {
  EXPECT_EQ(ImprovementThreshold(100.0, 1.0, 1), 200.0);
  EXPECT_EQ(ImprovementThreshold(16.0, 1.0, 2), 17.0);
  const double g = 1000.0;
  const double ulp = std::nextafter(g, 2e3) - g;
  EXPECT_EQ(ImprovementThreshold(g, 1.0, 10000), g + 4 * ulp);
  EXPECT_EQ(Deficiency(16.0, 20.0, 1.0, 2), -3.0);
}

}  // namespace
}  // namespace infoplan
