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


// Experiment scenarios: dynamic-target tracking by a homogeneous UGV team
// (scenario 1) and static-target tracking by a mixed UGV/UAV team over mud
// and wind (scenario 2), plus the solver variants run on them.

#ifndef INFOPLAN_BENCH_SCENARIO_H_
#define INFOPLAN_BENCH_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infoplan/dls.h"
#include "infoplan/objective.h"
#include "infoplan/trajgen.h"

namespace infoplan::bench {

// Platform-independent uniform draws on top of SplitMix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next();
  double Uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

enum class SolverKind { kDls, kCd, kCls };
std::string_view SolverName(SolverKind k);

// A solver with its options. Names are "<solver>_<options>", e.g.
// "dls_lazy_warm_ds10", "cd_cheap_first", "cls".
struct Variant {
  SolverKind solver = SolverKind::kDls;
  bool lazy = false;
  bool warm = false;
  bool cheap_first = true;  // CD order
  // DLS schedule; unset follows ScenarioConfig::schedule.
  std::optional<Schedule> schedule;
  double downsample = 1.0;

  std::string Name() const;         // full name
  std::string OptionName() const;   // name without the solver prefix
};

// Throws ConfigError naming the variant on unknown tokens.
Variant ParseVariant(std::string_view name);

struct RobotProfile {
  SensorProfile sensor;
  CostTable costs;
};

struct ScenarioConfig {
  int scenario = 1;
  std::uint64_t seed = 1;
  int trials = 20;
  // Robot counts (scenario 1) or shared weights r (scenario 2).
  std::vector<double> sweep;
  int horizon = 10;
  double tau = 0.5;

  // Targets. Scenario 1 uses one double-integrator target per robot;
  // scenario 2 uses `num_targets` static ones.
  int num_targets = 10;
  double process_noise = 0.1;
  double max_speed = 2.0;
  std::vector<double> prior_diag = {4, 4, 1, 1};
  double static_noise = 1e-9;

  // Scenario 1 arena side grows linearly from min_side at min_robots to
  // max_side at max_robots.
  double min_side = 40.0;
  double max_side = 60.0;
  int min_robots = 2;
  int max_robots = 10;
  // Scenario 2 arena.
  double width = 100.0;
  double height = 100.0;

  RobotProfile ugv;
  RobotProfile uav;
  std::vector<RobotClass> team;  // scenario 2
  std::vector<Region> regions;

  GenConfig trajgen;
  double alpha = 1.0;
  std::vector<Variant> variants;
  Schedule schedule = Schedule::kConcurrent;
  double latency = 1.0;
  double jitter = 0.5;

  std::string out_dir = "out";
  bool plots = true;
  bool traces = false;
};

ScenarioConfig DefaultScenario1();
ScenarioConfig DefaultScenario2();

double ArenaSide(const ScenarioConfig& cfg, int n);

// Builds the world for one sweep point and trial seed.
World BuildScenario1(const ScenarioConfig& cfg, int n, std::uint64_t seed);
World BuildScenario2(const ScenarioConfig& cfg, double r, std::uint64_t seed);
World BuildWorld(const ScenarioConfig& cfg, double point, std::uint64_t seed);

// Candidate trajectories for every robot, generated independently.
Problem BuildProblem(World world, const GenConfig& gen);

// The same trajectories as `full`, keeping the best fraction per robot.
Problem Downsampled(const Problem& full, double fraction);

std::uint64_t TrialSeed(std::uint64_t seed, int trial);
std::uint64_t WorldHash(const World& w);

}  // namespace infoplan::bench

#endif  // INFOPLAN_BENCH_SCENARIO_H_
