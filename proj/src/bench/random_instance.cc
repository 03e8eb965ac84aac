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

#include "infoplan/bench/random_instance.h"

#include <random>
#include <set>
#include <vector>

namespace infoplan::bench {

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Problem RandomProblem(std::uint64_t seed, const RandomInstanceOptions& opts) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto integer = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const double side = opts.arena;

  World world;
  world.tau = 0.5;
  world.horizon = opts.horizon;

  const int regions = integer(0, 2);
  for (int k = 0; k < regions; ++k) {
    Region r;
    r.kind = integer(0, 1) == 0 ? RegionKind::kMud : RegionKind::kWind;
    r.x_min = uniform(0, side * 0.6);
    r.y_min = uniform(0, side * 0.6);
    r.x_max = r.x_min + uniform(2, side * 0.5);
    r.y_max = r.y_min + uniform(2, side * 0.5);
    world.field.regions.push_back(r);
  }

  const bool dynamic = integer(0, 1) == 1;
  const int targets = integer(1, opts.max_targets);
  const TargetModel di = DoubleIntegratorModel(world.tau, uniform(0.01, 0.5));
  const TargetModel still = StaticTargetModel();
  for (int j = 0; j < targets; ++j) {
    TrackedTarget t;
    if (dynamic) {
      t.model = di;
      t.mean = Vec(4);
      t.mean << uniform(0, side), uniform(0, side), uniform(-1.4, 1.4),
          uniform(-1.4, 1.4);
      t.prior = Mat::Identity(4, 4);
      t.prior(0, 0) = t.prior(1, 1) = uniform(1, 6);
    } else {
      t.model = still;
      t.mean = Vec(2);
      t.mean << uniform(0, side), uniform(0, side);
      t.prior = uniform(1, 6) * Mat::Identity(2, 2);
    }
    world.targets.push_back(std::move(t));
  }

  const int robots = integer(opts.min_robots, opts.max_robots);
  for (int i = 0; i < robots; ++i) {
    RobotSpec spec;
    spec.id = i;
    spec.kind = integer(0, 1) == 0 ? RobotClass::kUgv : RobotClass::kUav;
    spec.costs = spec.kind == RobotClass::kUgv ? CostTable::Ugv() : CostTable::Uav();
    spec.sensor.range = uniform(5, 20);
    spec.sensor.fov_deg = integer(0, 2) == 0 ? 360.0 : uniform(90, 300);
    spec.weight = uniform(0, opts.max_weight);
    spec.initial = {uniform(0, side), uniform(0, side), uniform(-kPi, kPi)};
    world.robots.push_back(spec);
  }

  TrackingModel model(world);
  std::vector<std::vector<Trajectory>> parts(robots);
  const int primitives = static_cast<int>(StandardPrimitives().size());
  for (int i = 0; i < robots; ++i) {
    const int count = integer(opts.min_trajectories, opts.max_trajectories);
    std::set<std::vector<std::uint8_t>> seen;
    int attempts = 0;
    while (static_cast<int>(seen.size()) < count && attempts++ < 100) {
      std::vector<std::uint8_t> controls(opts.horizon);
      for (auto& c : controls) c = static_cast<std::uint8_t>(integer(0, primitives - 1));
      if (seen.insert(controls).second) {
        parts[i].push_back(model.MakeTrajectory(i, controls));
      }
    }
  }
  return MakeProblem(std::move(world), std::move(parts));
}

}  // namespace infoplan::bench
