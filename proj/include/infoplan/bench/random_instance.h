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

// Small random tracking instances for property and guarantee checks.

#ifndef INFOPLAN_BENCH_RANDOM_INSTANCE_H_
#define INFOPLAN_BENCH_RANDOM_INSTANCE_H_

#include <cstdint>

#include "infoplan/objective.h"

namespace infoplan::bench {

struct RandomInstanceOptions {
  int min_robots = 1;
  int max_robots = 3;
  int min_trajectories = 1;
  int max_trajectories = 3;  // per robot
  int max_targets = 3;
  int horizon = 4;
  double arena = 20.0;
  double max_weight = 1.5;
};

// Random robots (class, sensor range and field of view, weight), targets
// (dynamic or static), terrain regions and random control sequences.
Problem RandomProblem(std::uint64_t seed, const RandomInstanceOptions& opts = {});

// splitmix64 step; used to derive independent per-trial seeds.
std::uint64_t SplitMix64(std::uint64_t& state);

}  // namespace infoplan::bench

#endif  // INFOPLAN_BENCH_RANDOM_INSTANCE_H_
