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

// Candidate trajectories per robot: breadth-first enumeration of the motion
// primitive tree, pruned by a per-step pose grid, ranked by standalone score.

#ifndef INFOPLAN_TRAJGEN_H_
#define INFOPLAN_TRAJGEN_H_

#include <span>
#include <vector>

#include "infoplan/objective.h"

namespace infoplan {

struct GenConfig {
  int max_candidates = 200;          // N_i cap
  double downsample_fraction = 1.0;  // in (0, 1]
  double cell_size = 0.5;            // m
  double cell_angle = kPi / 8;       // rad (22.5 deg)
  // Nodes kept per tree level, in expansion order; 0 keeps all.
  int max_nodes_per_level = 0;
};

// Expands primitives in table order (stationary first). A child whose
// discretized pose was already reached at the same step is pruned, so the
// all-stop branch always survives. Returns at most cfg.max_candidates
// trajectories by standalone score descending, ties in expansion order,
// after applying cfg.downsample_fraction.
std::vector<Trajectory> GenerateCandidates(const TrackingModel& model, int robot,
                                           const GenConfig& cfg);

// Best ceil(fraction * n) entries of a list sorted by standalone score.
std::vector<Trajectory> DownsampleBest(std::vector<Trajectory> trajs,
                                       double fraction);

// Number of entries DownsampleBest keeps.
size_t DownsampleCount(size_t n, double fraction);

}  // namespace infoplan

#endif  // INFOPLAN_TRAJGEN_H_
