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

#include "infoplan/trajgen.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <unordered_set>

#include "infoplan/errors.h"

namespace infoplan {
namespace {

struct Node {
  RobotState x;
  int parent = -1;
  std::uint8_t control = 0;
  double energy = 0.0;  // cost of controls and states so far
  int info_begin = 0;   // into Level::info
  int info_end = 0;
};

struct Level {
  std::vector<Node> nodes;
  std::vector<InfoEntry> info;
};

std::uint64_t CellKey(const RobotState& x, const GenConfig& cfg) {
  const auto ix = static_cast<std::int64_t>(std::floor(x.x / cfg.cell_size));
  const auto iy = static_cast<std::int64_t>(std::floor(x.y / cfg.cell_size));
  const auto ia = static_cast<std::int64_t>(std::floor((x.theta + kPi) / cfg.cell_angle));
  std::uint64_t h = static_cast<std::uint64_t>(ix) * 0x9E3779B97F4A7C15ULL;
  h ^= static_cast<std::uint64_t>(iy) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(ia) * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
  return h;
}

struct Ranked {
  double score;
  int leaf;
};

// Heap top is the worst kept leaf: lowest score, then latest in order.
struct WorseOnTop {
  bool operator()(const Ranked& a, const Ranked& b) const {
    if (a.score != b.score) return a.score > b.score;
    return a.leaf < b.leaf;
  }
};

}  // namespace

size_t DownsampleCount(size_t n, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw ContractViolation("downsample fraction must be in (0, 1]");
  }
  const double keep = std::ceil(fraction * static_cast<double>(n) - 1e-9);
  return std::min(n, static_cast<size_t>(std::max(keep, 0.0)));
}

std::vector<Trajectory> DownsampleBest(std::vector<Trajectory> trajs,
                                       double fraction) {
  trajs.resize(DownsampleCount(trajs.size(), fraction));
  return trajs;
}

std::vector<Trajectory> GenerateCandidates(const TrackingModel& model, int robot,
                                           const GenConfig& cfg) {
  DownsampleCount(0, cfg.downsample_fraction);
  if (cfg.cell_size <= 0.0 || cfg.cell_angle <= 0.0) {
    throw ContractViolation("dedup grid resolution must be positive");
  }
  if (cfg.max_candidates <= 0) return {};
  const World& world = model.world();
  const RobotSpec& spec = world.robots.at(robot);
  const int horizon = world.horizon;
  const int branches = static_cast<int>(spec.costs.controls.size());

  std::vector<Level> levels(horizon + 1);
  levels[0].nodes.push_back({spec.initial, -1, 0, 0.0, 0, 0});
  std::unordered_set<std::uint64_t> seen;
  for (int t = 0; t < horizon; ++t) {
    seen.clear();
    const Level& cur = levels[t];
    Level& next = levels[t + 1];
    for (int p = 0; p < static_cast<int>(cur.nodes.size()); ++p) {
      const Node& parent = cur.nodes[p];
      const double state_cost = StateCost(parent.x, spec, world.field);
      for (int k = 0; k < branches; ++k) {
        if (cfg.max_nodes_per_level > 0 &&
            static_cast<int>(next.nodes.size()) >= cfg.max_nodes_per_level) {
          break;
        }
        const RobotState x = StepDynamics(parent.x, spec.costs.controls[k].u, world.tau);
        if (!seen.insert(CellKey(x, cfg)).second) continue;
        Node child{x, p, static_cast<std::uint8_t>(k),
                   parent.energy + (spec.costs.controls[k].cost + state_cost), 0, 0};
        child.info_begin = static_cast<int>(next.info.size());
        model.Observe(robot, x, t + 1, next.info);
        child.info_end = static_cast<int>(next.info.size());
        next.nodes.push_back(child);
      }
    }
  }

  // Score leaves; keep the best max_candidates.
  const Level& leaves = levels[horizon];
  const double weight = spec.weight;
  std::priority_queue<Ranked, std::vector<Ranked>, WorseOnTop> best;
  Trajectory scratch;
  scratch.robot = robot;
  const Trajectory* one[] = {&scratch};
  for (int leaf = 0; leaf < static_cast<int>(leaves.nodes.size()); ++leaf) {
    scratch.info.clear();
    int idx = leaf;
    for (int t = horizon; t >= 1; --t) {
      const Node& n = levels[t].nodes[idx];
      scratch.info.insert(scratch.info.end(), levels[t].info.begin() + n.info_begin,
                          levels[t].info.begin() + n.info_end);
      idx = n.parent;
    }
    std::stable_sort(scratch.info.begin(), scratch.info.end(),
                     [](const InfoEntry& a, const InfoEntry& b) {
                       if (a.target != b.target) return a.target < b.target;
                       return a.step < b.step;
                     });
    const double score =
        model.MutualInformation(one) - weight * leaves.nodes[leaf].energy;
    const Ranked r{score, leaf};
    if (static_cast<int>(best.size()) < cfg.max_candidates) {
      best.push(r);
    } else if (WorseOnTop()(r, best.top())) {
      best.pop();
      best.push(r);
    }
  }

  std::vector<Ranked> kept;
  while (!best.empty()) {
    kept.push_back(best.top());
    best.pop();
  }
  std::sort(kept.begin(), kept.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.leaf < b.leaf;
  });

  std::vector<Trajectory> out;
  out.reserve(kept.size());
  for (const Ranked& r : kept) {
    std::vector<std::uint8_t> controls(horizon);
    int idx = r.leaf;
    for (int t = horizon; t >= 1; --t) {
      controls[t - 1] = levels[t].nodes[idx].control;
      idx = levels[t].nodes[idx].parent;
    }
    out.push_back(model.MakeTrajectory(robot, std::move(controls)));
  }
  std::stable_sort(out.begin(), out.end(), [](const Trajectory& a, const Trajectory& b) {
    return a.standalone > b.standalone;
  });
  return DownsampleBest(std::move(out), cfg.downsample_fraction);
}

}  // namespace infoplan
