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


// Instance helpers shared by the solver tests.

#ifndef INFOPLAN_TESTS_UNIT_PROBLEM_UTIL_H_
#define INFOPLAN_TESTS_UNIT_PROBLEM_UTIL_H_

#include <cstdint>
#include <limits>
#include <vector>

#include "infoplan/objective.h"

namespace infoplan::testing {

// Every admissible set: each robot picks one of its trajectories or none.
inline std::vector<SolutionSet> AllSets(const PartitionMatroid& m) {
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

// max g over all admissible sets, evaluated directly on the objective.
inline double OptimalG(const Problem& p) {
  double best = -std::numeric_limits<double>::infinity();
  for (const SolutionSet& s : AllSets(*p.matroid)) {
    best = std::max(best, p.objective->Value(s) + p.objective->Offset());
  }
  return best;
}

// The same world and control sequences rebuilt with every r_i scaled.
inline Problem Reweighted(const Problem& p, double factor) {
  World w = p.model->world();
  for (RobotSpec& r : w.robots) r.weight *= factor;
  TrackingModel model(w);
  std::vector<std::vector<Trajectory>> parts(w.robots.size());
  for (const Trajectory& t : p.matroid->trajectories()) {
    parts[t.robot].push_back(model.MakeTrajectory(t.robot, t.controls));
  }
  return MakeProblem(std::move(w), std::move(parts));
}

// One static target at (tx, ty) with a loose prior.
inline TrackedTarget StaticTarget(double tx, double ty) {
  TrackedTarget t;
  t.model = StaticTargetModel(1);
  t.mean = Vec(2);
  t.mean << tx, ty;
  t.prior = 4.0 * Mat::Identity(2, 2);
  return t;
}

inline RobotSpec Robot(int id, RobotClass kind, RobotState x0, double weight) {
  RobotSpec r;
  r.id = id;
  r.kind = kind;
  r.initial = x0;
  r.sensor = kind == RobotClass::kUgv ? UgvSensor(15.0) : UavSensor(20.0);
  r.costs = kind == RobotClass::kUgv ? CostTable::Ugv() : CostTable::Uav();
  r.weight = weight;
  return r;
}

inline std::vector<std::uint8_t> Repeat(std::uint8_t u, int t) {
  return std::vector<std::uint8_t>(t, u);
}

}  // namespace infoplan::testing

#endif  // INFOPLAN_TESTS_UNIT_PROBLEM_UTIL_H_
