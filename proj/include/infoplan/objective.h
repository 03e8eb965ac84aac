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

// Ground set, admissible sets and the set functions the solvers maximize.
//
//   J(S) = I(y_{1:T}; z_{S,1:T}) - C(S)     (may be negative)
//   g(S) = J(S) + lambda                    (non-negative)

#ifndef INFOPLAN_OBJECTIVE_H_
#define INFOPLAN_OBJECTIVE_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "infoplan/world.h"

namespace infoplan {

using TrajId = int;
inline constexpr TrajId kNop = -1;

// Position information one trajectory gathers about one target at one step.
struct InfoEntry {
  int target = 0;
  int step = 0;  // 1..T
  double m00 = 0.0;
  double m01 = 0.0;
  double m11 = 0.0;
};

struct Trajectory {
  TrajId id = kNop;
  int robot = 0;
  std::vector<std::uint8_t> controls;  // indices into the robot's primitives
  std::vector<RobotState> states;      // x_1 .. x_T
  double energy = 0.0;                 // C_i, not weighted by r_i
  double standalone = 0.0;             // J({a})
  std::vector<InfoEntry> info;         // sorted by (target, step)
};

// Ground set split by robot. Ids are global and robot-major; within a
// partition trajectories are sorted by standalone score descending.
class PartitionMatroid {
 public:
  PartitionMatroid() = default;
  // Sorts each partition (stable, by standalone descending) and assigns ids.
  explicit PartitionMatroid(std::vector<std::vector<Trajectory>> partitions);

  int num_robots() const { return static_cast<int>(parts_.size()); }
  int size() const { return static_cast<int>(all_.size()); }
  int partition_size(int robot) const {
    return static_cast<int>(parts_.at(robot).size());
  }
  std::span<const TrajId> partition(int robot) const { return parts_.at(robot); }
  const Trajectory& at(TrajId id) const { return all_.at(id); }
  int robot_of(TrajId id) const { return all_.at(id).robot; }
  std::span<const Trajectory> trajectories() const { return all_; }

  // Order-sensitive hash of every trajectory's robot and controls.
  std::uint64_t Hash() const;

 private:
  std::vector<Trajectory> all_;
  std::vector<std::vector<TrajId>> parts_;
};

// At most one trajectory per robot, stored as one slot per robot.
class SolutionSet {
 public:
  SolutionSet() = default;
  explicit SolutionSet(int num_robots) : slots_(num_robots, kNop) {}

  int num_robots() const { return static_cast<int>(slots_.size()); }
  TrajId slot(int robot) const { return slots_.at(robot); }
  bool has(int robot) const { return slots_.at(robot) != kNop; }
  bool Contains(const PartitionMatroid& m, TrajId id) const {
    return id != kNop && slots_.at(m.robot_of(id)) == id;
  }
  int size() const;
  bool empty() const { return size() == 0; }

  // Throws ContractViolation if the robot already holds a trajectory.
  void Add(const PartitionMatroid& m, TrajId id);
  // Throws ContractViolation if `id` is not in the set.
  void Remove(const PartitionMatroid& m, TrajId id);
  void Clear(int robot) { slots_.at(robot) = kNop; }

  // Member ids ascending (robot-major order).
  std::vector<TrajId> Ids() const;
  const std::vector<TrajId>& slots() const { return slots_; }

  bool operator==(const SolutionSet& o) const { return slots_ == o.slots_; }

 private:
  std::vector<TrajId> slots_;
};

struct SolutionSetHash {
  size_t operator()(const SolutionSet& s) const;
};

// Set function over admissible sets: Value is J, Offset is lambda.
class SetFunction {
 public:
  virtual ~SetFunction() = default;
  virtual double Value(const SolutionSet& s) const = 0;
  virtual double Offset() const = 0;
};

// Target-tracking physics for one world: target priors, predicted means and
// the mutual-information and energy terms of J.
class TrackingModel {
 public:
  explicit TrackingModel(World world);

  const World& world() const { return world_; }
  int horizon() const { return world_.horizon; }

  // Rolls out and scores a control sequence (primitive indices). The result
  // has no id and its standalone score is J({a}).
  Trajectory MakeTrajectory(int robot, std::vector<std::uint8_t> controls) const;

  // Information entries for robot `robot` at state `x` and step t.
  void Observe(int robot, const RobotState& x, int step,
               std::vector<InfoEntry>& out) const;
  // Unweighted energy of a control sequence given its rollout.
  double TrajectoryEnergy(int robot, std::span<const std::uint8_t> controls,
                          std::span<const RobotState> states) const;

  // The arguments hold at most one trajectory per robot, in robot order.
  double MutualInformation(std::span<const Trajectory* const> s) const;
  double Energy(std::span<const Trajectory* const> s) const;
  double J(std::span<const Trajectory* const> s) const;

  // Same quantity through the dense Eigen recursion on the stacked joint
  // target state. Used for cross-checking.
  double DenseMutualInformation(std::span<const Trajectory* const> s) const;

  double Lambda() const { return lambda_; }

  // Predicted target mean A^t mu_0 at step t.
  const Vec& PredictedMean(int target, int step) const {
    return means_.at(target).at(step);
  }

 private:
  // Targets sharing one TargetModel; their recursions run in kernel lanes.
  struct Group {
    int dim = 0;
    std::vector<std::vector<double>> a;  // row-major, one per stored step
    std::vector<std::vector<double>> w;
    std::vector<int> targets;
  };
  std::span<const double> GroupA(const Group& g, int t) const;
  std::span<const double> GroupW(const Group& g, int t) const;
  void Precompute();

  World world_;
  double lambda_ = 0.0;
  std::vector<std::vector<Vec>> means_;  // [target][t], t = 0..T
  // Covariance with no measurements, [target][t] row-major, t = 0..T.
  std::vector<std::vector<std::vector<double>>> prior_;
  std::vector<Group> groups_;
  std::vector<int> group_of_;
};

// J and lambda of trajectory sets drawn from a ground set.
class MatroidObjective : public SetFunction {
 public:
  MatroidObjective(const TrackingModel& model, const PartitionMatroid& matroid)
      : model_(model), matroid_(matroid) {}

  double Value(const SolutionSet& s) const override;
  double Offset() const override { return model_.Lambda(); }

  double MutualInformation(const SolutionSet& s) const;
  double Energy(const SolutionSet& s) const;
  // Energy without the r_i weights.
  double UnweightedEnergy(const SolutionSet& s) const;

 private:
  std::vector<const Trajectory*> Members(const SolutionSet& s) const;

  const TrackingModel& model_;
  const PartitionMatroid& matroid_;
};

// A world, its candidate trajectories and the objective over them.
struct Problem {
  std::unique_ptr<TrackingModel> model;
  std::unique_ptr<PartitionMatroid> matroid;
  std::unique_ptr<MatroidObjective> objective;
};

Problem MakeProblem(World world, std::vector<std::vector<Trajectory>> partitions);

// Memoizing, counting wrapper around a SetFunction. `requests` counts every
// evaluation request and `misses` the distinct sets actually evaluated; the
// reported oracle-call metric is `misses`. Thread-safe.
class CountingOracle {
 public:
  explicit CountingOracle(const SetFunction& f, bool memoize = true)
      : f_(f), memoize_(memoize) {}

  double J(const SolutionSet& s);
  // J(S) + lambda. Throws ContractViolation if the result is negative, which
  // means the offset does not bound the energy cost.
  double G(const SolutionSet& s);
  // G(s), also returning the J(s) it was computed from.
  double G(const SolutionSet& s, double& j);
  double Offset() const { return f_.Offset(); }

  std::int64_t requests() const;
  std::int64_t misses() const;
  void ResetCounters();

 private:
  const SetFunction& f_;
  bool memoize_;
  mutable std::mutex mu_;
  std::unordered_map<SolutionSet, double, SolutionSetHash> memo_;
  std::int64_t requests_ = 0;
  std::int64_t misses_ = 0;
};

// g(S + a) - g(S). Throws ContractViolation when a is in S or S + a is not
// admissible.
double MarginalGain(CountingOracle& oracle, const PartitionMatroid& m,
                    TrajId a, const SolutionSet& s);

// Acceptance threshold for an improving local operation from a set of value
// g: g + max(g * alpha / N^4, 4 ulp(g)).
double ImprovementThreshold(double g, double alpha, int n);

// Deficiency of S^- = S \ {d}: threshold(g(S)) - g(S^-). Adding `a` to S^- is
// an admissible improvement iff J(S^- + a) - J(S^-) >= deficiency; with no
// addition the deletion alone suffices iff deficiency <= 0.
double Deficiency(double g_s, double g_minus, double alpha, int n);

double EnergyCost(const PartitionMatroid& m, const World& world,
                  const SolutionSet& s);
double OffsetLambda(std::span<const RobotSpec> robots, const CostField& field,
                    int horizon);

}  // namespace infoplan

#endif  // INFOPLAN_OBJECTIVE_H_
