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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "infoplan/errors.h"
#include "infoplan/kernels.h"

namespace infoplan {
namespace {

std::vector<double> RowMajor(const Mat& m) {
  std::vector<double> out(static_cast<size_t>(m.rows() * m.cols()));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out[r * m.cols() + c] = m(r, c);
  }
  return out;
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void FnvMix(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xFF;
    h *= kFnvPrime;
  }
}

// Kernel batches reused across calls, one set per matrix dimension.
struct LaneScratch {
  kernels::SpdBatch cur, pred, info, post;
};

LaneScratch& ScratchFor(int dim) {
  thread_local std::map<int, LaneScratch> cache;
  auto it = cache.find(dim);
  if (it == cache.end()) {
    LaneScratch s{kernels::SpdBatch(dim, kernels::kLanes),
                  kernels::SpdBatch(dim, kernels::kLanes),
                  kernels::SpdBatch(dim, kernels::kLanes),
                  kernels::SpdBatch(dim, kernels::kLanes)};
    it = cache.emplace(dim, std::move(s)).first;
  }
  return it->second;
}

}  // namespace

PartitionMatroid::PartitionMatroid(
    std::vector<std::vector<Trajectory>> partitions) {
  parts_.resize(partitions.size());
  for (size_t i = 0; i < partitions.size(); ++i) {
    auto& part = partitions[i];
    std::stable_sort(part.begin(), part.end(),
                     [](const Trajectory& a, const Trajectory& b) {
                       return a.standalone > b.standalone;
                     });
    for (Trajectory& t : part) {
      if (t.robot != static_cast<int>(i)) {
        throw ContractViolation("PartitionMatroid: trajectory of robot " +
                                std::to_string(t.robot) + " in partition " +
                                std::to_string(i));
      }
      t.id = static_cast<TrajId>(all_.size());
      parts_[i].push_back(t.id);
      all_.push_back(std::move(t));
    }
  }
}

std::uint64_t PartitionMatroid::Hash() const {
  std::uint64_t h = kFnvOffset;
  for (const Trajectory& t : all_) {
    FnvMix(h, static_cast<std::uint64_t>(t.robot));
    FnvMix(h, t.controls.size());
    for (std::uint8_t c : t.controls) FnvMix(h, c);
  }
  return h;
}

int SolutionSet::size() const {
  return static_cast<int>(
      std::count_if(slots_.begin(), slots_.end(), [](TrajId t) { return t != kNop; }));
}

void SolutionSet::Add(const PartitionMatroid& m, TrajId id) {
  const int robot = m.robot_of(id);
  if (slots_.at(robot) != kNop) {
    throw ContractViolation("SolutionSet::Add: robot " + std::to_string(robot) +
                            " already holds trajectory " +
                            std::to_string(slots_[robot]));
  }
  slots_[robot] = id;
}

void SolutionSet::Remove(const PartitionMatroid& m, TrajId id) {
  if (!Contains(m, id)) {
    throw ContractViolation("SolutionSet::Remove: trajectory " +
                            std::to_string(id) + " not in set");
  }
  slots_[m.robot_of(id)] = kNop;
}

std::vector<TrajId> SolutionSet::Ids() const {
  std::vector<TrajId> out;
  for (TrajId t : slots_) {
    if (t != kNop) out.push_back(t);
  }
  return out;
}

size_t SolutionSetHash::operator()(const SolutionSet& s) const {
  std::uint64_t h = kFnvOffset;
  for (TrajId t : s.slots()) FnvMix(h, static_cast<std::uint64_t>(t + 1));
  return static_cast<size_t>(h);
}

TrackingModel::TrackingModel(World world) : world_(std::move(world)) {
  if (world_.horizon < 1) throw ContractViolation("horizon must be >= 1");
  if (world_.tau <= 0.0) throw ContractViolation("tau must be positive");
  for (const RobotSpec& r : world_.robots) {
    if (r.weight < 0.0) throw ContractViolation("robot weight must be >= 0");
  }
  lambda_ = OffsetLambda(world_.robots, world_.field, world_.horizon);
  Precompute();
}

std::span<const double> TrackingModel::GroupA(const Group& g, int t) const {
  return g.a.size() == 1 ? g.a[0] : g.a.at(t);
}

std::span<const double> TrackingModel::GroupW(const Group& g, int t) const {
  return g.w.size() == 1 ? g.w[0] : g.w.at(t);
}

void TrackingModel::Precompute() {
  const int horizon = world_.horizon;
  const int n = static_cast<int>(world_.targets.size());
  means_.assign(n, {});
  prior_.assign(n, {});
  group_of_.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    const TrackedTarget& tgt = world_.targets[j];
    const int d = tgt.model.dim();
    if (tgt.mean.size() != d || tgt.prior.rows() != d || tgt.prior.cols() != d) {
      throw ContractViolation("target " + std::to_string(j) +
                              ": mean/prior do not match model dimension");
    }
    if (!tgt.model.is_constant() && tgt.model.steps() < horizon) {
      throw ContractViolation("target " + std::to_string(j) +
                              ": time-varying model shorter than horizon");
    }
    int g = 0;
    for (; g < static_cast<int>(groups_.size()); ++g) {
      if (world_.targets[groups_[g].targets.front()].model == tgt.model) break;
    }
    if (g == static_cast<int>(groups_.size())) {
      Group grp;
      grp.dim = d;
      for (int t = 0; t < tgt.model.steps(); ++t) {
        grp.a.push_back(RowMajor(tgt.model.transition(t)));
        grp.w.push_back(RowMajor(tgt.model.process_noise(t)));
      }
      groups_.push_back(std::move(grp));
    }
    groups_[g].targets.push_back(j);
    group_of_[j] = g;

    means_[j].push_back(tgt.mean);
    for (int t = 1; t <= horizon; ++t) {
      means_[j].push_back(tgt.model.transition(t - 1) * means_[j].back());
    }
    // Prior-only covariances go through the same kernel as the planner
    // recursion so that a lane started from them matches bit for bit.
    kernels::SpdBatch cur(d, 1), next(d, 1);
    cur.Set(0, RowMajor(Symmetrized(tgt.prior)));
    prior_[j].push_back(cur.Get(0));
    for (int t = 1; t <= horizon; ++t) {
      kernels::Predict(GroupA(groups_[g], t - 1), GroupW(groups_[g], t - 1), cur,
                       next);
      std::swap(cur, next);
      prior_[j].push_back(cur.Get(0));
    }
  }
}

void TrackingModel::Observe(int robot, const RobotState& x, int step,
                            std::vector<InfoEntry>& out) const {
  const SensorProfile& sensor = world_.robots.at(robot).sensor;
  for (int j = 0; j < static_cast<int>(world_.targets.size()); ++j) {
    const TrackedTarget& tgt = world_.targets[j];
    const Vec& mean = means_[j][step];
    const PositionInfo p =
        SensePosition(x, mean(tgt.x_index), mean(tgt.y_index), sensor);
    if (p.visible) out.push_back({j, step, p.m00, p.m01, p.m11});
  }
}

double TrackingModel::TrajectoryEnergy(int robot,
                                       std::span<const std::uint8_t> controls,
                                       std::span<const RobotState> states) const {
  const RobotSpec& spec = world_.robots.at(robot);
  double total = 0.0;
  RobotState x = spec.initial;
  for (size_t t = 0; t < controls.size(); ++t) {
    if (controls[t] >= spec.costs.controls.size()) {
      throw ContractViolation("control index out of range");
    }
    total += spec.costs.controls[controls[t]].cost + StateCost(x, spec, world_.field);
    x = states[t];
  }
  return total;
}

Trajectory TrackingModel::MakeTrajectory(int robot,
                                         std::vector<std::uint8_t> controls) const {
  const RobotSpec& spec = world_.robots.at(robot);
  if (static_cast<int>(controls.size()) != world_.horizon) {
    throw ContractViolation("trajectory length " + std::to_string(controls.size()) +
                            " != horizon " + std::to_string(world_.horizon));
  }
  Trajectory tr;
  tr.robot = robot;
  std::vector<ControlInput> u;
  u.reserve(controls.size());
  for (std::uint8_t c : controls) {
    if (c >= spec.costs.controls.size()) {
      throw ContractViolation("control index out of range");
    }
    u.push_back(spec.costs.controls[c].u);
  }
  tr.states = Rollout(spec.initial, u, world_.tau);
  tr.controls = std::move(controls);
  tr.energy = TrajectoryEnergy(robot, tr.controls, tr.states);
  for (int t = 1; t <= world_.horizon; ++t) {
    Observe(robot, tr.states[t - 1], t, tr.info);
  }
  std::stable_sort(tr.info.begin(), tr.info.end(),
                   [](const InfoEntry& a, const InfoEntry& b) {
                     return a.target < b.target;
                   });
  const Trajectory* self = &tr;
  tr.standalone = J(std::span<const Trajectory* const>(&self, 1));
  return tr;
}

double TrackingModel::MutualInformation(
    std::span<const Trajectory* const> s) const {
  const int horizon = world_.horizon;
  const int n = static_cast<int>(world_.targets.size());
  const size_t stride = static_cast<size_t>(horizon) + 1;

  // Sum the information of all robots per (target, step), in robot order.
  thread_local std::vector<double> acc;
  thread_local std::vector<char> has;
  thread_local std::vector<int> first, last;
  acc.assign(static_cast<size_t>(n) * stride * 3, 0.0);
  has.assign(static_cast<size_t>(n) * stride, 0);
  first.assign(n, horizon + 1);
  last.assign(n, 0);
  bool any = false;
  for (const Trajectory* tr : s) {
    for (const InfoEntry& e : tr->info) {
      const size_t k = e.target * stride + e.step;
      acc[3 * k] += e.m00;
      acc[3 * k + 1] += e.m01;
      acc[3 * k + 2] += e.m11;
      has[k] = 1;
      first[e.target] = std::min(first[e.target], e.step);
      last[e.target] = std::max(last[e.target], e.step);
      any = true;
    }
  }
  if (!any) return 0.0;

  thread_local std::vector<double> per_target;
  per_target.assign(n, 0.0);
  double log_gain[kernels::kLanes];
  for (const Group& grp : groups_) {
    const int d = grp.dim;
    LaneScratch& ls = ScratchFor(d);
    std::vector<int> lanes;
    for (size_t gi = 0; gi <= grp.targets.size(); ++gi) {
      if (gi < grp.targets.size()) {
        const int j = grp.targets[gi];
        if (last[j] > 0) lanes.push_back(j);
        if (static_cast<int>(lanes.size()) < kernels::kLanes) continue;
      }
      if (lanes.empty()) continue;

      int t0 = horizon + 1, t1 = 0;
      for (int j : lanes) {
        t0 = std::min(t0, first[j]);
        t1 = std::max(t1, last[j]);
      }
      for (int b = 0; b < kernels::kLanes; ++b) {
        if (b < static_cast<int>(lanes.size())) {
          ls.cur.Set(b, prior_[lanes[b]][t0 - 1]);
        } else {
          ls.cur.SetZero(b);
          for (int i = 0; i < d; ++i) ls.cur.at(b, i, i) = 1.0;
        }
      }
      for (int t = t0; t <= t1; ++t) {
        kernels::Predict(GroupA(grp, t - 1), GroupW(grp, t - 1), ls.cur, ls.pred);
        bool observed = false;
        for (int b = 0; b < kernels::kLanes; ++b) {
          ls.info.SetZero(b);
          if (b >= static_cast<int>(lanes.size())) continue;
          const int j = lanes[b];
          const size_t k = j * stride + t;
          if (!has[k]) continue;
          const TrackedTarget& tgt = world_.targets[j];
          ls.info.at(b, tgt.x_index, tgt.x_index) = acc[3 * k];
          ls.info.at(b, tgt.x_index, tgt.y_index) = acc[3 * k + 1];
          ls.info.at(b, tgt.y_index, tgt.x_index) = acc[3 * k + 1];
          ls.info.at(b, tgt.y_index, tgt.y_index) = acc[3 * k + 2];
          observed = true;
        }
        if (!observed) {
          std::swap(ls.cur, ls.pred);
          continue;
        }
        kernels::InformationUpdate(ls.pred, ls.info, ls.post, log_gain);
        for (int b = 0; b < static_cast<int>(lanes.size()); ++b) {
          const int j = lanes[b];
          if (has[j * stride + t]) {
            per_target[j] += log_gain[b];
          } else {
            ls.post.CopyLane(b, ls.pred);
          }
        }
        std::swap(ls.cur, ls.post);
      }
      lanes.clear();
    }
  }
  double total = 0.0;
  for (int j = 0; j < n; ++j) total += 0.5 * per_target[j];
  return total;
}

double TrackingModel::Energy(std::span<const Trajectory* const> s) const {
  double total = 0.0;
  for (const Trajectory* tr : s) {
    total += world_.robots.at(tr->robot).weight * tr->energy;
  }
  return total;
}

double TrackingModel::J(std::span<const Trajectory* const> s) const {
  return MutualInformation(s) - Energy(s);
}

double TrackingModel::DenseMutualInformation(
    std::span<const Trajectory* const> s) const {
  const int horizon = world_.horizon;
  const int n = static_cast<int>(world_.targets.size());
  std::vector<int> offset(n + 1, 0);
  for (int j = 0; j < n; ++j) {
    offset[j + 1] = offset[j] + world_.targets[j].model.dim();
  }
  const int dim = offset[n];
  if (dim == 0) return 0.0;

  Mat prior = Mat::Zero(dim, dim);
  std::vector<Mat> a(horizon, Mat::Zero(dim, dim)), w(horizon, Mat::Zero(dim, dim));
  for (int j = 0; j < n; ++j) {
    const TrackedTarget& tgt = world_.targets[j];
    const int d = tgt.model.dim();
    prior.block(offset[j], offset[j], d, d) = tgt.prior;
    for (int t = 0; t < horizon; ++t) {
      a[t].block(offset[j], offset[j], d, d) = tgt.model.transition(t);
      w[t].block(offset[j], offset[j], d, d) = tgt.model.process_noise(t);
    }
  }
  std::vector<std::vector<Mat>> infos(horizon);
  for (const Trajectory* tr : s) {
    const SensorProfile& sensor = world_.robots.at(tr->robot).sensor;
    for (int t = 1; t <= horizon; ++t) {
      Mat m = Mat::Zero(dim, dim);
      bool seen = false;
      for (int j = 0; j < n; ++j) {
        const TrackedTarget& tgt = world_.targets[j];
        const Mat block =
            SensorInfoMatrix(tr->states[t - 1], means_[j][t], sensor,
                             tgt.x_index, tgt.y_index);
        if (block.isZero(0.0)) continue;
        m.block(offset[j], offset[j], block.rows(), block.cols()) = block;
        seen = true;
      }
      if (seen) infos[t - 1].push_back(std::move(m));
    }
  }
  return infoplan::MutualInformation(TargetModel(a, w), prior, infos);
}

std::vector<const Trajectory*> MatroidObjective::Members(
    const SolutionSet& s) const {
  std::vector<const Trajectory*> out;
  for (TrajId id : s.slots()) {
    if (id != kNop) out.push_back(&matroid_.at(id));
  }
  return out;
}

double MatroidObjective::Value(const SolutionSet& s) const {
  return model_.J(Members(s));
}

double MatroidObjective::MutualInformation(const SolutionSet& s) const {
  return model_.MutualInformation(Members(s));
}

double MatroidObjective::Energy(const SolutionSet& s) const {
  return model_.Energy(Members(s));
}

double MatroidObjective::UnweightedEnergy(const SolutionSet& s) const {
  double total = 0.0;
  for (const Trajectory* tr : Members(s)) total += tr->energy;
  return total;
}

Problem MakeProblem(World world, std::vector<std::vector<Trajectory>> partitions) {
  Problem p;
  p.model = std::make_unique<TrackingModel>(std::move(world));
  p.matroid = std::make_unique<PartitionMatroid>(std::move(partitions));
  if (p.matroid->num_robots() != static_cast<int>(p.model->world().robots.size())) {
    throw ContractViolation("MakeProblem: one partition per robot required");
  }
  p.objective = std::make_unique<MatroidObjective>(*p.model, *p.matroid);
  return p;
}

double CountingOracle::J(const SolutionSet& s) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++requests_;
    if (memoize_) {
      auto it = memo_.find(s);
      if (it != memo_.end()) return it->second;
    }
  }
  const double v = f_.Value(s);
  std::lock_guard<std::mutex> lock(mu_);
  if (!memoize_) {
    ++misses_;
  } else if (memo_.emplace(s, v).second) {
    ++misses_;
  }
  return v;
}

double CountingOracle::G(const SolutionSet& s) {
  double j;
  return G(s, j);
}

double CountingOracle::G(const SolutionSet& s, double& j) {
  const double lambda = f_.Offset();
  j = J(s);
  const double g = j + lambda;
  if (g < -1e-9 * std::max(1.0, lambda)) {
    throw ContractViolation("oracle value " + std::to_string(g) +
                            " is negative; offset does not bound the cost");
  }
  return g;
}

std::int64_t CountingOracle::requests() const {
  std::lock_guard<std::mutex> lock(mu_);
  return requests_;
}

std::int64_t CountingOracle::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

void CountingOracle::ResetCounters() {
  std::lock_guard<std::mutex> lock(mu_);
  requests_ = 0;
  misses_ = 0;
  memo_.clear();
}

double MarginalGain(CountingOracle& oracle, const PartitionMatroid& m, TrajId a,
                    const SolutionSet& s) {
  if (s.Contains(m, a)) {
    throw ContractViolation("MarginalGain: trajectory already in the set");
  }
  SolutionSet plus = s;
  plus.Add(m, a);
  return oracle.G(plus) - oracle.G(s);
}

double ImprovementThreshold(double g, double alpha, int n) {
  const double n4 = std::pow(static_cast<double>(std::max(n, 1)), 4);
  const double ulp =
      std::nextafter(g, std::numeric_limits<double>::infinity()) - g;
  return g + std::max(g * alpha / n4, 4.0 * ulp);
}

double Deficiency(double g_s, double g_minus, double alpha, int n) {
  return ImprovementThreshold(g_s, alpha, n) - g_minus;
}

double EnergyCost(const PartitionMatroid& m, const World& world,
                  const SolutionSet& s) {
  double total = 0.0;
  for (TrajId id : s.slots()) {
    if (id == kNop) continue;
    const Trajectory& tr = m.at(id);
    total += world.robots.at(tr.robot).weight * tr.energy;
  }
  return total;
}

double OffsetLambda(std::span<const RobotSpec> robots, const CostField& field,
                    int horizon) {
  double total = 0.0;
  for (const RobotSpec& r : robots) {
    total += r.weight * MaxTrajectoryCost(r, field, horizon);
  }
  return total;
}

}  // namespace infoplan
