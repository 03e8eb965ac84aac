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

#include "infoplan/world.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "infoplan/errors.h"

namespace infoplan {
namespace {

constexpr double kMinDistance = 1e-6;
// Slack on the field-of-view half angle so that a target placed exactly on
// the boundary is not lost to atan2 rounding.
constexpr double kFovSlack = 1e-12;

double DegToRad(double deg) { return deg * kPi / 180.0; }

// sin(x) / x, accurate near zero.
double Sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// Variance interpolated linearly between the floor and max variance.
double NoiseVariance(double sigma_max, double d, const SensorProfile& p) {
  const double v_max = sigma_max * sigma_max;
  if (!p.bounded()) return v_max;
  const double floor = p.noise_floor_fraction * sigma_max;
  const double v_floor = floor * floor;
  const double frac = std::min(d / p.range, 1.0);
  return v_floor + (v_max - v_floor) * frac;
}

}  // namespace

std::string_view RobotClassName(RobotClass kind) {
  return kind == RobotClass::kUgv ? "ugv" : "uav";
}

std::string_view RegionKindName(RegionKind kind) {
  return kind == RegionKind::kMud ? "mud" : "wind";
}

std::vector<ControlInput> StandardPrimitives() {
  std::vector<ControlInput> out;
  for (double nu : {0.0, 8.0}) {
    for (double omega : {0.0, kPi / 2, -kPi / 2}) out.push_back({nu, omega});
  }
  return out;
}

CostTable CostTable::Ugv() {
  CostTable t;
  const double costs[] = {0, 1, 1, 2, 2, 2};
  const auto prims = StandardPrimitives();
  for (size_t k = 0; k < prims.size(); ++k) t.controls.push_back({prims[k], costs[k]});
  t.mud = 3.0;
  t.wind = 0.0;
  return t;
}

CostTable CostTable::Uav() {
  CostTable t;
  const double costs[] = {2, 2, 2, 4, 4, 4};
  const auto prims = StandardPrimitives();
  for (size_t k = 0; k < prims.size(); ++k) t.controls.push_back({prims[k], costs[k]});
  t.mud = 0.0;
  t.wind = 3.0;
  return t;
}

SensorProfile UgvSensor(double range) {
  SensorProfile p;
  p.fov_deg = 160.0;
  p.range = range;
  return p;
}

SensorProfile UavSensor(double range) {
  SensorProfile p;
  p.fov_deg = 360.0;
  p.range = range;
  return p;
}

bool CostField::Has(RegionKind kind) const {
  return std::any_of(regions.begin(), regions.end(),
                     [kind](const Region& r) { return r.kind == kind; });
}

double WrapAngle(double angle) {
  double a = std::remainder(angle, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

RobotState StepDynamics(const RobotState& x, const ControlInput& u,
                        double tau) {
  const double turn = u.omega * tau;
  const double advance = u.nu * tau * Sinc(turn / 2.0);
  const double mid = x.theta + turn / 2.0;
  return {x.x + advance * std::cos(mid), x.y + advance * std::sin(mid),
          WrapAngle(x.theta + turn)};
}

std::vector<RobotState> Rollout(const RobotState& x0,
                                std::span<const ControlInput> controls,
                                double tau) {
  std::vector<RobotState> out;
  out.reserve(controls.size());
  RobotState x = x0;
  for (const ControlInput& u : controls) {
    x = StepDynamics(x, u, tau);
    out.push_back(x);
  }
  return out;
}

TargetModel DoubleIntegratorModel(double tau, double q, int num_targets) {
  if (tau <= 0.0 || q < 0.0 || num_targets < 1) {
    throw ContractViolation("DoubleIntegratorModel: need tau > 0, q >= 0");
  }
  const int d = 4 * num_targets;
  Mat a = Mat::Identity(d, d);
  Mat w = Mat::Zero(d, d);
  const double t3 = tau * tau * tau / 3.0;
  const double t2 = tau * tau / 2.0;
  for (int k = 0; k < num_targets; ++k) {
    const int o = 4 * k;
    for (int j = 0; j < 2; ++j) {
      a(o + j, o + 2 + j) = tau;
      w(o + j, o + j) = q * t3;
      w(o + j, o + 2 + j) = q * t2;
      w(o + 2 + j, o + j) = q * t2;
      w(o + 2 + j, o + 2 + j) = q * tau;
    }
  }
  return TargetModel(a, w);
}

TargetModel StaticTargetModel(int num_targets, double eps) {
  if (num_targets < 1 || eps < 0.0) {
    throw ContractViolation("StaticTargetModel: bad arguments");
  }
  const int d = 2 * num_targets;
  return TargetModel(Mat::Identity(d, d), eps * Mat::Identity(d, d));
}

PositionInfo SensePosition(const RobotState& x, double target_x,
                           double target_y, const SensorProfile& profile) {
  const double dx = target_x - x.x;
  const double dy = target_y - x.y;
  const double d = std::max(std::hypot(dx, dy), kMinDistance);
  if (profile.bounded() && d > profile.range) return {};
  if (profile.fov_deg < 360.0) {
    const double bearing = WrapAngle(std::atan2(dy, dx) - x.theta);
    if (std::abs(bearing) > DegToRad(profile.fov_deg) / 2.0 + kFovSlack) {
      return {};
    }
  }
  const double vr = NoiseVariance(profile.sigma_range_max, d, profile);
  const double vb =
      NoiseVariance(DegToRad(profile.sigma_bearing_max_deg), d, profile);
  // Rows of H: d(range)/dp = (dx, dy)/d, d(bearing)/dp = (-dy, dx)/d^2.
  const double h00 = dx / d, h01 = dy / d;
  const double d2 = d * d;
  const double h10 = -dy / d2, h11 = dx / d2;
  PositionInfo info;
  info.visible = true;
  info.m00 = h00 * h00 / vr + h10 * h10 / vb;
  info.m01 = h00 * h01 / vr + h10 * h11 / vb;
  info.m11 = h01 * h01 / vr + h11 * h11 / vb;
  return info;
}

Mat SensorInfoMatrix(const RobotState& x, const Vec& target_estimate,
                     const SensorProfile& profile, int x_index, int y_index) {
  const int dim = static_cast<int>(target_estimate.size());
  if (x_index < 0 || y_index < 0 || x_index >= dim || y_index >= dim ||
      x_index == y_index) {
    throw ContractViolation("SensorInfoMatrix: bad position indices");
  }
  Mat m = Mat::Zero(dim, dim);
  const PositionInfo p =
      SensePosition(x, target_estimate(x_index), target_estimate(y_index), profile);
  if (!p.visible) return m;
  m(x_index, x_index) = p.m00;
  m(x_index, y_index) = p.m01;
  m(y_index, x_index) = p.m01;
  m(y_index, y_index) = p.m11;
  return m;
}

double StateCost(const RobotState& x, const RobotSpec& spec,
                 const CostField& field) {
  double cost = 0.0;
  for (const Region& r : field.regions) {
    if (!r.Contains(x.x, x.y)) continue;
    const double c = r.kind == RegionKind::kMud ? spec.costs.mud : spec.costs.wind;
    cost = std::max(cost, c);
  }
  return cost;
}

int PrimitiveIndex(const ControlInput& u, const RobotSpec& spec) {
  const auto& table = spec.costs.controls;
  for (size_t k = 0; k < table.size(); ++k) {
    if (table[k].u.nu == u.nu && table[k].u.omega == u.omega) {
      return static_cast<int>(k);
    }
  }
  throw ContractViolation("control (" + std::to_string(u.nu) + ", " +
                          std::to_string(u.omega) + ") is not a primitive of " +
                          std::string(RobotClassName(spec.kind)) + " " +
                          std::to_string(spec.id));
}

double ControlCost(const ControlInput& u, const RobotSpec& spec) {
  return spec.costs.controls[PrimitiveIndex(u, spec)].cost;
}

double MaxControlCost(const RobotSpec& spec) {
  double m = 0.0;
  for (const Primitive& p : spec.costs.controls) m = std::max(m, p.cost);
  return m;
}

double MaxStateCost(const RobotSpec& spec, const CostField& field) {
  double m = 0.0;
  if (field.Has(RegionKind::kMud)) m = std::max(m, spec.costs.mud);
  if (field.Has(RegionKind::kWind)) m = std::max(m, spec.costs.wind);
  return m;
}

double MaxTrajectoryCost(const RobotSpec& spec, const CostField& field,
                         int horizon) {
  return horizon * (MaxControlCost(spec) + MaxStateCost(spec, field));
}

}  // namespace infoplan
