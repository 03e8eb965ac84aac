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

// Robots, sensors, targets and the terrain cost field.

#ifndef INFOPLAN_WORLD_H_
#define INFOPLAN_WORLD_H_

#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "infoplan/filtering.h"

namespace infoplan {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kUnboundedRange = std::numeric_limits<double>::infinity();

// Planar pose; theta in (-pi, pi].
struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Linear (m/s) and angular (rad/s) velocity.
struct ControlInput {
  double nu = 0.0;
  double omega = 0.0;
};

enum class RobotClass { kUgv, kUav };
std::string_view RobotClassName(RobotClass kind);

// Range-bearing sensor. Noise standard deviations grow linearly with
// distance from noise_floor_fraction * max at zero range to the max at the
// range limit. Outside range or field of view the sensor yields no
// information.
struct SensorProfile {
  double fov_deg = 360.0;
  double range = kUnboundedRange;
  double sigma_range_max = 0.1;        // m
  double sigma_bearing_max_deg = 5.0;  // deg
  double noise_floor_fraction = 0.01;

  bool bounded() const { return range < kUnboundedRange; }
};

struct Primitive {
  ControlInput u;
  double cost = 0.0;
};

// Per-class energy costs: one entry per motion primitive plus terrain costs.
struct CostTable {
  std::vector<Primitive> controls;
  double mud = 0.0;
  double wind = 0.0;

  static CostTable Ugv();
  static CostTable Uav();
};

// nu in {0, 8} m/s, omega in {0, +-pi/2} rad/s; the stationary primitive is
// listed first.
std::vector<ControlInput> StandardPrimitives();

SensorProfile UgvSensor(double range);
SensorProfile UavSensor(double range);

enum class RegionKind { kMud, kWind };
std::string_view RegionKindName(RegionKind kind);

// Closed axis-aligned rectangle.
struct Region {
  RegionKind kind = RegionKind::kMud;
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  bool Contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
};

struct CostField {
  std::vector<Region> regions;

  bool Has(RegionKind kind) const;
};

struct RobotSpec {
  int id = 0;
  RobotClass kind = RobotClass::kUgv;
  RobotState initial;
  SensorProfile sensor;
  CostTable costs;
  double weight = 1.0;  // r_i
};

// A target block with its own dynamics, prior and mean estimate. The sensor
// observes the position components at (x_index, y_index).
struct TrackedTarget {
  TargetModel model;
  Vec mean;
  Mat prior;
  int x_index = 0;
  int y_index = 1;
};

struct World {
  double tau = 0.5;
  int horizon = 10;
  std::vector<RobotSpec> robots;
  std::vector<TrackedTarget> targets;
  CostField field;
};

double WrapAngle(double angle);

// Exact unicycle integration over one period.
RobotState StepDynamics(const RobotState& x, const ControlInput& u, double tau);

// x_1 .. x_T.
std::vector<RobotState> Rollout(const RobotState& x0,
                                std::span<const ControlInput> controls,
                                double tau);

// Position/velocity double integrator per target, (px, py, vx, vy), with
// white-noise acceleration of intensity q. num_targets blocks are stacked
// block-diagonally.
TargetModel DoubleIntegratorModel(double tau, double q, int num_targets = 1);

// Static 2-D targets: A = I, W = eps * I.
TargetModel StaticTargetModel(int num_targets = 1, double eps = 1e-9);

// Information about a target position from one range-bearing measurement.
struct PositionInfo {
  bool visible = false;
  double m00 = 0.0;
  double m01 = 0.0;
  double m11 = 0.0;
};

PositionInfo SensePosition(const RobotState& x, double target_x,
                           double target_y, const SensorProfile& profile);

// Full dim x dim H^T V^-1 H for a target whose position sits at
// (x_index, y_index) of `target_estimate`; zero when gated out.
Mat SensorInfoMatrix(const RobotState& x, const Vec& target_estimate,
                     const SensorProfile& profile, int x_index = 0,
                     int y_index = 1);

double StateCost(const RobotState& x, const RobotSpec& spec,
                 const CostField& field);

// Index into spec.costs.controls. Throws ContractViolation for a control not
// in the table.
int PrimitiveIndex(const ControlInput& u, const RobotSpec& spec);
double ControlCost(const ControlInput& u, const RobotSpec& spec);

double MaxControlCost(const RobotSpec& spec);
// Largest terrain cost the robot can incur in this field.
double MaxStateCost(const RobotSpec& spec, const CostField& field);
// c^max_i: bound on the unweighted cost of any length-`horizon` trajectory.
double MaxTrajectoryCost(const RobotSpec& spec, const CostField& field,
                         int horizon);

}  // namespace infoplan

#endif  // INFOPLAN_WORLD_H_
