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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "infoplan/errors.h"

namespace infoplan {
namespace {

// Classic RK4 on the unicycle ODE.
RobotState Rk4(RobotState x, const ControlInput& u, double tau, int steps) {
  const double h = tau / steps;
  auto f = [&](double th) { return std::array<double, 3>{u.nu * std::cos(th), u.nu * std::sin(th), u.omega}; };
  for (int i = 0; i < steps; ++i) {
    const auto k1 = f(x.theta);
    const auto k2 = f(x.theta + 0.5 * h * k1[2]);
    const auto k3 = f(x.theta + 0.5 * h * k2[2]);
    const auto k4 = f(x.theta + h * k3[2]);
    x.x += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    x.y += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    x.theta += h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
  }
  return x;
}

RobotSpec Ugv(double x = 0, double y = 0, double theta = 0) {
  RobotSpec s;
  s.kind = RobotClass::kUgv;
  s.initial = {x, y, theta};
  s.sensor = UgvSensor(15.0);
  s.costs = CostTable::Ugv();
  return s;
}

RobotSpec Uav() {
  RobotSpec s;
  s.kind = RobotClass::kUav;
  s.sensor = UavSensor(20.0);
  s.costs = CostTable::Uav();
  return s;
}

TEST(StepDynamicsTest, StraightLine) {
  const RobotState x = StepDynamics({0, 0, 0}, {8, 0}, 0.5);
  EXPECT_DOUBLE_EQ(x.x, 4.0);
  EXPECT_DOUBLE_EQ(x.y, 0.0);
  EXPECT_DOUBLE_EQ(x.theta, 0.0);
}

TEST(StepDynamicsTest, TurnInPlace) {
  const RobotState x = StepDynamics({0, 0, 0}, {0, kPi / 2}, 0.5);
  EXPECT_DOUBLE_EQ(x.x, 0.0);
  EXPECT_DOUBLE_EQ(x.y, 0.0);
  EXPECT_DOUBLE_EQ(x.theta, kPi / 4);
}

TEST(StepDynamicsTest, ArcMatchesRk4) {
  for (double omega : {kPi / 2, -kPi / 2}) {
    for (double theta : {0.0, 1.0, -2.5, 3.1}) {
      const RobotState got = StepDynamics({1, -2, theta}, {8, omega}, 0.5);
      const RobotState ref = Rk4({1, -2, theta}, {8, omega}, 0.5, 10000);
      EXPECT_NEAR(got.x, ref.x, 1e-9);
      EXPECT_NEAR(got.y, ref.y, 1e-9);
      EXPECT_NEAR(got.theta, WrapAngle(ref.theta), 1e-9);
    }
  }
}

TEST(StepDynamicsTest, ArcConvergesToStraightLine) {
  const RobotState a = StepDynamics({0, 0, 0.3}, {8, 1e-12}, 0.5);
  const RobotState b = StepDynamics({0, 0, 0.3}, {8, 0}, 0.5);
  EXPECT_LT(std::hypot(a.x - b.x, a.y - b.y), 1e-6);
}

TEST(StepDynamicsTest, HeadingWrapped) {
  const RobotState x = StepDynamics({0, 0, 3.0}, {0, kPi / 2}, 0.5);
  EXPECT_GT(x.theta, -kPi);
  EXPECT_LE(x.theta, kPi);
  EXPECT_NEAR(x.theta, 3.0 + kPi / 4 - 2 * kPi, 1e-15);
  EXPECT_DOUBLE_EQ(WrapAngle(-kPi), kPi);
}

TEST(RolloutTest, EmptyAndComposition) {
  EXPECT_TRUE(Rollout({0, 0, 0}, {}, 0.5).empty());
  const std::vector<ControlInput> u{{8, 0}, {8, 0}};
  const auto states = Rollout({0, 0, 0}, u, 0.5);
  ASSERT_EQ(states.size(), 2u);
  EXPECT_DOUBLE_EQ(states[0].x, 4.0);
  EXPECT_DOUBLE_EQ(states[1].x, 8.0);
}

TEST(RolloutTest, PrefixProperty) {
  std::mt19937_64 rng(21);
  const auto prims = StandardPrimitives();
  std::vector<ControlInput> u;
  for (int t = 0; t < 10; ++t) u.push_back(prims[rng() % prims.size()]);
  const auto full = Rollout({1, 2, 0.5}, u, 0.5);
  const auto head = Rollout({1, 2, 0.5}, std::span(u).first(5), 0.5);
  for (int t = 0; t < 5; ++t) {
    EXPECT_EQ(full[t].x, head[t].x);
    EXPECT_EQ(full[t].y, head[t].y);
    EXPECT_EQ(full[t].theta, head[t].theta);
  }
}

TEST(DoubleIntegratorTest, ConstantVelocityAdvance) {
  const TargetModel m = DoubleIntegratorModel(0.5, 1.0);
  Vec y(4);
  y << 0, 0, 2, 0;
  const Vec next = m.transition(0) * y;
  EXPECT_DOUBLE_EQ(next(0), 1.0);
  EXPECT_DOUBLE_EQ(next(1), 0.0);
  EXPECT_DOUBLE_EQ(next(2), 2.0);
  EXPECT_DOUBLE_EQ(next(3), 0.0);
}

TEST(DoubleIntegratorTest, ZeroIntensityGivesZeroNoise) {
  EXPECT_TRUE(DoubleIntegratorModel(0.5, 0.0).process_noise(0).isZero(0.0));
}

// W = int_0^tau e^{Fs} G q G^T e^{F^T s} ds with F = [[0, I], [0, 0]],
// G = [0; I]; per axis the integrand is q [[s^2, s], [s, 1]].
TEST(DoubleIntegratorTest, NoiseMatchesQuadrature) {
  const double tau = 0.5, q = 1.0;
  const int n = 20000;
  double i00 = 0, i01 = 0, i11 = 0;
  for (int k = 0; k <= n; ++k) {
    const double s = tau * k / n;
    const double wgt = (k == 0 || k == n) ? 1 : (k % 2 ? 4 : 2);
    i00 += wgt * s * s;
    i01 += wgt * s;
    i11 += wgt;
  }
  const double h = tau / n / 3.0;
  const Mat w = DoubleIntegratorModel(tau, q).process_noise(0);
  for (int axis = 0; axis < 2; ++axis) {
    EXPECT_NEAR(w(axis, axis), q * i00 * h, 1e-12);
    EXPECT_NEAR(w(axis, axis + 2), q * i01 * h, 1e-12);
    EXPECT_NEAR(w(axis + 2, axis), q * i01 * h, 1e-12);
    EXPECT_NEAR(w(axis + 2, axis + 2), q * i11 * h, 1e-12);
  }
  EXPECT_EQ(w(0, 1), 0.0);
  EXPECT_EQ(w(0, 3), 0.0);
}

TEST(DoubleIntegratorTest, StacksTargetsBlockDiagonally) {
  const TargetModel m = DoubleIntegratorModel(0.5, 0.2, 3);
  EXPECT_EQ(m.dim(), 12);
  const Mat single = DoubleIntegratorModel(0.5, 0.2).transition(0);
  EXPECT_EQ(Mat(m.transition(0).block(4, 4, 4, 4)), single);
  EXPECT_TRUE(m.transition(0).block(0, 4, 4, 4).isZero(0.0));
}

TEST(SensorTest, BehindNarrowFovIsZero) {
  Vec y(4);
  y << -5, 0, 0, 0;
  EXPECT_TRUE(SensorInfoMatrix({0, 0, 0}, y, UgvSensor(15.0)).isZero(0.0));
}

TEST(SensorTest, BeyondRangeIsZero) {
  Vec y(4);
  y << 15.5, 0, 0, 0;
  EXPECT_TRUE(SensorInfoMatrix({0, 0, 0}, y, UgvSensor(15.0)).isZero(0.0));
  y(0) = 14.5;
  EXPECT_FALSE(SensorInfoMatrix({0, 0, 0}, y, UgvSensor(15.0)).isZero(0.0));
}

TEST(SensorTest, FovBoundaryIsInside) {
  const double r = 5.0, edge = 80.0 * kPi / 180.0;
  EXPECT_TRUE(SensePosition({0, 0, 0}, r * std::cos(edge), r * std::sin(edge),
                            UgvSensor(15.0))
                  .visible);
  EXPECT_TRUE(SensePosition({0, 0, 0}, r * std::cos(edge), -r * std::sin(edge),
                            UgvSensor(15.0))
                  .visible);
  const double out = edge + 1e-6;
  EXPECT_FALSE(SensePosition({0, 0, 0}, r * std::cos(out), r * std::sin(out),
                             UgvSensor(15.0))
                   .visible);
}

TEST(SensorTest, OneDimensionalAnalogue) {
  const double sigma = 0.3;
  Mat h = Mat::Zero(1, 2);
  h(0, 0) = 1.0;
  const Mat m = MeasurementInformation(h, Mat::Constant(1, 1, sigma * sigma));
  EXPECT_NEAR(m(0, 0), 1.0 / (sigma * sigma), 1e-12);
  EXPECT_EQ(m(0, 1), 0.0);
  EXPECT_EQ(m(1, 1), 0.0);
}

// At the range limit both deviations reach their maxima; along +x the range
// Jacobian row is (1, 0) and the bearing row (0, 1/d).
TEST(SensorTest, MaxNoiseAtRangeLimit) {
  const SensorProfile p = UgvSensor(15.0);
  const PositionInfo info = SensePosition({0, 0, 0}, 15.0, 0.0, p);
  ASSERT_TRUE(info.visible);
  const double sb = 5.0 * kPi / 180.0;
  EXPECT_NEAR(info.m00, 1.0 / (0.1 * 0.1), 1e-9);
  EXPECT_NEAR(info.m11, 1.0 / (15.0 * 15.0 * sb * sb), 1e-12);
  EXPECT_NEAR(info.m01, 0.0, 1e-15);
}

// Central-difference Jacobian of (range, bearing) against the analytic one.
TEST(SensorTest, MatchesNumericJacobian) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-10, 10);
  const SensorProfile p = UavSensor(20.0);
  for (int trial = 0; trial < 100; ++trial) {
    const RobotState x{u(rng), u(rng), u(rng) / 4};
    const double tx = u(rng), ty = u(rng);
    const double d = std::hypot(tx - x.x, ty - x.y);
    if (d > 20.0 || d < 0.5) continue;
    auto meas = [&](double px, double py) {
      return std::array<double, 2>{std::hypot(px - x.x, py - x.y),
                                   std::atan2(py - x.y, px - x.x)};
    };
    const double e = 1e-6;
    Mat h(2, 2);
    for (int c = 0; c < 2; ++c) {
      const auto hi = meas(tx + (c == 0 ? e : 0), ty + (c == 1 ? e : 0));
      const auto lo = meas(tx - (c == 0 ? e : 0), ty - (c == 1 ? e : 0));
      h(0, c) = (hi[0] - lo[0]) / (2 * e);
      h(1, c) = (hi[1] - lo[1]) / (2 * e);
    }
    const double f = 0.01;
    const double sr = 0.1, sb = 5.0 * kPi / 180.0;
    const double vr = (f * sr) * (f * sr) + (sr * sr - (f * sr) * (f * sr)) * d / 20.0;
    const double vb = (f * sb) * (f * sb) + (sb * sb - (f * sb) * (f * sb)) * d / 20.0;
    Mat v = Mat::Zero(2, 2);
    v(0, 0) = vr;
    v(1, 1) = vb;
    const Mat expected = MeasurementInformation(h, v);
    const PositionInfo got = SensePosition(x, tx, ty, p);
    ASSERT_TRUE(got.visible);
    const double scale = expected.cwiseAbs().maxCoeff();
    EXPECT_NEAR(got.m00, expected(0, 0), 1e-5 * scale);
    EXPECT_NEAR(got.m01, expected(0, 1), 1e-5 * scale);
    EXPECT_NEAR(got.m11, expected(1, 1), 1e-5 * scale);
  }
}

TEST(SensorTest, AlwaysPsd) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int trial = 0; trial < 500; ++trial) {
    Vec y(4);
    y << u(rng), u(rng), 0, 0;
    const Mat m = SensorInfoMatrix({u(rng), u(rng), u(rng)}, y, UgvSensor(15.0));
    const Eigen::SelfAdjointEigenSolver<Mat> eig(m);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-9 * std::max(1.0, m.norm()));
  }
}

TEST(SensorTest, UnboundedRangeSeesFarTargets) {
  const PositionInfo p =
      SensePosition({0, 0, 0}, 1000.0, 0.0, UavSensor(kUnboundedRange));
  EXPECT_TRUE(p.visible);
}

TEST(CostTest, StateCostTableEntries) {
  CostField field;
  field.regions.push_back({RegionKind::kMud, 0, 0, 10, 10});
  field.regions.push_back({RegionKind::kWind, 5, 5, 15, 15});
  EXPECT_EQ(StateCost({1, 1, 0}, Ugv(), field), 3.0);
  EXPECT_EQ(StateCost({1, 1, 0}, Uav(), field), 0.0);
  EXPECT_EQ(StateCost({7, 7, 0}, Ugv(), field), 3.0);
  EXPECT_EQ(StateCost({7, 7, 0}, Uav(), field), 3.0);
  EXPECT_EQ(StateCost({20, 20, 0}, Ugv(), field), 0.0);
}

TEST(CostTest, OverlappingRegionsDoNotStack) {
  CostField field;
  field.regions.push_back({RegionKind::kMud, 0, 0, 10, 10});
  field.regions.push_back({RegionKind::kMud, 5, 5, 15, 15});
  EXPECT_EQ(StateCost({7, 7, 0}, Ugv(), field), 3.0);
}

TEST(CostTest, ControlCostTableEntries) {
  EXPECT_EQ(ControlCost({0, 0}, Ugv()), 0.0);
  EXPECT_EQ(ControlCost({0, 0}, Uav()), 2.0);
  EXPECT_EQ(ControlCost({8, kPi / 2}, Ugv()), 2.0);
  EXPECT_EQ(ControlCost({8, -kPi / 2}, Ugv()), 2.0);
  EXPECT_EQ(ControlCost({0, kPi / 2}, Ugv()), 1.0);
  EXPECT_EQ(ControlCost({8, kPi / 2}, Uav()), 4.0);
  EXPECT_THROW(ControlCost({3, 0}, Ugv()), ContractViolation);
}

TEST(CostTest, MaxCostsOnlyCountPresentRegions) {
  CostField none, mud;
  mud.regions.push_back({RegionKind::kMud, 0, 0, 1, 1});
  EXPECT_EQ(MaxTrajectoryCost(Ugv(), none, 10), 20.0);
  EXPECT_EQ(MaxTrajectoryCost(Ugv(), mud, 10), 50.0);
  EXPECT_EQ(MaxTrajectoryCost(Uav(), mud, 10), 40.0);
}

}  // namespace
}  // namespace infoplan
