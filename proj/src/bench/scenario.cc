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


#include "infoplan/bench/scenario.h"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "infoplan/bench/random_instance.h"
#include "infoplan/errors.h"

namespace infoplan::bench {
namespace {

class Fnv {
 public:
  void Add(const void* data, size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t k = 0; k < n; ++k) {
      h_ ^= p[k];
      h_ *= 0x100000001B3ULL;
    }
  }
  void Add(double x) { Add(&x, sizeof x); }
  void Add(int x) { Add(&x, sizeof x); }
  void Add(const Mat& m) {
    Add(static_cast<int>(m.rows()));
    Add(static_cast<int>(m.cols()));
    for (Eigen::Index i = 0; i < m.size(); ++i) Add(m.data()[i]);
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xCBF29CE484222325ULL;
};

Mat DiagonalPrior(const std::vector<double>& diag, int dim) {
  if (static_cast<int>(diag.size()) != dim) {
    throw ConfigError("prior_diag", 0, "needs " + std::to_string(dim) + " entries");
  }
  Mat p = Mat::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) p(k, k) = diag[k];
  return p;
}

RobotSpec MakeRobot(int id, RobotClass kind, const RobotProfile& profile,
                    RobotState x0, double weight) {
  RobotSpec r;
  r.id = id;
  r.kind = kind;
  r.initial = x0;
  r.sensor = profile.sensor;
  r.costs = profile.costs;
  r.weight = weight;
  return r;
}

}  // namespace

std::uint64_t Rng::Next() { return SplitMix64(state_); }

double Rng::Uniform(double lo, double hi) {
  const double u = static_cast<double>(Next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::string_view SolverName(SolverKind k) {
  switch (k) {
    case SolverKind::kDls:
      return "dls";
    case SolverKind::kCd:
      return "cd";
    case SolverKind::kCls:
      return "cls";
  }
  return "unknown";
}

std::string Variant::OptionName() const {
  std::vector<std::string> parts;
  if (solver == SolverKind::kCd) {
    parts.push_back(cheap_first ? "cheap_first" : "expensive_first");
  } else {
    if (solver == SolverKind::kDls && !lazy && !warm) parts.push_back("naive");
    if (lazy) parts.push_back("lazy");
    if (warm) parts.push_back("warm");
    if (schedule) parts.push_back(std::string(ScheduleName(*schedule)));
  }
  if (downsample < 1.0) {
    parts.push_back("ds" + std::to_string(static_cast<int>(std::lround(downsample * 100))));
  }
  std::string out;
  for (const std::string& p : parts) out += (out.empty() ? "" : "_") + p;
  return out.empty() ? "default" : out;
}

std::string Variant::Name() const {
  const std::string opts = OptionName();
  return std::string(SolverName(solver)) + (opts == "default" ? "" : "_" + opts);
}

Variant ParseVariant(std::string_view name) {
  std::vector<std::string> tokens;
  size_t start = 0;
  while (start <= name.size()) {
    const size_t end = std::min(name.find('_', start), name.size());
    tokens.emplace_back(name.substr(start, end - start));
    start = end + 1;
  }
  auto fail = [&](const std::string& why) -> Variant {
    throw ConfigError("variants", 0, "'" + std::string(name) + "': " + why);
  };
  Variant v;
  if (tokens[0] == "dls") {
    v.solver = SolverKind::kDls;
  } else if (tokens[0] == "cd") {
    v.solver = SolverKind::kCd;
  } else if (tokens[0] == "cls") {
    v.solver = SolverKind::kCls;
  } else {
    return fail("unknown solver");
  }
  for (size_t k = 1; k < tokens.size(); ++k) {
    const std::string& t = tokens[k];
    if (v.solver == SolverKind::kCd && (t == "cheap" || t == "expensive") &&
        k + 1 < tokens.size() && tokens[k + 1] == "first") {
      v.cheap_first = t == "cheap";
      ++k;
    } else if (v.solver != SolverKind::kCd && t == "lazy") {
      v.lazy = true;
    } else if (v.solver == SolverKind::kDls && t == "warm") {
      v.warm = true;
    } else if (v.solver == SolverKind::kDls && t == "naive") {
    } else if (v.solver == SolverKind::kDls && t == "concurrent") {
      v.schedule = Schedule::kConcurrent;
    } else if (v.solver == SolverKind::kDls && t == "canonical") {
      v.schedule = Schedule::kCanonical;
    } else if (t.size() > 2 && t.compare(0, 2, "ds") == 0 &&
               std::all_of(t.begin() + 2, t.end(), ::isdigit)) {
      const int pct = std::stoi(t.substr(2));
      if (pct < 1 || pct > 100) return fail("downsample percent must be in 1..100");
      v.downsample = pct / 100.0;
    } else {
      return fail("unknown option '" + t + "'");
    }
  }
  return v;
}

ScenarioConfig DefaultScenario1() {
  ScenarioConfig c;
  c.scenario = 1;
  c.sweep = {2, 3, 4, 5, 6};
  c.horizon = 10;
  c.prior_diag = {4, 4, 1, 1};
  c.ugv = {UgvSensor(6.0), CostTable::Ugv()};
  c.uav = {UavSensor(kUnboundedRange), CostTable::Uav()};
  for (const char* v : {"dls_naive", "dls_lazy", "dls_warm", "dls_lazy_warm",
                        "dls_lazy_warm_ds10", "cd_cheap_first", "cd_expensive_first"}) {
    c.variants.push_back(ParseVariant(v));
  }
  c.out_dir = "out/scenario1";
  return c;
}

ScenarioConfig DefaultScenario2() {
  ScenarioConfig c;
  c.scenario = 2;
  c.sweep = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  c.horizon = 20;
  c.num_targets = 10;
  c.prior_diag = {4, 4};
  c.trajgen.cell_size = 1.0;
  c.ugv = {UgvSensor(15.0), CostTable::Ugv()};
  c.uav = {UavSensor(20.0), CostTable::Uav()};
  c.team = {RobotClass::kUgv, RobotClass::kUgv, RobotClass::kUav};
  c.regions = {{RegionKind::kMud, 40, 0, 100, 60}, {RegionKind::kWind, 55, 40, 100, 100}};
  for (const char* v : {"dls_lazy_warm", "cd_cheap_first", "cd_expensive_first"}) {
    c.variants.push_back(ParseVariant(v));
  }
  c.out_dir = "out/scenario2";
  return c;
}

double ArenaSide(const ScenarioConfig& cfg, int n) {
  if (cfg.max_robots == cfg.min_robots) return cfg.min_side;
  const double f = static_cast<double>(n - cfg.min_robots) / (cfg.max_robots - cfg.min_robots);
  return cfg.min_side + (cfg.max_side - cfg.min_side) * f;
}

World BuildScenario1(const ScenarioConfig& cfg, int n, std::uint64_t seed) {
  if (n < 1) throw ContractViolation("scenario 1 needs at least one robot");
  Rng rng(seed);
  const double side = ArenaSide(cfg, n);
  World w;
  w.tau = cfg.tau;
  w.horizon = cfg.horizon;
  w.field.regions = cfg.regions;
  for (int i = 0; i < n; ++i) {
    const RobotState x0{rng.Uniform(0, side), rng.Uniform(0, side), rng.Uniform(-kPi, kPi)};
    w.robots.push_back(MakeRobot(i, RobotClass::kUgv, cfg.ugv, x0, i + 1.0));
  }
  const TargetModel model = DoubleIntegratorModel(cfg.tau, cfg.process_noise, 1);
  const Mat prior = DiagonalPrior(cfg.prior_diag, 4);
  for (int j = 0; j < n; ++j) {
    TrackedTarget t;
    t.model = model;
    t.mean = Vec(4);
    double vx = rng.Uniform(-cfg.max_speed, cfg.max_speed);
    double vy = rng.Uniform(-cfg.max_speed, cfg.max_speed);
    const double speed = std::hypot(vx, vy);
    if (speed > cfg.max_speed) {
      vx *= cfg.max_speed / speed;
      vy *= cfg.max_speed / speed;
    }
    t.mean << rng.Uniform(0, side), rng.Uniform(0, side), vx, vy;
    t.prior = prior;
    w.targets.push_back(std::move(t));
  }
  return w;
}

World BuildScenario2(const ScenarioConfig& cfg, double r, std::uint64_t seed) {
  if (r < 0.0) throw ContractViolation("scenario 2 needs r >= 0");
  Rng rng(seed);
  World w;
  w.tau = cfg.tau;
  w.horizon = cfg.horizon;
  w.field.regions = cfg.regions;
  for (size_t i = 0; i < cfg.team.size(); ++i) {
    RobotState x0;
    int tries = 0;
    do {
      if (++tries > 100000) {
        throw ConfigError("regions", 0, "no clear area left to spawn robots in");
      }
      x0 = {rng.Uniform(0, cfg.width), rng.Uniform(0, cfg.height), rng.Uniform(-kPi, kPi)};
    } while (std::any_of(w.field.regions.begin(), w.field.regions.end(),
                         [&](const Region& g) { return g.Contains(x0.x, x0.y); }));
    const RobotClass kind = cfg.team[i];
    w.robots.push_back(MakeRobot(static_cast<int>(i), kind,
                                 kind == RobotClass::kUgv ? cfg.ugv : cfg.uav, x0, r));
  }
  const TargetModel model = StaticTargetModel(1, cfg.static_noise);
  const Mat prior = DiagonalPrior(cfg.prior_diag, 2);
  for (int j = 0; j < cfg.num_targets; ++j) {
    TrackedTarget t;
    t.model = model;
    t.mean = Vec(2);
    t.mean << rng.Uniform(0, cfg.width), rng.Uniform(0, cfg.height);
    t.prior = prior;
    w.targets.push_back(std::move(t));
  }
  return w;
}

World BuildWorld(const ScenarioConfig& cfg, double point, std::uint64_t seed) {
  if (cfg.scenario == 1) {
    if (point != std::floor(point)) {
      throw ConfigError("sweep", 0, "scenario 1 sweeps integer robot counts");
    }
    return BuildScenario1(cfg, static_cast<int>(point), seed);
  }
  return BuildScenario2(cfg, point, seed);
}

Problem BuildProblem(World world, const GenConfig& gen) {
  const TrackingModel model(world);
  std::vector<std::vector<Trajectory>> parts;
  for (int i = 0; i < static_cast<int>(world.robots.size()); ++i) {
    parts.push_back(GenerateCandidates(model, i, gen));
  }
  return MakeProblem(std::move(world), std::move(parts));
}

Problem Downsampled(const Problem& full, double fraction) {
  const PartitionMatroid& m = *full.matroid;
  std::vector<std::vector<Trajectory>> parts(m.num_robots());
  for (int i = 0; i < m.num_robots(); ++i) {
    const auto ids = m.partition(i);
    for (size_t k = 0; k < DownsampleCount(ids.size(), fraction); ++k) {
      parts[i].push_back(m.at(ids[k]));
    }
  }
  return MakeProblem(full.model->world(), std::move(parts));
}

std::uint64_t TrialSeed(std::uint64_t seed, int trial) {
  std::uint64_t state = seed ^ (0xA0761D6478BD642FULL * static_cast<std::uint64_t>(trial + 1));
  return SplitMix64(state);
}

std::uint64_t WorldHash(const World& w) {
  Fnv h;
  h.Add(w.tau);
  h.Add(w.horizon);
  for (const RobotSpec& r : w.robots) {
    h.Add(r.id);
    h.Add(static_cast<int>(r.kind));
    h.Add(r.initial.x);
    h.Add(r.initial.y);
    h.Add(r.initial.theta);
    h.Add(r.sensor.fov_deg);
    h.Add(r.sensor.range);
    h.Add(r.sensor.sigma_range_max);
    h.Add(r.sensor.sigma_bearing_max_deg);
    h.Add(r.sensor.noise_floor_fraction);
    for (const Primitive& p : r.costs.controls) {
      h.Add(p.u.nu);
      h.Add(p.u.omega);
      h.Add(p.cost);
    }
    h.Add(r.costs.mud);
    h.Add(r.costs.wind);
    h.Add(r.weight);
  }
  for (const TrackedTarget& t : w.targets) {
    h.Add(t.mean);
    h.Add(t.prior);
    h.Add(t.x_index);
    h.Add(t.y_index);
    for (int k = 0; k < t.model.steps(); ++k) {
      h.Add(t.model.transition(k));
      h.Add(t.model.process_noise(k));
    }
  }
  for (const Region& g : w.field.regions) {
    h.Add(static_cast<int>(g.kind));
    h.Add(g.x_min);
    h.Add(g.y_min);
    h.Add(g.x_max);
    h.Add(g.y_max);
  }
  return h.value();
}

}  // namespace infoplan::bench
