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


#include "infoplan/bench/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "infoplan/errors.h"
#include "yaml-cpp/yaml.h"

namespace infoplan::bench {
namespace {

int LineOf(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

class Reader {
 public:
  Reader(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) throw ConfigError(path_, LineOf(node_), "expected a mapping");
  }

  // Throws on keys not in `allowed`.
  void Only(std::initializer_list<const char*> allowed) const {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!ok.count(key)) {
        throw ConfigError(Path(key), LineOf(kv.first), "unknown key");
      }
    }
  }

  bool Has(const char* key) const { return static_cast<bool>(node_[key]); }
  YAML::Node Node(const char* key) const { return node_[key]; }
  std::string Path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  template <typename T>
  void Get(const char* key, T& out) const {
    const YAML::Node n = node_[key];
    if (!n) return;
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(Path(key), LineOf(n), "wrong type");
    }
  }

  Reader Child(const char* key) const { return Reader(node_[key], Path(key)); }

 private:
  YAML::Node node_;
  std::string path_;
};

void Require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, 0, what);
}

double ReadRange(const YAML::Node& n, const std::string& field) {
  try {
    if (n.as<std::string>() == "unbounded") return kUnboundedRange;
    return n.as<double>();
  } catch (const YAML::Exception&) {
    throw ConfigError(field, LineOf(n), "expected a number or 'unbounded'");
  }
}

void ReadProfile(const Reader& r, RobotProfile& p) {
  r.Only({"fov_deg", "range", "sigma_range_max", "sigma_bearing_max_deg",
          "noise_floor_fraction", "control_costs", "mud", "wind"});
  r.Get("fov_deg", p.sensor.fov_deg);
  if (r.Has("range")) p.sensor.range = ReadRange(r.Node("range"), r.Path("range"));
  r.Get("sigma_range_max", p.sensor.sigma_range_max);
  r.Get("sigma_bearing_max_deg", p.sensor.sigma_bearing_max_deg);
  r.Get("noise_floor_fraction", p.sensor.noise_floor_fraction);
  if (r.Has("control_costs")) {
    std::vector<double> costs;
    r.Get("control_costs", costs);
    if (costs.size() != p.costs.controls.size()) {
      throw ConfigError(r.Path("control_costs"), LineOf(r.Node("control_costs")),
                        "needs one cost per primitive (" +
                            std::to_string(p.costs.controls.size()) + ")");
    }
    for (size_t k = 0; k < costs.size(); ++k) p.costs.controls[k].cost = costs[k];
  }
  r.Get("mud", p.costs.mud);
  r.Get("wind", p.costs.wind);
}

RobotClass ParseClass(const YAML::Node& n, const std::string& field) {
  const auto s = n.as<std::string>();
  if (s == "ugv") return RobotClass::kUgv;
  if (s == "uav") return RobotClass::kUav;
  throw ConfigError(field, LineOf(n), "unknown robot class '" + s + "'");
}

ScenarioConfig FromYaml(const YAML::Node& root) {
  const Reader top(root, "");
  top.Only({"scenario", "seed", "trials", "sweep", "horizon", "tau", "targets", "arena",
            "team", "profiles", "regions", "trajgen", "solvers", "output"});
  if (!top.Has("scenario")) throw ConfigError("scenario", 0, "missing");
  int scenario = 0;
  top.Get("scenario", scenario);
  if (scenario != 1 && scenario != 2) {
    throw ConfigError("scenario", LineOf(top.Node("scenario")), "must be 1 or 2");
  }
  ScenarioConfig c = scenario == 1 ? DefaultScenario1() : DefaultScenario2();
  top.Get("seed", c.seed);
  top.Get("trials", c.trials);
  top.Get("sweep", c.sweep);
  top.Get("horizon", c.horizon);
  top.Get("tau", c.tau);

  if (top.Has("targets")) {
    const Reader r = top.Child("targets");
    r.Only({"count", "process_noise", "max_speed", "prior_diag", "static_noise"});
    r.Get("count", c.num_targets);
    r.Get("process_noise", c.process_noise);
    r.Get("max_speed", c.max_speed);
    r.Get("prior_diag", c.prior_diag);
    r.Get("static_noise", c.static_noise);
  }
  if (top.Has("arena")) {
    const Reader r = top.Child("arena");
    r.Only({"min_side", "max_side", "min_robots", "max_robots", "width", "height"});
    r.Get("min_side", c.min_side);
    r.Get("max_side", c.max_side);
    r.Get("min_robots", c.min_robots);
    r.Get("max_robots", c.max_robots);
    r.Get("width", c.width);
    r.Get("height", c.height);
  }
  if (top.Has("team")) {
    const YAML::Node n = top.Node("team");
    if (!n.IsSequence()) throw ConfigError("team", LineOf(n), "expected a list");
    c.team.clear();
    for (const auto& item : n) c.team.push_back(ParseClass(item, "team"));
  }
  if (top.Has("profiles")) {
    const Reader r = top.Child("profiles");
    r.Only({"ugv", "uav"});
    if (r.Has("ugv")) ReadProfile(r.Child("ugv"), c.ugv);
    if (r.Has("uav")) ReadProfile(r.Child("uav"), c.uav);
  }
  if (top.Has("regions")) {
    const YAML::Node n = top.Node("regions");
    if (!n.IsSequence()) throw ConfigError("regions", LineOf(n), "expected a list");
    c.regions.clear();
    for (const auto& item : n) {
      const Reader r(item, "regions[]");
      r.Only({"kind", "x_min", "y_min", "x_max", "y_max"});
      Region g;
      std::string kind;
      r.Get("kind", kind);
      if (kind == "mud") {
        g.kind = RegionKind::kMud;
      } else if (kind == "wind") {
        g.kind = RegionKind::kWind;
      } else {
        throw ConfigError("regions[].kind", LineOf(item), "must be mud or wind");
      }
      for (const char* key : {"x_min", "y_min", "x_max", "y_max"}) {
        if (!r.Has(key)) throw ConfigError(r.Path(key), LineOf(item), "missing");
      }
      r.Get("x_min", g.x_min);
      r.Get("y_min", g.y_min);
      r.Get("x_max", g.x_max);
      r.Get("y_max", g.y_max);
      if (!(g.x_min <= g.x_max && g.y_min <= g.y_max)) {
        throw ConfigError("regions[]", LineOf(item), "min corner must not exceed max corner");
      }
      c.regions.push_back(g);
    }
  }
  if (top.Has("trajgen")) {
    const Reader r = top.Child("trajgen");
    r.Only({"max_candidates", "cell_size", "cell_angle_deg", "max_nodes_per_level"});
    r.Get("max_candidates", c.trajgen.max_candidates);
    r.Get("cell_size", c.trajgen.cell_size);
    if (r.Has("cell_angle_deg")) {
      double deg = 0.0;
      r.Get("cell_angle_deg", deg);
      c.trajgen.cell_angle = deg * kPi / 180.0;
    }
    r.Get("max_nodes_per_level", c.trajgen.max_nodes_per_level);
  }
  if (top.Has("solvers")) {
    const Reader r = top.Child("solvers");
    r.Only({"alpha", "schedule", "latency", "jitter", "variants"});
    r.Get("alpha", c.alpha);
    if (r.Has("schedule")) {
      std::string s;
      r.Get("schedule", s);
      if (s == "canonical") {
        c.schedule = Schedule::kCanonical;
      } else if (s == "concurrent") {
        c.schedule = Schedule::kConcurrent;
      } else {
        throw ConfigError("solvers.schedule", LineOf(r.Node("schedule")),
                          "must be canonical or concurrent");
      }
    }
    r.Get("latency", c.latency);
    r.Get("jitter", c.jitter);
    if (r.Has("variants")) {
      std::vector<std::string> names;
      r.Get("variants", names);
      c.variants.clear();
      for (const std::string& name : names) {
        try {
          c.variants.push_back(ParseVariant(name));
        } catch (const ConfigError& e) {
          throw ConfigError("solvers.variants", LineOf(r.Node("variants")), e.what());
        }
      }
    }
  }
  if (top.Has("output")) {
    const Reader r = top.Child("output");
    r.Only({"dir", "plots", "traces"});
    r.Get("dir", c.out_dir);
    r.Get("plots", c.plots);
    r.Get("traces", c.traces);
  }
  return c;
}

}  // namespace

void ValidateConfig(const ScenarioConfig& c) {
  Require(c.trials >= 1, "trials", "must be at least 1");
  Require(!c.sweep.empty(), "sweep", "must not be empty");
  for (double p : c.sweep) {
    if (c.scenario == 1) {
      Require(p >= 1 && p == std::floor(p), "sweep", "robot counts must be positive integers");
    } else {
      Require(p >= 0, "sweep", "weights must be non-negative");
    }
  }
  Require(c.horizon >= 1, "horizon", "must be at least 1");
  Require(c.tau > 0, "tau", "must be positive");
  Require(c.process_noise >= 0, "targets.process_noise", "must be non-negative");
  Require(c.max_speed >= 0, "targets.max_speed", "must be non-negative");
  Require(c.prior_diag.size() == (c.scenario == 1 ? 4u : 2u), "targets.prior_diag",
          c.scenario == 1 ? "needs 4 entries (x, y, vx, vy)" : "needs 2 entries (x, y)");
  for (double v : c.prior_diag) Require(v > 0, "targets.prior_diag", "entries must be positive");
  Require(c.num_targets >= 1, "targets.count", "must be at least 1");
  Require(c.min_side > 0 && c.max_side > 0, "arena", "sides must be positive");
  Require(c.min_robots <= c.max_robots, "arena", "min_robots must not exceed max_robots");
  Require(c.width > 0 && c.height > 0, "arena", "width and height must be positive");
  if (c.scenario == 2) Require(!c.team.empty(), "team", "must not be empty");
  for (const RobotProfile* p : {&c.ugv, &c.uav}) {
    Require(p->sensor.fov_deg > 0 && p->sensor.fov_deg <= 360, "profiles", "fov_deg must be in (0, 360]");
    Require(p->sensor.range > 0, "profiles", "range must be positive");
    Require(p->sensor.sigma_range_max > 0 && p->sensor.sigma_bearing_max_deg > 0, "profiles",
            "noise maxima must be positive");
    Require(p->sensor.noise_floor_fraction > 0 && p->sensor.noise_floor_fraction <= 1,
            "profiles", "noise_floor_fraction must be in (0, 1]");
    for (const Primitive& u : p->costs.controls) {
      Require(u.cost >= 0, "profiles", "control costs must be non-negative");
    }
    Require(p->costs.mud >= 0 && p->costs.wind >= 0, "profiles", "state costs must be non-negative");
  }
  Require(c.trajgen.max_candidates >= 0, "trajgen.max_candidates", "must be non-negative");
  Require(c.trajgen.cell_size > 0 && c.trajgen.cell_angle > 0, "trajgen", "grid resolution must be positive");
  Require(c.trajgen.max_nodes_per_level >= 0, "trajgen.max_nodes_per_level", "must be non-negative");
  Require(c.alpha > 0, "solvers.alpha", "must be positive");
  Require(c.latency >= 0, "solvers.latency", "must be non-negative");
  Require(c.jitter >= 0 && c.jitter <= 1, "solvers.jitter", "must be in [0, 1]");
  Require(!c.variants.empty(), "solvers.variants", "must not be empty");
}

ScenarioConfig ParseConfig(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", e.mark.line + 1, e.msg);
  }
  ScenarioConfig c = FromYaml(root);
  ValidateConfig(c);
  return c;
}

ScenarioConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

}  // namespace infoplan::bench
