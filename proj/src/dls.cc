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

#include "infoplan/dls.h"

#include <algorithm>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>
#include <random>
#include <tuple>

#include "infoplan/central.h"
#include "infoplan/errors.h"
#include "json.hpp"

namespace infoplan {
namespace {

using Json = nlohmann::json;

struct Agent {
  int robot = 0;
  std::vector<TrajId> partition;  // this round's M_i, standalone descending
  SolutionSet local;
};

// Uniform in [0, 1) from the top 53 bits, identical on every platform.
double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class Runner {
 public:
  Runner(const PartitionMatroid& m, std::span<const std::vector<TrajId>> parts,
         CountingOracle& oracle, const DlsOptions& opts)
      : m_(m), oracle_(oracle), opts_(opts), rng_(opts.seed) {
    CheckPartitions(parts);
    for (int i = 0; i < m.num_robots(); ++i) {
      agents_.push_back({i, parts[i], SolutionSet(m.num_robots())});
    }
    for (int i = 0; i < m.num_robots(); ++i) speed_.push_back(0.5 + Uniform(rng_));
    ctx_ = {&m_, opts_.alpha, std::max(m_.size(), 1)};
  }

  SolverResult Run() {
    const OracleTally tally(oracle_);
    if (opts_.trace) {
      TraceHeader h;
      h.alpha = opts_.alpha;
      h.n = ctx_.n;
      h.lambda = oracle_.Offset();
      h.num_robots = m_.num_robots();
      for (TrajId id = 0; id < m_.size(); ++id) h.robot_of.push_back(m_.robot_of(id));
      h.schedule = ScheduleName(opts_.schedule);
      h.seed = opts_.seed;
      opts_.trace->Write(h);
    }
    SolutionSet best(m_.num_robots());
    double best_g = -std::numeric_limits<double>::infinity();
    for (int round = 1; round <= 2; ++round) {
      round_ = round;
      SolutionSet s = InitRound();
      if (opts_.warm_start) WarmStart(s);
      if (opts_.schedule == Schedule::kCanonical) {
        Canonical(s);
      } else {
        Concurrent(s);
      }
      ++out_.metrics.rounds;
      const double g = oracle_.G(s);
      if (g > best_g) {
        best_g = g;
        best = s;
      }
      for (Agent& agent : agents_) {
        const TrajId mine = s.slot(agent.robot);
        std::erase(agent.partition, mine);
      }
    }
    out_.solution = best;
    out_.g_value = oracle_.G(best, out_.j_value);
    tally.Close(out_.metrics);
    return std::move(out_);
  }

 private:
  void CheckPartitions(std::span<const std::vector<TrajId>> parts) {
    if (!(opts_.alpha > 0.0)) throw ContractViolation("alpha must be positive");
    if (opts_.latency < 0.0 || opts_.jitter < 0.0 || opts_.jitter > 1.0) {
      throw ContractViolation("need latency >= 0 and jitter in [0, 1]");
    }
    if (static_cast<int>(parts.size()) != m_.num_robots()) {
      throw ProtocolFault("expected one agent per robot");
    }
    std::vector<char> seen(m_.size(), 0);
    for (int i = 0; i < m_.num_robots(); ++i) {
      for (size_t k = 0; k < parts[i].size(); ++k) {
        const TrajId id = parts[i][k];
        if (id < 0 || id >= m_.size() || m_.robot_of(id) != i || seen[id]) {
          throw ProtocolFault("agent " + std::to_string(i) +
                              " holds a trajectory outside its partition: " +
                              std::to_string(id));
        }
        seen[id] = 1;
        if (k > 0 && m_.at(id).standalone > m_.at(parts[i][k - 1]).standalone) {
          throw ProtocolFault("agent " + std::to_string(i) +
                              " partition is not sorted by standalone score");
        }
      }
    }
  }

  std::int64_t Send(TraceRecord& r) {
    r.round = round_;
    r.seq = next_seq_++;
    RunMetrics& mt = out_.metrics;
    ++mt.proposal_exchanges;
    switch (r.type) {
      case MessageType::kInit:
        ++mt.exchanges_init;
        break;
      case MessageType::kWarm:
        ++mt.exchanges_warm;
        break;
      case MessageType::kProposal:
        ++mt.exchanges_proposals;
        break;
      case MessageType::kNop:
        ++mt.exchanges_nop;
        break;
      case MessageType::kHeader:
        throw ContractViolation("header is not a broadcast");
    }
    return r.seq;
  }

  void Log(const TraceRecord& r) {
    if (opts_.trace) opts_.trace->Write(r);
  }

  SolutionSet InitRound() {
    SolutionSet s(m_.num_robots());
    TrajId best = kNop;
    int total = 0;
    for (const Agent& agent : agents_) {
      TraceRecord r;
      r.type = MessageType::kInit;
      r.proposer = agent.robot;
      r.size = static_cast<int>(agent.partition.size());
      if (!agent.partition.empty()) {
        r.a = agent.partition.front();
        r.j_after = m_.at(r.a).standalone;
        if (best == kNop || r.j_after > m_.at(best).standalone) best = r.a;
      }
      total += r.size;
      Send(r);
      Log(r);
    }
    if (round_ == 1 && total != m_.size()) {
      throw ProtocolFault("agents do not cover the ground set");
    }
    if (best != kNop) s.Add(m_, best);
    for (Agent& agent : agents_) agent.local = s;
    out_.round_starts.push_back(s);
    return s;
  }

  void Commit(SolutionSet& s, int proposer, TrajId d, TrajId a, double g_before,
              double j_minus, double j_after) {
    out_.op_trace.push_back({KindOf(d, a), d, a, round_, g_before, j_minus, j_after});
    ApplyOp(m_, s, d, a);
    for (Agent& agent : agents_) {
      ApplyOp(m_, agent.local, d, a);
      if (!(agent.local == s)) {
        throw ProtocolFault("agent " + std::to_string(agent.robot) +
                            " diverged from the committed set after a proposal by " +
                            std::to_string(proposer));
      }
    }
    ++out_.metrics.commits;
    out_.metrics.g_trace.push_back(j_after + oracle_.Offset());
  }

  void WarmStart(SolutionSet& s) {
    std::vector<std::vector<double>> bounds(agents_.size());
    for (Agent& agent : agents_) {
      for (TrajId id : agent.partition) {
        bounds[agent.robot].push_back(opts_.lazy ? m_.at(id).standalone
                                                 : std::numeric_limits<double>::infinity());
      }
    }
    while (true) {
      double j_s;
      const double g_s = oracle_.G(s, j_s);
      const double delta = Deficiency(g_s, g_s, ctx_.alpha, ctx_.n);
      std::vector<TraceRecord> msgs;
      int winner = -1;
      for (Agent& agent : agents_) {
        if (s.has(agent.robot)) continue;
        std::vector<double>& b = bounds[agent.robot];
        if (!opts_.lazy) std::fill(b.begin(), b.end(), std::numeric_limits<double>::infinity());
        const ArgmaxResult best = LazyGreedyArgmax(m_, oracle_, agent.partition, b, s);
        TraceRecord r;
        r.type = MessageType::kWarm;
        r.proposer = agent.robot;
        r.a = best.best;
        r.g_before = g_s;
        r.j_minus = j_s;
        r.j_after = j_s;
        if (best.best != kNop) {
          SolutionSet plus = s;
          plus.Add(m_, best.best);
          r.j_after = oracle_.J(plus);
          if (winner < 0 || r.j_after - j_s > msgs[winner].j_after - j_s) {
            winner = static_cast<int>(msgs.size());
          }
        }
        msgs.push_back(r);
      }
      // Only agents holding a qualifying addition broadcast it.
      if (winner < 0 || !(msgs[winner].j_after - j_s >= delta)) return;
      msgs[winner].committed = true;
      for (TraceRecord& r : msgs) {
        if (r.a == kNop || !(r.j_after - j_s >= delta)) continue;
        Send(r);
        Log(r);
      }
      const TraceRecord& w = msgs[winner];
      Commit(s, w.proposer, kNop, w.a, w.g_before, w.j_minus, w.j_after);
    }
  }

  void Canonical(SolutionSet& s) {
    const int n = static_cast<int>(agents_.size());
    int next = 0, idle = 0;
    while (idle < n) {
      const Agent& agent = agents_[next];
      Proposal p = FindProposal(ctx_, agent.robot, agent.partition, agent.local,
                                opts_.lazy, oracle_);
      TraceRecord r;
      r.proposer = agent.robot;
      if (p.nop()) {
        r.type = MessageType::kNop;
        r.g_before = p.g_before;
        Send(r);
        Log(r);
        ++idle;
      } else {
        if (!ValidateProposal(ctx_, s, p, oracle_)) {
          throw ProtocolFault("proposal from agent " + std::to_string(agent.robot) +
                              " failed validation against the set it was made on");
        }
        r.type = MessageType::kProposal;
        r.d = p.d;
        r.a = p.a;
        r.g_before = p.g_before;
        r.j_minus = p.j_minus;
        r.j_after = p.j_after;
        r.committed = true;
        Send(r);
        Log(r);
        Commit(s, agent.robot, p.d, p.a, p.g_before, p.j_minus, p.j_after);
        idle = 0;
      }
      next = (next + 1) % n;
    }
  }

  // Discrete-event simulation of agents searching in parallel.
  void Concurrent(SolutionSet& s) {
    struct Event {
      double time;
      int kind;  // 0 = message arrival (key = seq), 1 = search step
      std::int64_t key;
      int agent;
      std::int64_t epoch;
      bool operator>(const Event& o) const {
        return std::tie(time, kind, key) > std::tie(o.time, o.kind, o.key);
      }
    };
    struct Message {
      Proposal p;
      std::int64_t version;
    };
    struct Sim {
      std::optional<ProposalSearch> search;
      std::int64_t epoch = 0;
      bool waiting = false;   // own proposal in flight
      bool reported = false;  // NOP for the current version has arrived
    };

    const int n = static_cast<int>(agents_.size());
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
    std::vector<Sim> sims(n);
    std::vector<std::optional<Message>> inbox;  // indexed by seq - seq0
    const std::int64_t seq0 = next_seq_;
    std::int64_t step_key = 0;
    std::int64_t version = 0;
    int in_flight = 0;

    auto duration = [&](int i) {
      return speed_[i] * (1.0 + opts_.jitter * (Uniform(rng_) - 0.5));
    };
    auto start = [&](int i, double now) {
      Sim& sim = sims[i];
      sim.search.emplace(ctx_, i, agents_[i].partition, agents_[i].local, opts_.lazy);
      ++sim.epoch;
      sim.reported = false;
      events.push({now + duration(i), 1, step_key++, i, sim.epoch});
    };
    auto record_of = [&](const Proposal& p, MessageType type) {
      TraceRecord r;
      r.type = type;
      r.round = round_;
      r.proposer = p.proposer;
      r.d = p.d;
      r.a = p.a;
      r.g_before = p.g_before;
      r.j_minus = p.j_minus;
      r.j_after = p.j_after;
      r.seq = p.seq;
      return r;
    };

    for (int i = 0; i < n; ++i) start(i, 0.0);
    while (true) {
      if (in_flight == 0 &&
          std::all_of(sims.begin(), sims.end(), [](const Sim& x) { return x.reported; })) {
        break;
      }
      if (events.empty()) throw ProtocolFault("concurrent schedule stalled");
      const Event e = events.top();
      events.pop();
      if (e.kind == 1) {
        Sim& sim = sims[e.agent];
        if (e.epoch != sim.epoch) continue;
        if (!sim.search->Step(oracle_)) {
          events.push({e.time + duration(e.agent), 1, step_key++, e.agent, sim.epoch});
          continue;
        }
        Proposal p = sim.search->result();
        p.round = round_;
        sim.search.reset();
        TraceRecord r;
        r.type = p.nop() ? MessageType::kNop : MessageType::kProposal;
        p.seq = Send(r);
        sim.waiting = !p.nop();
        inbox.resize(p.seq - seq0 + 1);
        inbox[p.seq - seq0] = Message{p, version};
        ++in_flight;
        events.push({e.time + opts_.latency, 0, p.seq, e.agent, 0});
        continue;
      }
      --in_flight;
      Message msg = *inbox[e.key - seq0];
      inbox[e.key - seq0].reset();
      const int i = msg.p.proposer;
      if (msg.p.nop()) {
        if (msg.version == version) sims[i].reported = true;
        Log(record_of(msg.p, MessageType::kNop));
        continue;
      }
      sims[i].waiting = false;
      const Proposal sent = msg.p;
      if (ValidateProposal(ctx_, s, msg.p, oracle_)) {
        TraceRecord r = record_of(msg.p, MessageType::kProposal);
        r.committed = true;
        Log(r);
        Commit(s, i, msg.p.d, msg.p.a, msg.p.g_before, msg.p.j_minus, msg.p.j_after);
        ++version;
        for (int j = 0; j < n; ++j) {
          if (sims[j].waiting) {
            sims[j].reported = false;
          } else {
            start(j, e.time);
          }
        }
      } else {
        ++out_.metrics.stale_discarded;
        Log(record_of(sent, MessageType::kProposal));
        start(i, e.time);
      }
    }
  }

  const PartitionMatroid& m_;
  CountingOracle& oracle_;
  DlsOptions opts_;
  std::mt19937_64 rng_;
  std::vector<Agent> agents_;
  std::vector<double> speed_;
  SearchContext ctx_;
  SolverResult out_;
  int round_ = 1;
  std::int64_t next_seq_ = 0;
};

PartitionMatroid SkeletonMatroid(int num_robots, const std::vector<int>& robot_of) {
  std::vector<std::vector<Trajectory>> parts(num_robots);
  for (size_t id = 0; id < robot_of.size(); ++id) {
    const int r = robot_of[id];
    if (r < 0 || r >= num_robots || (id > 0 && r < robot_of[id - 1])) {
      throw ConfigError("robot_of", 1, "must be robot-major", "trace");
    }
    Trajectory t;
    t.robot = r;
    parts[r].push_back(t);
  }
  return PartitionMatroid(std::move(parts));
}

template <typename T>
T Field(const Json& j, const char* key, int line) {
  if (!j.contains(key)) {
    throw ConfigError(key, line, "missing", "trace");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(key, line, e.what(), "trace");
  }
}

}  // namespace

std::string_view ScheduleName(Schedule s) {
  return s == Schedule::kCanonical ? "canonical" : "concurrent";
}

std::string_view MessageTypeName(MessageType t) {
  switch (t) {
    case MessageType::kHeader:
      return "header";
    case MessageType::kInit:
      return "init";
    case MessageType::kWarm:
      return "warm";
    case MessageType::kProposal:
      return "proposal";
    case MessageType::kNop:
      return "nop";
  }
  return "unknown";
}

void TraceWriter::Write(const TraceHeader& h) {
  Json j{{"type", "header"},     {"alpha", h.alpha},
         {"n", h.n},             {"lambda", h.lambda},
         {"num_robots", h.num_robots}, {"robot_of", h.robot_of},
         {"schedule", h.schedule}, {"seed", h.seed}};
  out_ << j.dump() << '\n';
}

void TraceWriter::Write(const TraceRecord& r) {
  Json j{{"type", MessageTypeName(r.type)},
         {"round", r.round},
         {"proposer", r.proposer},
         {"d", r.d},
         {"a", r.a},
         {"g_before", r.g_before},
         {"j_minus", r.j_minus},
         {"j_after", r.j_after},
         {"committed", r.committed},
         {"seq", r.seq}};
  if (r.type == MessageType::kInit) j["size"] = r.size;
  out_ << j.dump() << '\n';
}

void ReadTrace(std::istream& in, TraceHeader& header,
               std::vector<TraceRecord>& records) {
  std::string text;
  int line = 0;
  bool have_header = false;
  records.clear();
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ConfigError("", line, e.what(), "trace");
    }
    const auto type = Field<std::string>(j, "type", line);
    if (type == "header") {
      if (have_header) throw ConfigError("type", line, "second header", "trace");
      header.alpha = Field<double>(j, "alpha", line);
      header.n = Field<int>(j, "n", line);
      header.lambda = Field<double>(j, "lambda", line);
      header.num_robots = Field<int>(j, "num_robots", line);
      header.robot_of = Field<std::vector<int>>(j, "robot_of", line);
      header.schedule = Field<std::string>(j, "schedule", line);
      header.seed = Field<std::uint64_t>(j, "seed", line);
      have_header = true;
      continue;
    }
    if (!have_header) {
      throw ConfigError("type", line, "record before header", "trace");
    }
    TraceRecord r;
    if (type == "init") {
      r.type = MessageType::kInit;
      r.size = Field<int>(j, "size", line);
    } else if (type == "warm") {
      r.type = MessageType::kWarm;
    } else if (type == "proposal") {
      r.type = MessageType::kProposal;
    } else if (type == "nop") {
      r.type = MessageType::kNop;
    } else {
      throw ConfigError("type", line, "unknown type '" + type + "'", "trace");
    }
    r.round = Field<int>(j, "round", line);
    r.proposer = Field<int>(j, "proposer", line);
    r.d = Field<int>(j, "d", line);
    r.a = Field<int>(j, "a", line);
    r.g_before = Field<double>(j, "g_before", line);
    r.j_minus = Field<double>(j, "j_minus", line);
    r.j_after = Field<double>(j, "j_after", line);
    r.committed = Field<bool>(j, "committed", line);
    r.seq = Field<std::int64_t>(j, "seq", line);
    records.push_back(r);
  }
  if (!have_header) throw ConfigError("", 0, "no header", "trace");
}

TraceAudit AuditTrace(const TraceHeader& header,
                      std::span<const TraceRecord> records) {
  TraceAudit out;
  const PartitionMatroid m = SkeletonMatroid(header.num_robots, header.robot_of);
  const SearchContext ctx{&m, header.alpha, header.n};
  out.broadcasts = static_cast<std::int64_t>(records.size());
  for (int round = 1; round <= 2; ++round) {
    const std::string where = "round " + std::to_string(round) + ": ";
    TrajId start_id = kNop;
    double start_j = 0.0;
    int inits = 0;
    std::vector<LocalOp> ops;
    for (const TraceRecord& r : records) {
      if (r.round != round) continue;
      if (r.type == MessageType::kInit) {
        ++inits;
        if (r.a == kNop) continue;
        if (r.a < 0 || r.a >= m.size() || m.robot_of(r.a) != r.proposer) {
          out.error = where + "init names a trajectory outside the sender's partition";
          return out;
        }
        if (start_id == kNop || r.j_after > start_j ||
            (r.j_after == start_j && r.a < start_id)) {
          start_id = r.a;
          start_j = r.j_after;
        }
      } else if (r.committed) {
        if (r.a != kNop && (r.a < 0 || r.a >= m.size() || m.robot_of(r.a) != r.proposer)) {
          out.error = where + "committed addition outside the proposer's partition";
          return out;
        }
        if (r.d == kNop && r.a == kNop) {
          out.error = where + "committed (NOP, NOP)";
          return out;
        }
        ops.push_back({KindOf(r.d, r.a), r.d, r.a, round, r.g_before, r.j_minus,
                       r.j_after});
      }
    }
    if (inits != header.num_robots) {
      out.error = where + "expected one init broadcast per agent";
      return out;
    }
    SolutionSet start(m.num_robots());
    if (start_id != kNop) start.Add(m, start_id);
    const double g_start = start_id == kNop ? header.lambda : start_j + header.lambda;
    if (round == 2) {
      for (TrajId id : out.round_ends[0].Ids()) {
        if (start.Contains(m, id) ||
            std::any_of(ops.begin(), ops.end(), [id](const LocalOp& op) { return op.a == id; })) {
          out.error = where + "reuses round-1 trajectory " + std::to_string(id);
          return out;
        }
      }
    }
    if (!ops.empty() && ops.front().g_before != g_start) {
      out.error = where + "first operation does not start from the best singleton";
      return out;
    }
    SolutionSet end;
    const std::string err = AuditOps(ctx, header.lambda, start, ops, &end);
    if (!err.empty()) {
      out.error = where + err;
      return out;
    }
    const double g_end = ops.empty() ? g_start : ops.back().j_after + header.lambda;
    // The round ended on every agent's NOP for the final set.
    std::vector<const TraceRecord*> last_nop(header.num_robots, nullptr);
    for (const TraceRecord& r : records) {
      if (r.round == round && r.type == MessageType::kNop && r.proposer >= 0 &&
          r.proposer < header.num_robots) {
        last_nop[r.proposer] = &r;
      }
    }
    for (int i = 0; i < header.num_robots; ++i) {
      if (last_nop[i] == nullptr || last_nop[i]->g_before != g_end) {
        out.error = where + "agent " + std::to_string(i) +
                    " did not report NOP for the final set";
        return out;
      }
    }
    out.commits += static_cast<std::int64_t>(ops.size());
    out.round_ends.push_back(end);
    out.round_g.push_back(g_end);
  }
  const bool second = out.round_g[1] > out.round_g[0];
  out.best = out.round_ends[second ? 1 : 0];
  out.best_g = out.round_g[second ? 1 : 0];
  return out;
}

SolverResult Dls(const PartitionMatroid& m, CountingOracle& oracle,
                 const DlsOptions& opts) {
  std::vector<std::vector<TrajId>> parts;
  for (int i = 0; i < m.num_robots(); ++i) {
    const auto p = m.partition(i);
    parts.emplace_back(p.begin(), p.end());
  }
  return Dls(m, parts, oracle, opts);
}

SolverResult Dls(const PartitionMatroid& m,
                 std::span<const std::vector<TrajId>> agent_partitions,
                 CountingOracle& oracle, const DlsOptions& opts) {
  Runner runner(m, agent_partitions, oracle, opts);
  return runner.Run();
}

}  // namespace infoplan
