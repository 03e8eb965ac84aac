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


// Distributed local search: one agent per robot, each holding its own
// partition and copy of S, exchanging proposals over a simulated broadcast
// bus. Every broadcast can be written to a JSON Lines trace and audited.

#ifndef INFOPLAN_DLS_H_
#define INFOPLAN_DLS_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "infoplan/local_search.h"

namespace infoplan {

enum class Schedule {
  // Agents polled round-robin by robot id, starting after the last
  // committer. Single-threaded and deterministic; takes the same decisions
  // as Cls with ScanOrder::kAgentMajor.
  kCanonical,
  // Agents search at seeded, jittered speeds and broadcast as soon as they
  // finish; the bus commits arrivals in (time, seq) order after
  // re-validating them against the current S.
  kConcurrent,
};

std::string_view ScheduleName(Schedule s);

enum class MessageType { kHeader, kInit, kWarm, kProposal, kNop };
std::string_view MessageTypeName(MessageType t);

// One broadcast. Init messages carry |M_i| in `size` and the agent's best
// singleton in `a` with its J in `j_after`. Warm messages carry an agent's
// best addition when it meets the acceptance threshold; the best of a step
// is committed.
struct TraceRecord {
  MessageType type = MessageType::kProposal;
  int round = 1;
  int proposer = 0;
  TrajId d = kNop;
  TrajId a = kNop;
  double g_before = 0.0;
  double j_minus = 0.0;
  double j_after = 0.0;
  bool committed = false;
  std::int64_t seq = 0;
  int size = 0;
};

struct TraceHeader {
  double alpha = 1.0;
  int n = 1;
  double lambda = 0.0;
  int num_robots = 0;
  std::vector<int> robot_of;  // indexed by trajectory id
  std::string schedule;
  std::uint64_t seed = 0;
};

class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& out) : out_(out) {}
  void Write(const TraceHeader& h);
  void Write(const TraceRecord& r);

 private:
  std::ostream& out_;
};

// Throws ConfigError with the line number on malformed input.
void ReadTrace(std::istream& in, TraceHeader& header,
               std::vector<TraceRecord>& records);

struct TraceAudit {
  std::string error;  // empty when every committed operation checks out
  std::vector<SolutionSet> round_ends;
  std::vector<double> round_g;
  SolutionSet best;
  double best_g = 0.0;
  std::int64_t commits = 0;
  std::int64_t broadcasts = 0;
};

// Rebuilds each round from its init messages and replays the committed
// operations with the acceptance arithmetic.
TraceAudit AuditTrace(const TraceHeader& header,
                      std::span<const TraceRecord> records);

struct DlsOptions {
  double alpha = 1.0;
  bool lazy = false;
  bool warm_start = false;
  Schedule schedule = Schedule::kCanonical;
  // Concurrent schedule only. Times are in units of one oracle request.
  std::uint64_t seed = 0;
  double latency = 1.0;
  double jitter = 0.5;
  TraceWriter* trace = nullptr;
};

SolverResult Dls(const PartitionMatroid& m, CountingOracle& oracle,
                 const DlsOptions& opts = {});

// As above with explicit agent partitions, which must match the ground set
// (same ids per robot, standalone descending); ProtocolFault otherwise.
SolverResult Dls(const PartitionMatroid& m,
                 std::span<const std::vector<TrajId>> agent_partitions,
                 CountingOracle& oracle, const DlsOptions& opts = {});

}  // namespace infoplan

#endif  // INFOPLAN_DLS_H_
