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

// Local operations shared by the centralized and distributed solvers.
//
// Every solver decides an operation (d, a) on S through the same arithmetic:
//   S^- = S \ {d},   delta = threshold(g(S)) - g(S^-)
//   delete-only (a = NOP) is accepted iff delta <= 0
//   otherwise accepted iff J(S^- + a) - J(S^-) >= delta
// so that centralized and distributed runs take bit-identical decisions.

#ifndef INFOPLAN_LOCAL_SEARCH_H_
#define INFOPLAN_LOCAL_SEARCH_H_

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infoplan/objective.h"

namespace infoplan {

enum class OpKind { kDelete, kAdd, kSwap };
std::string_view OpKindName(OpKind kind);
OpKind KindOf(TrajId d, TrajId a);

// An accepted operation and the values it was accepted on.
struct LocalOp {
  OpKind kind = OpKind::kAdd;
  TrajId d = kNop;
  TrajId a = kNop;
  int round = 1;
  double g_before = 0.0;  // g(S)
  double j_minus = 0.0;   // J(S^-)
  double j_after = 0.0;   // J(S'), S' the result

  bool operator==(const LocalOp& o) const = default;
};

struct RunMetrics {
  std::int64_t oracle_calls = 0;     // distinct sets evaluated (cache misses)
  std::int64_t oracle_requests = 0;  // including cache hits
  std::int64_t proposal_exchanges = 0;
  std::int64_t exchanges_init = 0;
  std::int64_t exchanges_proposals = 0;  // non-NOP proposals, stale included
  std::int64_t exchanges_nop = 0;
  std::int64_t exchanges_warm = 0;
  std::int64_t stale_discarded = 0;
  int rounds = 0;
  int commits = 0;
  double runtime_s = 0.0;
  std::vector<double> g_trace;  // g after each accepted operation

  std::int64_t exchanges_without_nop() const {
    return proposal_exchanges - exchanges_nop;
  }
};

struct SolverResult {
  SolutionSet solution;
  double g_value = 0.0;
  double j_value = 0.0;
  RunMetrics metrics;
  std::vector<LocalOp> op_trace;
  // Set each round starts from, right after best-singleton initialization.
  // Replaying the round's op_trace entries from it gives the round result.
  std::vector<SolutionSet> round_starts;
};

// Oracle traffic and wall time of one solver run, from construction to Close.
class OracleTally {
 public:
  explicit OracleTally(const CountingOracle& oracle);
  void Close(RunMetrics& m) const;

 private:
  const CountingOracle& oracle_;
  std::int64_t misses_;
  std::int64_t requests_;
  std::chrono::steady_clock::time_point start_;
};

// Shared configuration of one local-search round.
struct SearchContext {
  const PartitionMatroid* matroid = nullptr;
  double alpha = 1.0;
  int n = 1;  // N in the alpha / N^4 ratio
};

// (d, a) from one agent. (NOP, NOP) reports that the agent has nothing.
struct Proposal {
  TrajId d = kNop;
  TrajId a = kNop;
  int proposer = 0;
  int round = 1;
  std::int64_t seq = 0;
  double g_before = 0.0;
  double j_minus = 0.0;
  double j_after = 0.0;

  bool nop() const { return d == kNop && a == kNop; }
};

// One agent's proposal search against a fixed S, resumable one oracle
// request at a time so that a simulated agent can be interrupted between
// evaluations.
//
// Outer loop over d in S (ascending id) then NOP. With delta <= 0 the
// deletion is proposed as is. Additions are skipped when S^- already holds
// one of the agent's trajectories; otherwise the agent's candidates are
// scanned in order (standalone score descending) and the first a meeting
// the required gain is proposed. With `lazy`, the scan stops at the first
// candidate whose standalone score is below delta.
class ProposalSearch {
 public:
  ProposalSearch(const SearchContext& ctx, int robot,
                 std::span<const TrajId> candidates, const SolutionSet& s,
                 bool lazy);

  // Advances to and through the next oracle request. Returns true once the
  // search has finished.
  bool Step(CountingOracle& oracle);
  bool done() const { return state_ == State::kDone; }
  const Proposal& result() const { return result_; }
  std::int64_t evaluations() const { return evaluations_; }

 private:
  enum class State { kStart, kNextD, kScan, kDone };

  void Finish(TrajId d, TrajId a, double j_after);

  SearchContext ctx_;
  int robot_;
  std::span<const TrajId> candidates_;
  SolutionSet s_;
  bool lazy_;

  State state_ = State::kStart;
  std::vector<TrajId> ds_;  // members then NOP
  size_t d_index_ = 0;
  size_t a_index_ = 0;
  SolutionSet minus_;
  double g_s_ = 0.0;
  double j_minus_ = 0.0;
  double delta_ = 0.0;
  Proposal result_;
  std::int64_t evaluations_ = 0;
};

Proposal FindProposal(const SearchContext& ctx, int robot,
                      std::span<const TrajId> candidates, const SolutionSet& s,
                      bool lazy, CountingOracle& oracle);

// Re-checks a proposal against the current S with the acceptance arithmetic
// above. Fills the proposal's values on success. Inadmissible or
// insufficient proposals return false.
bool ValidateProposal(const SearchContext& ctx, const SolutionSet& s,
                      Proposal& p, CountingOracle& oracle);

// S <- S \ {d} + {a}.
void ApplyOp(const PartitionMatroid& m, SolutionSet& s, TrajId d, TrajId a);

// Replays accepted operations of one round from `start` and checks
// admissibility, the chaining of recorded values and the acceptance
// inequality. Returns an empty string on success, else a description of the
// first violation. `end` receives the final set.
std::string AuditOps(const SearchContext& ctx, double lambda,
                     const SolutionSet& start, std::span<const LocalOp> ops,
                     SolutionSet* end = nullptr);

}  // namespace infoplan

#endif  // INFOPLAN_LOCAL_SEARCH_H_
