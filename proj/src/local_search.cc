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

#include "infoplan/local_search.h"

#include <string>

#include "infoplan/errors.h"

namespace infoplan {

OracleTally::OracleTally(const CountingOracle& oracle)
    : oracle_(oracle),
      misses_(oracle.misses()),
      requests_(oracle.requests()),
      start_(std::chrono::steady_clock::now()) {}

void OracleTally::Close(RunMetrics& m) const {
  m.oracle_calls = oracle_.misses() - misses_;
  m.oracle_requests = oracle_.requests() - requests_;
  m.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start_).count();
}

std::string_view OpKindName(OpKind kind) {
  switch (kind) {
    case OpKind::kDelete:
      return "delete";
    case OpKind::kAdd:
      return "add";
    case OpKind::kSwap:
      return "swap";
  }
  return "unknown";
}

OpKind KindOf(TrajId d, TrajId a) {
  if (d == kNop && a == kNop) throw ContractViolation("(NOP, NOP) is not an operation");
  if (a == kNop) return OpKind::kDelete;
  if (d == kNop) return OpKind::kAdd;
  return OpKind::kSwap;
}

ProposalSearch::ProposalSearch(const SearchContext& ctx, int robot,
                               std::span<const TrajId> candidates,
                               const SolutionSet& s, bool lazy)
    : ctx_(ctx), robot_(robot), candidates_(candidates), s_(s), lazy_(lazy) {
  result_.proposer = robot;
}

void ProposalSearch::Finish(TrajId d, TrajId a, double j_after) {
  result_.d = d;
  result_.a = a;
  result_.g_before = g_s_;
  result_.j_minus = j_minus_;
  result_.j_after = j_after;
  state_ = State::kDone;
}

bool ProposalSearch::Step(CountingOracle& oracle) {
  const PartitionMatroid& m = *ctx_.matroid;
  while (true) {
    switch (state_) {
      case State::kDone:
        return true;

      case State::kStart:
        ds_ = s_.Ids();
        ds_.push_back(kNop);
        g_s_ = oracle.G(s_);
        ++evaluations_;
        state_ = State::kNextD;
        return false;

      case State::kNextD: {
        if (d_index_ == ds_.size()) {
          j_minus_ = 0.0;
          Finish(kNop, kNop, 0.0);
          return true;
        }
        const TrajId d = ds_[d_index_];
        minus_ = s_;
        if (d != kNop) minus_.Remove(m, d);
        const double g_minus = oracle.G(minus_, j_minus_);
        ++evaluations_;
        delta_ = Deficiency(g_s_, g_minus, ctx_.alpha, ctx_.n);
        if (delta_ <= 0.0) {
          Finish(d, kNop, j_minus_);
          return true;
        }
        if (minus_.has(robot_)) {
          ++d_index_;
        } else {
          a_index_ = 0;
          state_ = State::kScan;
        }
        return false;
      }

      case State::kScan: {
        const TrajId d = ds_[d_index_];
        while (a_index_ < candidates_.size() && candidates_[a_index_] == d) {
          ++a_index_;
        }
        if (a_index_ == candidates_.size() ||
            (lazy_ && m.at(candidates_[a_index_]).standalone < delta_)) {
          ++d_index_;
          state_ = State::kNextD;
          continue;
        }
        const TrajId a = candidates_[a_index_++];
        SolutionSet plus = minus_;
        plus.Add(m, a);
        const double j_plus = oracle.J(plus);
        ++evaluations_;
        if (j_plus - j_minus_ >= delta_) {
          Finish(d, a, j_plus);
          return true;
        }
        return false;
      }
    }
  }
}

Proposal FindProposal(const SearchContext& ctx, int robot,
                      std::span<const TrajId> candidates, const SolutionSet& s,
                      bool lazy, CountingOracle& oracle) {
  ProposalSearch search(ctx, robot, candidates, s, lazy);
  while (!search.Step(oracle)) {
  }
  return search.result();
}

bool ValidateProposal(const SearchContext& ctx, const SolutionSet& s,
                      Proposal& p, CountingOracle& oracle) {
  const PartitionMatroid& m = *ctx.matroid;
  if (p.nop()) return false;
  if (p.d != kNop && !s.Contains(m, p.d)) return false;
  SolutionSet minus = s;
  if (p.d != kNop) minus.Remove(m, p.d);
  if (p.a != kNop) {
    if (p.a < 0 || p.a >= m.size()) return false;
    if (m.robot_of(p.a) != p.proposer || minus.has(p.proposer)) return false;
  }
  const double g_s = oracle.G(s);
  double j_minus;
  const double g_minus = oracle.G(minus, j_minus);
  const double delta = Deficiency(g_s, g_minus, ctx.alpha, ctx.n);
  double j_after = j_minus;
  bool ok;
  if (p.a == kNop) {
    ok = delta <= 0.0;
  } else {
    SolutionSet plus = minus;
    plus.Add(m, p.a);
    j_after = oracle.J(plus);
    ok = j_after - j_minus >= delta;
  }
  if (ok) {
    p.g_before = g_s;
    p.j_minus = j_minus;
    p.j_after = j_after;
  }
  return ok;
}

void ApplyOp(const PartitionMatroid& m, SolutionSet& s, TrajId d, TrajId a) {
  if (d != kNop) s.Remove(m, d);
  if (a != kNop) s.Add(m, a);
}

std::string AuditOps(const SearchContext& ctx, double lambda,
                     const SolutionSet& start, std::span<const LocalOp> ops,
                     SolutionSet* end) {
  const PartitionMatroid& m = *ctx.matroid;
  SolutionSet s = start;
  for (size_t k = 0; k < ops.size(); ++k) {
    const LocalOp& op = ops[k];
    const std::string where = "op " + std::to_string(k) + " (" +
                              std::string(OpKindName(op.kind)) + " " +
                              std::to_string(op.d) + " -> " +
                              std::to_string(op.a) + "): ";
    if (op.d == kNop && op.a == kNop) return where + "empty operation";
    if (op.kind != KindOf(op.d, op.a)) return where + "kind does not match (d, a)";
    if (op.d != kNop && (op.d >= m.size() || !s.Contains(m, op.d))) {
      return where + "deleted trajectory not in the set";
    }
    SolutionSet minus = s;
    if (op.d != kNop) minus.Remove(m, op.d);
    if (op.a != kNop && (op.a < 0 || op.a >= m.size() || minus.has(m.robot_of(op.a)))) {
      return where + "addition violates the partition constraint";
    }
    if (k > 0 && op.g_before != ops[k - 1].j_after + lambda) {
      return where + "g before does not chain from the previous operation";
    }
    const double delta = Deficiency(op.g_before, op.j_minus + lambda, ctx.alpha, ctx.n);
    if (op.a == kNop) {
      if (!(delta <= 0.0) || op.j_after != op.j_minus) {
        return where + "deletion does not meet the improvement ratio";
      }
    } else if (!(op.j_after - op.j_minus >= delta)) {
      return where + "gain below the required deficiency";
    }
    ApplyOp(m, minus, kNop, op.a);
    s = minus;
  }
  if (end != nullptr) *end = s;
  return "";
}

}  // namespace infoplan
