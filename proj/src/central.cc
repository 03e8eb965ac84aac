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

#include "infoplan/central.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "infoplan/errors.h"

namespace infoplan {
namespace {

TrajId BestSingleton(const PartitionMatroid& m, const std::vector<char>& excluded) {
  TrajId best = kNop;
  for (TrajId id = 0; id < m.size(); ++id) {
    if (excluded[id]) continue;
    if (best == kNop || m.at(id).standalone > m.at(best).standalone) best = id;
  }
  return best;
}

class LocalSearchRound {
 public:
  LocalSearchRound(const SearchContext& ctx, CountingOracle& oracle,
                   const std::vector<char>& excluded, int round,
                   SolverResult& out)
      : ctx_(ctx), m_(*ctx.matroid), oracle_(oracle), excluded_(excluded),
        round_(round), out_(out) {}

  void Accept(SolutionSet& s, TrajId d, TrajId a, double g_before,
              double j_minus, double j_after) {
    out_.op_trace.push_back({KindOf(d, a), d, a, round_, g_before, j_minus, j_after});
    ApplyOp(m_, s, d, a);
    ++out_.metrics.commits;
    out_.metrics.g_trace.push_back(j_after + oracle_.Offset());
  }

  bool TryDeleteAddSwap(SolutionSet& s) {
    double j_s;
    const double g_s = oracle_.G(s, j_s);
    const std::vector<TrajId> members = s.Ids();
    for (TrajId d : members) {
      SolutionSet minus = s;
      minus.Remove(m_, d);
      double j_minus;
      const double g_minus = oracle_.G(minus, j_minus);
      if (Deficiency(g_s, g_minus, ctx_.alpha, ctx_.n) <= 0.0) {
        Accept(s, d, kNop, g_s, j_minus, j_minus);
        return true;
      }
    }
    const double add_delta = Deficiency(g_s, g_s, ctx_.alpha, ctx_.n);
    for (TrajId a = 0; a < m_.size(); ++a) {
      if (excluded_[a] || s.has(m_.robot_of(a))) continue;
      SolutionSet plus = s;
      plus.Add(m_, a);
      const double j_plus = oracle_.J(plus);
      if (j_plus - j_s >= add_delta) {
        Accept(s, kNop, a, g_s, j_s, j_plus);
        return true;
      }
    }
    for (TrajId d : members) {
      SolutionSet minus = s;
      minus.Remove(m_, d);
      double j_minus;
      const double g_minus = oracle_.G(minus, j_minus);
      const double delta = Deficiency(g_s, g_minus, ctx_.alpha, ctx_.n);
      for (TrajId a = 0; a < m_.size(); ++a) {
        if (excluded_[a] || a == d || minus.has(m_.robot_of(a))) continue;
        SolutionSet plus = minus;
        plus.Add(m_, a);
        const double j_plus = oracle_.J(plus);
        if (j_plus - j_minus >= delta) {
          Accept(s, d, a, g_s, j_minus, j_plus);
          return true;
        }
      }
    }
    return false;
  }

  void RunAgentMajor(SolutionSet& s, bool lazy) {
    const int n = m_.num_robots();
    std::vector<std::vector<TrajId>> candidates(n);
    for (int i = 0; i < n; ++i) {
      for (TrajId id : m_.partition(i)) {
        if (!excluded_[id]) candidates[i].push_back(id);
      }
    }
    int next = 0, idle = 0;
    while (idle < n) {
      const int i = next;
      const Proposal p = FindProposal(ctx_, i, candidates[i], s, lazy, oracle_);
      if (p.nop()) {
        ++idle;
      } else {
        Accept(s, p.d, p.a, p.g_before, p.j_minus, p.j_after);
        idle = 0;
      }
      next = (i + 1) % n;
    }
  }

 private:
  const SearchContext& ctx_;
  const PartitionMatroid& m_;
  CountingOracle& oracle_;
  const std::vector<char>& excluded_;
  int round_;
  SolverResult& out_;
};

}  // namespace

SolverResult Cls(const PartitionMatroid& m, CountingOracle& oracle,
                 const ClsOptions& opts) {
  if (!(opts.alpha > 0.0)) throw ContractViolation("alpha must be positive");
  const OracleTally tally(oracle);
  SolverResult out;
  const SearchContext ctx{&m, opts.alpha, std::max(m.size(), 1)};
  std::vector<char> excluded(m.size(), 0);
  SolutionSet best(m.num_robots());
  double best_g = -std::numeric_limits<double>::infinity();
  for (int round = 1; round <= 2; ++round) {
    SolutionSet s(m.num_robots());
    const TrajId init = BestSingleton(m, excluded);
    if (init != kNop) s.Add(m, init);
    out.round_starts.push_back(s);
    ++out.metrics.rounds;
    LocalSearchRound search(ctx, oracle, excluded, round, out);
    if (init != kNop) {
      if (opts.order == ScanOrder::kDeleteAddSwap) {
        while (search.TryDeleteAddSwap(s)) {
        }
      } else {
        search.RunAgentMajor(s, opts.lazy);
      }
    }
    const double g = oracle.G(s);
    if (g > best_g) {
      best_g = g;
      best = s;
    }
    for (TrajId id : s.Ids()) excluded[id] = 1;
  }
  out.solution = best;
  out.g_value = oracle.G(best, out.j_value);
  tally.Close(out.metrics);
  return out;
}

ArgmaxResult LazyGreedyArgmax(const PartitionMatroid& m, CountingOracle& oracle,
                              std::span<const TrajId> candidates,
                              std::span<double> bounds, const SolutionSet& s) {
  if (bounds.size() != candidates.size()) {
    throw ContractViolation("LazyGreedyArgmax: one bound per candidate");
  }
  std::vector<size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    if (bounds[x] != bounds[y]) return bounds[x] > bounds[y];
    return candidates[x] < candidates[y];
  });
  ArgmaxResult r;
  if (candidates.empty()) return r;
  const double j_s = oracle.J(s);
  for (size_t k : order) {
    const TrajId id = candidates[k];
    if (r.best != kNop &&
        (bounds[k] < r.gain || (bounds[k] == r.gain && id > r.best))) {
      break;
    }
    SolutionSet plus = s;
    plus.Add(m, id);
    const double gain = oracle.J(plus) - j_s;
    ++r.evaluations;
    bounds[k] = gain;
    if (r.best == kNop || gain > r.gain || (gain == r.gain && id < r.best)) {
      r.best = id;
      r.gain = gain;
    }
  }
  return r;
}

SolverResult CoordinateDescent(const PartitionMatroid& m, CountingOracle& oracle,
                               std::span<const int> order, bool lazy) {
  std::vector<int> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> all(m.num_robots());
  std::iota(all.begin(), all.end(), 0);
  if (sorted != all) throw ContractViolation("CD order must be a permutation");

  const OracleTally tally(oracle);
  SolverResult out;
  SolutionSet s(m.num_robots());
  out.round_starts.push_back(s);
  out.metrics.rounds = 1;
  for (int robot : order) {
    const auto part = m.partition(robot);
    std::vector<double> bounds(part.size());
    for (size_t k = 0; k < part.size(); ++k) {
      bounds[k] = lazy ? m.at(part[k]).standalone
                       : std::numeric_limits<double>::infinity();
    }
    const ArgmaxResult best = LazyGreedyArgmax(m, oracle, part, bounds, s);
    if (best.best == kNop || best.gain < 0.0) continue;
    double j_s;
    const double g_s = oracle.G(s, j_s);
    s.Add(m, best.best);
    const double j_after = oracle.J(s);
    out.op_trace.push_back({OpKind::kAdd, kNop, best.best, 1, g_s, j_s, j_after});
    out.metrics.g_trace.push_back(j_after + oracle.Offset());
    ++out.metrics.commits;
  }
  out.solution = s;
  out.g_value = oracle.G(s, out.j_value);
  tally.Close(out.metrics);
  return out;
}

std::vector<int> CheapFirstOrder(std::span<const RobotSpec> robots,
                                 const CostField& field, int horizon) {
  std::vector<int> order(robots.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> key(robots.size());
  for (size_t i = 0; i < robots.size(); ++i) {
    key[i] = robots[i].weight * MaxTrajectoryCost(robots[i], field, horizon);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return key[x] < key[y]; });
  return order;
}

SolutionSet BruteForceOpt(const PartitionMatroid& m, CountingOracle& oracle) {
  const int n = m.num_robots();
  double count = 1.0;
  for (int i = 0; i < n; ++i) count *= m.partition_size(i) + 1;
  if (count > 1e6) {
    throw ContractViolation("BruteForceOpt: " + std::to_string(count) +
                            " admissible sets exceed the 1e6 limit");
  }
  std::vector<int> digit(n, 0);
  SolutionSet best(n);
  double best_g = -std::numeric_limits<double>::infinity();
  while (true) {
    SolutionSet s(n);
    for (int i = 0; i < n; ++i) {
      if (digit[i] > 0) s.Add(m, m.partition(i)[digit[i] - 1]);
    }
    const double g = oracle.G(s);
    if (g > best_g) {
      best_g = g;
      best = s;
    }
    int i = n - 1;
    while (i >= 0 && digit[i] == m.partition_size(i)) digit[i--] = 0;
    if (i < 0) break;
    ++digit[i];
  }
  return best;
}

}  // namespace infoplan
