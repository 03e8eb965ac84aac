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

// Centralized solvers: two-round local search, coordinate descent with
// accelerated greedy, and exhaustive search for small instances.

#ifndef INFOPLAN_CENTRAL_H_
#define INFOPLAN_CENTRAL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "infoplan/local_search.h"

namespace infoplan {

enum class ScanOrder {
  // Deletions, then additions, then swaps, each scanning ids in ascending
  // order; the first sufficient operation is taken and the scan restarts.
  kDeleteAddSwap,
  // Robots take turns running the per-robot proposal search, starting after
  // the robot whose operation was last accepted. This is the order the
  // distributed solver follows under its canonical schedule.
  kAgentMajor,
};

struct ClsOptions {
  double alpha = 1.0;
  ScanOrder order = ScanOrder::kDeleteAddSwap;
  // Only used by kAgentMajor.
  bool lazy = false;
};

// Local search with two rounds; round 2 runs on the ground set without the
// round-1 solution. N in the ratio is the full ground-set size for both.
SolverResult Cls(const PartitionMatroid& m, CountingOracle& oracle,
                 const ClsOptions& opts = {});

struct ArgmaxResult {
  TrajId best = kNop;
  double gain = 0.0;
  std::int64_t evaluations = 0;
};

// argmax over `candidates` of J(S + a) - J(S), ties to the lowest id.
// `bounds[k]` must bound the gain of candidates[k] from above; candidates are
// visited by bound descending and the scan stops once no remaining bound can
// beat the best exact gain. Evaluated bounds are replaced by exact gains.
ArgmaxResult LazyGreedyArgmax(const PartitionMatroid& m, CountingOracle& oracle,
                              std::span<const TrajId> candidates,
                              std::span<double> bounds, const SolutionSet& s);

// Robots choose one after another in `order`, each taking its best marginal
// gain given earlier choices; a robot is left empty only when its best gain
// is negative.
SolverResult CoordinateDescent(const PartitionMatroid& m, CountingOracle& oracle,
                               std::span<const int> order, bool lazy = true);

// Robot order with ascending r_i * c^max_i, ties by robot id.
std::vector<int> CheapFirstOrder(std::span<const RobotSpec> robots,
                                 const CostField& field, int horizon);

// Exhaustive maximizer of g, ties to the lexicographically smallest slot
// vector (empty before any trajectory). Throws ContractViolation when there
// are more than 10^6 admissible sets.
SolutionSet BruteForceOpt(const PartitionMatroid& m, CountingOracle& oracle);

}  // namespace infoplan

#endif  // INFOPLAN_CENTRAL_H_
