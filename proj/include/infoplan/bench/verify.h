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


// Property and guarantee checks on random small instances, run by
// `infoplan verify` and the acceptance suite.

#ifndef INFOPLAN_BENCH_VERIFY_H_
#define INFOPLAN_BENCH_VERIFY_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace infoplan::bench {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// g(CLS) and g(DLS) (both schedules) against g(S*) / (4 (1 + alpha)) with S*
// from exhaustive search, alpha = 1.
CheckResult CheckGuarantee(int instances = 200, std::uint64_t seed = 1);

// CLS in agent-major order and DLS under the canonical schedule without warm
// start: identical operation traces and solutions.
CheckResult CheckEquivalence(int instances = 100, std::uint64_t seed = 2);

// Lazy and naive search commit identical operations (DLS canonical, with and
// without warm start) and CD picks identical sets.
CheckResult CheckLazySoundness(int instances = 100, std::uint64_t seed = 3);

// Scalar closed form, information form against gain form, and MI
// non-negativity, monotonicity and submodularity.
CheckResult CheckOracle(std::uint64_t seed = 4);

// Concurrent-schedule runs with trace audit and the per-round commit bound.
CheckResult CheckProtocolFuzz(int runs = 1000, std::uint64_t seed = 5);

std::vector<CheckResult> RunVerify(std::ostream* progress = nullptr);

}  // namespace infoplan::bench

#endif  // INFOPLAN_BENCH_VERIFY_H_
