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


// YAML scenario configuration files.

#ifndef INFOPLAN_BENCH_CONFIG_H_
#define INFOPLAN_BENCH_CONFIG_H_

#include <string>

#include "infoplan/bench/scenario.h"

namespace infoplan::bench {

// Starts from the defaults of the file's `scenario` and applies every key
// present. Throws ConfigError with the line and field of unknown keys,
// wrong types and out-of-range values.
ScenarioConfig LoadConfig(const std::string& path);
ScenarioConfig ParseConfig(const std::string& text);

// Checks ranges; throws ConfigError.
void ValidateConfig(const ScenarioConfig& cfg);

}  // namespace infoplan::bench

#endif  // INFOPLAN_BENCH_CONFIG_H_
