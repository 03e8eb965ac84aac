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

#ifndef INFOPLAN_ERRORS_H_
#define INFOPLAN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace infoplan {

// A caller broke a documented precondition (dimension mismatch, inadmissible
// set operation, unknown motion primitive, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine received input outside its domain, e.g. a matrix that
// is not positive definite.
class NumericalDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The distributed protocol observed inconsistent agent state.
class ProtocolFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration or trace input. `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, int line, const std::string& what,
              const std::string& source = "config")
      : std::runtime_error(Format(source, field, line, what)),
        field_(field),
        line_(line) {}

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  static std::string Format(const std::string& source, const std::string& field,
                            int line, const std::string& what) {
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    if (!field.empty()) out += ": field '" + field + "'";
    return out + ": " + what;
  }

  std::string field_;
  int line_;
};

}  // namespace infoplan

#endif  // INFOPLAN_ERRORS_H_
