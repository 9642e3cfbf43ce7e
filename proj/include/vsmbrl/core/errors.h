// Copyright 2026 The VS-MBRL Authors
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

#ifndef VSMBRL_CORE_ERRORS_H_
#define VSMBRL_CORE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vsmbrl {

// Unknown names, unresolvable or malformed experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension mismatches, out-of-domain scalars, non-finite inputs.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation invoked in the wrong lifecycle state (step after done, empty
// buffer sampling, ...).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A caller broke a documented precondition on data provenance or content.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Non-finite value produced during a numerical computation. `diagnostic`
// names the offending item (transition index, rollout step, ...).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::string diagnostic)
      : std::runtime_error(what + " [" + diagnostic + "]"),
        diagnostic_(std::move(diagnostic)) {}
  const std::string& diagnostic() const { return diagnostic_; }

 private:
  std::string diagnostic_;
};

class PlanningFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested computation exceeds a hard guard (e.g. enumeration size).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vsmbrl

#endif  // VSMBRL_CORE_ERRORS_H_
