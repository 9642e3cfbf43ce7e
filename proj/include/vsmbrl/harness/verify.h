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

#ifndef VSMBRL_HARNESS_VERIFY_H_
#define VSMBRL_HARNESS_VERIFY_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsmbrl/core/types.h"
#include "vsmbrl/scoring/scoring.h"

namespace vsmbrl {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  nlohmann::json metrics = nlohmann::json::object();
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool passed() const;
  nlohmann::json to_json() const;
  std::string to_table() const;
};

// Central differences of f around x with step h.
Vector central_difference(const std::function<double(const Vector&)>& f,
                          const Vector& x, double h = 1e-5);
// max_i |a_i - n_i| / max(|a_i|, |n_i|, 1e-6).
double gradient_relative_error(const Vector& analytic, const Vector& numeric);

SuiteResult verify_expansion_identity(int n_mdps = 100, std::uint64_t seed = 1);
SuiteResult verify_bellman_telescoping(int n_mdps = 100, std::uint64_t seed = 2);
SuiteResult verify_series_bound_suite(int n_trials = 1000, std::uint64_t seed = 42);
SuiteResult verify_gradients(int n_trials = 100, std::uint64_t seed = 3);
SuiteResult verify_sparse_discrimination();
SuiteResult verify_planner_agreement(int n_mdps = 50, std::uint64_t seed = 4);
// Where gamma^t (t+1) exceeds 1 at gamma = 0.9. Steps are counted from 0;
// the detail also gives the 1-based interval.
SuiteResult verify_weight_profile();

VerifyReport run_verify_suites();

// Columns: t, sum_reward_weight, sum_value_weight, beyond_horizon_weight for
// t = 0..t_max. sum_reward_weight is gamma^t inside the horizon and 0 beyond;
// sum_value_weight is gamma^t (t+1); beyond_horizon_weight is (H+1) gamma^t.
void write_weight_profile_csv(std::ostream& out, const ScoringSpec& spec,
                              int t_max);

}  // namespace vsmbrl

#endif  // VSMBRL_HARNESS_VERIFY_H_
