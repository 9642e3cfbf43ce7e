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

#ifndef VSMBRL_HARNESS_CONFIG_H_
#define VSMBRL_HARNESS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "vsmbrl/learner/learner.h"
#include "vsmbrl/planner/planner.h"

namespace vsmbrl {

enum class EvalMode {
  // Full MPC agent with the configured scoring, no learning or buffer writes.
  kPlanner,
  // tanh(mean) of the actor alone.
  kPolicyMean,
};

struct ExperimentConfig {
  std::string env = "PointMassSparse";
  PlannerConfig planner;
  LearnerConfig learner;
  std::uint64_t total_env_steps = 50'000;
  std::uint64_t eval_every = 2'500;
  int n_seeds = 5;
  std::string output_dir = "runs/default";

  // Leading env steps that act on a plain policy sample instead of the
  // planner, so the critic sees a spread of states before it steers.
  std::uint64_t warmup_steps = 0;
  std::uint64_t buffer_capacity = 100'000;
  int eval_episodes = 5;
  EvalMode eval_mode = EvalMode::kPlanner;
  // When false the wall_ms column is written as 0 so metrics stay
  // byte-reproducible.
  bool record_wall_clock = false;
  bool plan_trace = false;

  // Throws ConfigError for unresolvable names or out-of-range values.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

// Desk-scale defaults: N = 16, H = 5, gamma = 0.99, batch 128, buffer 1e5,
// 50k env steps, 5 seeds.
ExperimentConfig default_experiment_config(const std::string& env,
                                           ScoringKind kind);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
// Unknown keys are rejected; missing keys keep their defaults.
ExperimentConfig config_from_json(const nlohmann::json& j);

ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const ExperimentConfig& cfg,
                 const std::filesystem::path& path);

}  // namespace vsmbrl

#endif  // VSMBRL_HARNESS_CONFIG_H_
