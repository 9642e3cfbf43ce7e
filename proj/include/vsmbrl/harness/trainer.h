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

#ifndef VSMBRL_HARNESS_TRAINER_H_
#define VSMBRL_HARNESS_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <vector>

#include "vsmbrl/core/environment.h"
#include "vsmbrl/core/replay_buffer.h"
#include "vsmbrl/core/rng.h"
#include "vsmbrl/harness/config.h"
#include "vsmbrl/harness/metrics.h"
#include "vsmbrl/learner/learner.h"

namespace vsmbrl {

// One seed of value-summation MBRL: plan -> execute first action -> store the
// real transition -> critic/actor updates, with an evaluation row every
// eval_every environment steps.
class Trainer {
 public:
  Trainer(ExperimentConfig config, std::uint64_t seed);

  void step();
  void run(std::uint64_t until_env_step);
  void run() { run(config_.total_env_steps); }

  // Mean undiscounted return over eval_episodes episodes.
  double evaluate();
  void set_eval_episodes(int episodes) { config_.eval_episodes = episodes; }

  const std::vector<MetricRow>& rows() const { return rows_; }
  const Learner& learner() const { return learner_; }
  const ReplayBuffer& real_buffer() const { return real_; }
  const ReplayBuffer& imagined_buffer() const { return imagined_; }
  std::uint64_t env_steps() const { return learner_.counters().env_steps; }
  const ExperimentConfig& config() const { return config_; }
  std::uint64_t seed() const { return seed_; }

  // Writes every piece of run state; a restored trainer continues
  // bit-identically.
  void save_checkpoint(const std::filesystem::path& dir) const;
  static Trainer load_checkpoint(const std::filesystem::path& dir);

  // Appends plan-trace lines to `path` from now on.
  void open_plan_trace(const std::filesystem::path& path);

 private:
  struct Window {
    double critic_sum = 0.0;
    std::uint64_t critic_n = 0;
    double actor_sum = 0.0;
    std::uint64_t actor_n = 0;
    double mean_score_sum = 0.0;
    double chosen_score_sum = 0.0;
    std::uint64_t plans = 0;
  };

  PlannerConfig planner_for(Stream stream, std::uint64_t counter) const;
  void emit_row();

  ExperimentConfig config_;
  std::uint64_t seed_;
  std::shared_ptr<const Model> model_;
  Environment env_;
  Learner learner_;
  ReplayBuffer real_;
  ReplayBuffer imagined_;
  std::uint64_t episodes_ = 0;
  std::uint64_t evaluations_ = 0;
  Window window_;
  std::vector<MetricRow> rows_;
  double wall_epoch_ms_ = 0.0;
  std::unique_ptr<std::ofstream> trace_;
};

// Runs the greedy agent stored in a checkpoint for `episodes` episodes.
double evaluate_checkpoint(const std::filesystem::path& dir, int episodes);

}  // namespace vsmbrl

#endif  // VSMBRL_HARNESS_TRAINER_H_
