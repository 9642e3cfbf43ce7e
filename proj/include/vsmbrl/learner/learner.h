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

#ifndef VSMBRL_LEARNER_LEARNER_H_
#define VSMBRL_LEARNER_LEARNER_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vsmbrl/approx/adam.h"
#include "vsmbrl/core/replay_buffer.h"
#include "vsmbrl/core/types.h"
#include "vsmbrl/learner/losses.h"

namespace vsmbrl {

struct LearnerConfig {
  double gamma = 0.99;
  double tau = 0.005;
  double alpha = 0.2;
  int batch_size = 128;
  double critic_lr = 3e-4;
  double actor_lr = 3e-4;
  // N: one actor step per N critic steps.
  int actor_update_divisor = 16;
  bool twin = true;
  // Critic steps run per environment step.
  int critic_updates_per_env_step = 1;
  // Share of each critic minibatch drawn from imagined transitions.
  double imagined_fraction = 0.5;
  std::vector<int> hidden = {64, 64};

  void validate() const;
  bool operator==(const LearnerConfig&) const = default;
};

struct UpdateCounters {
  std::uint64_t critic_steps = 0;
  std::uint64_t actor_steps = 0;
  std::uint64_t env_steps = 0;

  bool cadence_holds(int divisor) const {
    return actor_steps == critic_steps / static_cast<std::uint64_t>(divisor);
  }
  bool operator==(const UpdateCounters&) const = default;
};

struct CriticUpdateResult {
  CriticSet critic;
  double loss = 0.0;
};

struct ActorUpdateResult {
  ParameterSet actor;
  double loss = 0.0;
};

// One Adam step per critic net on the mean-squared soft TD error. `optim`
// holds one AdamState per net. The next-action noise is drawn from
// `noise_seed`.
CriticUpdateResult critic_update(const CriticSet& critic,
                                 const CriticSet& target,
                                 const ParameterSet& actor,
                                 std::span<const Transition> batch,
                                 const LearnerConfig& config,
                                 std::vector<AdamState>& optim,
                                 std::uint64_t noise_seed);

// One Adam step on mean(alpha * log pi(a|s) - min Q(s, a)) with a
// reparameterised. Throws ContractViolation if any transition is Imagined.
ActorUpdateResult actor_update(const ParameterSet& actor,
                               const CriticSet& critic,
                               std::span<const Transition> batch,
                               const LearnerConfig& config, AdamState& optim,
                               std::uint64_t noise_seed);

// (1 - tau) * target + tau * source, elementwise.
ParameterSet target_sync(const ParameterSet& target, const ParameterSet& source,
                         double tau);
CriticSet target_sync(const CriticSet& target, const CriticSet& source,
                      double tau);

// Standard-normal matrix drawn from a single seed.
Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

struct TrainStepReport {
  int critic_updates = 0;
  int actor_updates = 0;
  // Mean over the critic/actor steps performed; NaN when none ran.
  double critic_loss = 0.0;
  double actor_loss = 0.0;
};

// Single writer over actor, critic and target parameters. Minibatch and noise
// seeds are derived from (seed, step counter), so the learner's stochastic
// state is fully captured by its counters.
class Learner {
 public:
  Learner(int state_dim, int action_dim, LearnerConfig config,
          std::uint64_t seed);

  // Runs critic_updates_per_env_step critic steps (each followed by a soft
  // target sync) and an actor step after every N-th critic step. Critic
  // batches mix `real` and `imagined`; actor batches come from `real` only.
  TrainStepReport train_step(const ReplayBuffer& real,
                             const ReplayBuffer& imagined);
  void count_env_step() { ++counters_.env_steps; }

  const ParameterSet& actor() const { return actor_; }
  const CriticSet& critic() const { return critic_; }
  const CriticSet& target() const { return target_; }
  const UpdateCounters& counters() const { return counters_; }
  const LearnerConfig& config() const { return config_; }
  std::uint64_t seed() const { return seed_; }

  void save(const std::filesystem::path& dir) const;
  void load(const std::filesystem::path& dir);

  bool operator==(const Learner& other) const;

 private:
  LearnerConfig config_;
  std::uint64_t seed_;
  ParameterSet actor_;
  CriticSet critic_;
  CriticSet target_;
  AdamState actor_optim_;
  std::vector<AdamState> critic_optim_;
  UpdateCounters counters_;
};

}  // namespace vsmbrl

#endif  // VSMBRL_LEARNER_LEARNER_H_
