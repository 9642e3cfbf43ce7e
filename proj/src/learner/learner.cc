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

#include "vsmbrl/learner/learner.h"

#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "vsmbrl/approx/param_io.h"
#include "vsmbrl/approx/policy.h"
#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/rng.h"

namespace vsmbrl {

void LearnerConfig::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("learner.gamma must lie in [0, 1)");
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("learner.tau must lie in (0, 1]");
  if (!(alpha >= 0.0)) throw ConfigError("learner.alpha must be >= 0");
  if (batch_size <= 0) throw ConfigError("learner.batch_size must be positive");
  if (!(critic_lr > 0.0) || !(actor_lr > 0.0)) {
    throw ConfigError("learning rates must be positive");
  }
  if (actor_update_divisor <= 0) {
    throw ConfigError("learner.actor_update_divisor must be positive");
  }
  if (critic_updates_per_env_step < 0) {
    throw ConfigError("learner.critic_updates_per_env_step must be >= 0");
  }
  if (!(imagined_fraction >= 0.0 && imagined_fraction <= 1.0)) {
    throw ConfigError("learner.imagined_fraction must lie in [0, 1]");
  }
  for (int h : hidden) {
    if (h <= 0) throw ConfigError("hidden layer sizes must be positive");
  }
}

Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols,
                     std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  }
  return m;
}

CriticUpdateResult critic_update(const CriticSet& critic,
                                 const CriticSet& target,
                                 const ParameterSet& actor,
                                 std::span<const Transition> batch,
                                 const LearnerConfig& config,
                                 std::vector<AdamState>& optim,
                                 std::uint64_t noise_seed) {
  if (batch.empty()) throw ArgumentError("critic_update needs a non-empty batch");
  if (optim.size() != critic.nets.size()) {
    throw ArgumentError("one optimizer state per critic net required");
  }
  const TransitionBatch b = make_batch(batch);
  const Vector y = soft_td_targets(target, actor, b, config.gamma, config.alpha,
                                   normal_matrix(actor.output_dim() / 2,
                                                 b.size(), noise_seed));
  CriticUpdateResult out{critic, 0.0};
  const AdamConfig adam{config.critic_lr};
  for (std::size_t k = 0; k < critic.nets.size(); ++k) {
    const LossAndGrad lg = critic_loss_grad(critic.nets[k], b, y);
    adam_step(out.critic.nets[k], lg.grad, optim[k], adam);
    out.loss += lg.loss;
  }
  out.loss /= static_cast<double>(critic.nets.size());
  return out;
}

ActorUpdateResult actor_update(const ParameterSet& actor,
                               const CriticSet& critic,
                               std::span<const Transition> batch,
                               const LearnerConfig& config, AdamState& optim,
                               std::uint64_t noise_seed) {
  if (batch.empty()) throw ArgumentError("actor_update needs a non-empty batch");
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch[i].origin != Origin::kReal) {
      throw ContractViolation("actor batch entry " + std::to_string(i) +
                              " is an Imagined transition");
    }
  }
  const TransitionBatch b = make_batch(batch);
  const Matrix noise =
      normal_matrix(actor.output_dim() / 2, b.size(), noise_seed);
  const LossAndGrad lg =
      actor_loss_grad(actor, critic, b.states, noise, config.alpha);
  ActorUpdateResult out{actor, lg.loss};
  adam_step(out.actor, lg.grad, optim, AdamConfig{config.actor_lr});
  return out;
}

ParameterSet target_sync(const ParameterSet& target, const ParameterSet& source,
                         double tau) {
  if (!target.same_shape(source)) {
    throw ArgumentError("target_sync shape mismatch");
  }
  ParameterSet out = target;
  if (tau == 1.0) {
    out.set_values(source.values());
  } else {
    out.set_values((1.0 - tau) * target.values() + tau * source.values());
  }
  return out;
}

CriticSet target_sync(const CriticSet& target, const CriticSet& source,
                      double tau) {
  if (!target.same_shape(source)) {
    throw ArgumentError("target_sync shape mismatch");
  }
  CriticSet out;
  for (std::size_t k = 0; k < target.nets.size(); ++k) {
    out.nets.push_back(target_sync(target.nets[k], source.nets[k], tau));
  }
  return out;
}

Learner::Learner(int state_dim, int action_dim, LearnerConfig config,
                 std::uint64_t seed)
    : config_(std::move(config)), seed_(seed) {
  config_.validate();
  actor_ = make_actor(state_dim, action_dim, config_.hidden);
  init_uniform_fan_in(actor_, derive_seed(seed_, Stream::kInit, 0));
  critic_ = make_critic_set(state_dim, action_dim, config_.hidden, config_.twin);
  for (std::size_t k = 0; k < critic_.nets.size(); ++k) {
    init_uniform_fan_in(critic_.nets[k], derive_seed(seed_, Stream::kInit, k + 1));
    critic_optim_.push_back(make_adam_state(critic_.nets[k]));
  }
  target_ = critic_;
  actor_optim_ = make_adam_state(actor_);
}

TrainStepReport Learner::train_step(const ReplayBuffer& real,
                                    const ReplayBuffer& imagined) {
  TrainStepReport report;
  double critic_sum = 0.0;
  double actor_sum = 0.0;
  const auto batch = static_cast<std::size_t>(config_.batch_size);
  for (int u = 0; u < config_.critic_updates_per_env_step; ++u) {
    const std::uint64_t step = counters_.critic_steps;
    std::size_t n_imagined = static_cast<std::size_t>(
        std::llround(config_.imagined_fraction * static_cast<double>(batch)));
    if (imagined.size() < n_imagined) n_imagined = 0;
    std::vector<Transition> transitions =
        real.sample(batch - n_imagined,
                    derive_seed(seed_, Stream::kCriticBatch, 2 * step));
    if (n_imagined > 0) {
      auto extra = imagined.sample(
          n_imagined, derive_seed(seed_, Stream::kCriticBatch, 2 * step + 1));
      transitions.insert(transitions.end(),
                         std::make_move_iterator(extra.begin()),
                         std::make_move_iterator(extra.end()));
    }
    CriticUpdateResult cr =
        critic_update(critic_, target_, actor_, transitions, config_,
                      critic_optim_,
                      derive_seed(seed_, Stream::kCriticNoise, step));
    critic_ = std::move(cr.critic);
    target_ = target_sync(target_, critic_, config_.tau);
    ++counters_.critic_steps;
    critic_sum += cr.loss;
    ++report.critic_updates;

    if (counters_.critic_steps %
            static_cast<std::uint64_t>(config_.actor_update_divisor) ==
        0) {
      const std::uint64_t astep = counters_.actor_steps;
      const auto actor_batch =
          real.sample(batch, derive_seed(seed_, Stream::kActorBatch, astep));
      ActorUpdateResult ar =
          actor_update(actor_, critic_, actor_batch, config_, actor_optim_,
                       derive_seed(seed_, Stream::kActorNoise, astep));
      actor_ = std::move(ar.actor);
      ++counters_.actor_steps;
      actor_sum += ar.loss;
      ++report.actor_updates;
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  report.critic_loss =
      report.critic_updates ? critic_sum / report.critic_updates : nan;
  report.actor_loss = report.actor_updates ? actor_sum / report.actor_updates : nan;
  return report;
}

namespace {

void save_adam(const AdamState& s, const std::filesystem::path& stem) {
  std::ofstream out(stem.string() + ".adam", std::ios::binary);
  if (!out) throw StateError("cannot write optimizer state");
  const auto n = static_cast<std::uint64_t>(s.m.size());
  out.write(reinterpret_cast<const char*>(&s.t), sizeof(s.t));
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(s.m.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
  out.write(reinterpret_cast<const char*>(s.v.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
}

AdamState load_adam(const std::filesystem::path& stem) {
  std::ifstream in(stem.string() + ".adam", std::ios::binary);
  if (!in) throw ArgumentError("cannot read optimizer state");
  AdamState s;
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&s.t), sizeof(s.t));
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  s.m.resize(static_cast<Eigen::Index>(n));
  s.v.resize(static_cast<Eigen::Index>(n));
  in.read(reinterpret_cast<char*>(s.m.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  in.read(reinterpret_cast<char*>(s.v.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw ArgumentError("truncated optimizer state");
  return s;
}

}  // namespace

void Learner::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  const nlohmann::json rng = {{"seed", seed_},
                              {"critic_steps", counters_.critic_steps},
                              {"actor_steps", counters_.actor_steps}};
  save_parameters(actor_, dir / "actor", rng);
  save_adam(actor_optim_, dir / "actor");
  for (std::size_t k = 0; k < critic_.nets.size(); ++k) {
    save_parameters(critic_.nets[k], dir / ("critic" + std::to_string(k)), rng);
    save_parameters(target_.nets[k], dir / ("target" + std::to_string(k)), rng);
    save_adam(critic_optim_[k], dir / ("critic" + std::to_string(k)));
  }
  nlohmann::json counters = {{"critic_steps", counters_.critic_steps},
                             {"actor_steps", counters_.actor_steps},
                             {"env_steps", counters_.env_steps},
                             {"seed", seed_}};
  std::ofstream(dir / "counters.json") << counters.dump(2) << "\n";
}

void Learner::load(const std::filesystem::path& dir) {
  std::ifstream cin(dir / "counters.json");
  if (!cin) throw ArgumentError("checkpoint missing counters.json");
  const auto counters = nlohmann::json::parse(cin);
  auto actor = load_parameters(dir / "actor").params;
  if (!actor.same_shape(actor_)) throw ArgumentError("checkpoint actor shape mismatch");
  CriticSet critic;
  CriticSet target;
  std::vector<AdamState> optim;
  for (std::size_t k = 0; k < critic_.nets.size(); ++k) {
    critic.nets.push_back(
        load_parameters(dir / ("critic" + std::to_string(k))).params);
    target.nets.push_back(
        load_parameters(dir / ("target" + std::to_string(k))).params);
    optim.push_back(load_adam(dir / ("critic" + std::to_string(k))));
  }
  if (!critic.same_shape(critic_) || !target.same_shape(target_)) {
    throw ArgumentError("checkpoint critic shape mismatch");
  }
  actor_ = std::move(actor);
  actor_optim_ = load_adam(dir / "actor");
  critic_ = std::move(critic);
  target_ = std::move(target);
  critic_optim_ = std::move(optim);
  seed_ = counters.at("seed").get<std::uint64_t>();
  counters_.critic_steps = counters.at("critic_steps").get<std::uint64_t>();
  counters_.actor_steps = counters.at("actor_steps").get<std::uint64_t>();
  counters_.env_steps = counters.at("env_steps").get<std::uint64_t>();
}

bool Learner::operator==(const Learner& o) const {
  return config_ == o.config_ && seed_ == o.seed_ && actor_ == o.actor_ &&
         critic_ == o.critic_ && target_ == o.target_ &&
         actor_optim_ == o.actor_optim_ && critic_optim_ == o.critic_optim_ &&
         counters_ == o.counters_;
}

}  // namespace vsmbrl
