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

#ifndef VSMBRL_CORE_ENVIRONMENT_H_
#define VSMBRL_CORE_ENVIRONMENT_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vsmbrl/core/types.h"

namespace vsmbrl {

struct ModelStep {
  Vector next_state;
  double reward = 0.0;
};

struct StepResult {
  Vector next_state;
  double reward = 0.0;
  // terminal || truncated.
  bool done = false;
  bool terminal = false;
  bool truncated = false;
};

// The on-board model: pure dynamics and reward of one built-in environment,
// plus its initial-state distribution and terminal predicate. Models are
// immutable and may be shared across threads.
class Model {
 public:
  explicit Model(EnvSpec spec);
  virtual ~Model() = default;

  const EnvSpec& spec() const { return spec_; }

  // Checks dimensions and action range, then applies the dynamics.
  ModelStep step(const Vector& state, const Vector& action) const;

  virtual Vector initial_state(std::uint64_t seed) const = 0;
  virtual bool is_terminal(const Vector& /*state*/) const { return false; }

 protected:
  virtual ModelStep dynamics(const Vector& state,
                             const Vector& action) const = 0;

 private:
  EnvSpec spec_;
};

// Episode runner around a Model. Each worker owns its own instance.
class Environment {
 public:
  explicit Environment(std::shared_ptr<const Model> model);

  Vector reset(std::uint64_t seed);
  StepResult step(const Vector& action);

  const Model& model() const { return *model_; }
  std::shared_ptr<const Model> shared_model() const { return model_; }
  const EnvSpec& spec() const { return model_->spec(); }

  bool started() const { return started_; }
  bool done() const { return done_; }
  int episode_steps() const { return steps_; }
  const Vector& state() const { return state_; }

  // Reinstates a previously observed episode position (checkpoint restore).
  void restore(Vector state, int episode_steps, bool done);

 private:
  std::shared_ptr<const Model> model_;
  Vector state_;
  int steps_ = 0;
  bool done_ = false;
  bool started_ = false;
};

// Deterministic tabular MDP exposed through one-hot states and a single
// continuous action coordinate split into n_actions equal bins over [-1, 1].
class TabularModel : public Model {
 public:
  TabularModel(TabularMDP mdp, std::string name, std::vector<int> terminal,
               bool random_start);

  const TabularMDP& mdp() const { return mdp_; }

  Vector encode_state(int s) const;
  int decode_state(const Vector& state) const;
  // Centre of bin i.
  Vector encode_action(int a) const;
  int decode_action(const Vector& action) const;

  Vector initial_state(std::uint64_t seed) const override;
  bool is_terminal(const Vector& state) const override;

 protected:
  ModelStep dynamics(const Vector& state, const Vector& action) const override;

 private:
  TabularMDP mdp_;
  std::vector<bool> terminal_;
  bool random_start_;
};

// 2-D double integrator; state (x, y, vx, vy), acceleration = kAccelGain * a.
// Reward 1 for every step that starts inside the goal disc.
class PointMassModel : public Model {
 public:
  static constexpr double kDt = 0.05;
  static constexpr double kAccelGain = 4.0;
  static constexpr double kGoalX = 0.5;
  static constexpr double kGoalY = 0.5;
  static constexpr double kGoalRadius = 0.1;
  static constexpr double kPositionLimit = 1.0;
  static constexpr double kVelocityLimit = 1.0;
  static constexpr double kStartSpread = 0.1;
  static constexpr int kEpisodeSteps = 200;

  PointMassModel();
  Vector initial_state(std::uint64_t seed) const override;

 protected:
  ModelStep dynamics(const Vector& state, const Vector& action) const override;
};

// Torque-limited pendulum swing-up; state (cos th, sin th, th_dot) with th = 0
// upright. One explicit Euler step per control step.
class PendulumModel : public Model {
 public:
  static constexpr double kDt = 0.05;
  static constexpr double kGravity = 10.0;
  static constexpr double kMass = 1.0;
  static constexpr double kLength = 1.0;
  static constexpr double kMaxTorque = 2.0;
  static constexpr double kMaxSpeed = 8.0;
  static constexpr double kInitSpeed = 1.0;
  static constexpr int kEpisodeSteps = 200;

  PendulumModel();
  Vector initial_state(std::uint64_t seed) const override;

  static double angle(const Vector& state);

 protected:
  ModelStep dynamics(const Vector& state, const Vector& action) const override;
};

// Names: "ChainMDP" (6 states), "ChainMDP-<n>", "PointMassSparse",
// "PendulumSwing", "RandomFiniteMDP" (5 states x 3 actions, generator seed 0),
// "RandomFiniteMDP-<S>x<A>-<seed>". Unknown names raise ConfigError.
std::shared_ptr<const Model> make_model(const std::string& name);
Environment make_environment(const std::string& name);
std::vector<std::string> builtin_environment_names();

}  // namespace vsmbrl

#endif  // VSMBRL_CORE_ENVIRONMENT_H_
