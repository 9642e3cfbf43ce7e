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

#include "vsmbrl/core/environment.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>

#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/rng.h"

namespace vsmbrl {

Model::Model(EnvSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

ModelStep Model::step(const Vector& state, const Vector& action) const {
  if (state.size() != spec_.state_dim) {
    throw ArgumentError(spec_.name + ": state dimension " +
                        std::to_string(state.size()) + " != " +
                        std::to_string(spec_.state_dim));
  }
  if (action.size() != spec_.action_dim) {
    throw ArgumentError(spec_.name + ": action dimension " +
                        std::to_string(action.size()) + " != " +
                        std::to_string(spec_.action_dim));
  }
  for (Eigen::Index i = 0; i < action.size(); ++i) {
    if (!(action[i] >= -1.0 && action[i] <= 1.0)) {
      throw ArgumentError(spec_.name + ": action component outside [-1, 1]");
    }
  }
  return dynamics(state, action);
}

Environment::Environment(std::shared_ptr<const Model> model)
    : model_(std::move(model)) {
  if (!model_) throw ArgumentError("environment needs a model");
}

Vector Environment::reset(std::uint64_t seed) {
  state_ = model_->initial_state(seed);
  steps_ = 0;
  done_ = false;
  started_ = true;
  return state_;
}

StepResult Environment::step(const Vector& action) {
  if (!started_) throw StateError(spec().name + ": step before reset");
  if (done_) throw StateError(spec().name + ": step after episode end");
  ModelStep ms = model_->step(state_, action);
  StepResult out;
  out.reward = ms.reward;
  out.terminal = model_->is_terminal(ms.next_state);
  ++steps_;
  out.truncated = !out.terminal && steps_ >= spec().max_episode_steps;
  out.done = out.terminal || out.truncated;
  state_ = std::move(ms.next_state);
  out.next_state = state_;
  done_ = out.done;
  return out;
}

void Environment::restore(Vector state, int episode_steps, bool done) {
  if (state.size() != spec().state_dim) {
    throw ArgumentError("restored state dimension mismatch");
  }
  state_ = std::move(state);
  steps_ = episode_steps;
  done_ = done;
  started_ = true;
}

// --- TabularModel -----------------------------------------------------------

namespace {

EnvSpec tabular_spec(const TabularMDP& mdp, std::string name) {
  EnvSpec spec;
  spec.state_dim = mdp.n_states;
  spec.action_dim = 1;
  spec.gamma = mdp.gamma;
  spec.max_episode_steps = mdp.horizon;
  spec.name = std::move(name);
  return spec;
}

}  // namespace

TabularModel::TabularModel(TabularMDP mdp, std::string name,
                           std::vector<int> terminal, bool random_start)
    : Model(tabular_spec(mdp, std::move(name))),
      mdp_(std::move(mdp)),
      terminal_(static_cast<std::size_t>(mdp_.n_states), false),
      random_start_(random_start) {
  mdp_.validate();
  for (int s : terminal) {
    if (s < 0 || s >= mdp_.n_states) {
      throw ArgumentError("terminal state out of range");
    }
    terminal_[static_cast<std::size_t>(s)] = true;
  }
}

Vector TabularModel::encode_state(int s) const {
  Vector v = Vector::Zero(mdp_.n_states);
  v[s] = 1.0;
  return v;
}

int TabularModel::decode_state(const Vector& state) const {
  int hot = -1;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    if (state[i] == 1.0) {
      if (hot >= 0) throw ArgumentError("tabular state is not one-hot");
      hot = static_cast<int>(i);
    } else if (state[i] != 0.0) {
      throw ArgumentError("tabular state is not one-hot");
    }
  }
  if (hot < 0) throw ArgumentError("tabular state is not one-hot");
  return hot;
}

Vector TabularModel::encode_action(int a) const {
  Vector v(1);
  v[0] = -1.0 + (2.0 * a + 1.0) / mdp_.n_actions;
  return v;
}

int TabularModel::decode_action(const Vector& action) const {
  const double unit = (action[0] + 1.0) / 2.0;
  const int bin = static_cast<int>(std::floor(unit * mdp_.n_actions));
  return std::clamp(bin, 0, mdp_.n_actions - 1);
}

Vector TabularModel::initial_state(std::uint64_t seed) const {
  if (!random_start_) return encode_state(0);
  Rng rng(seed);
  return encode_state(static_cast<int>(rng.index(mdp_.n_states)));
}

bool TabularModel::is_terminal(const Vector& state) const {
  return terminal_[static_cast<std::size_t>(decode_state(state))];
}

ModelStep TabularModel::dynamics(const Vector& state,
                                 const Vector& action) const {
  const int s = decode_state(state);
  const int a = decode_action(action);
  return {encode_state(mdp_.next(s, a)), mdp_.r(s, a)};
}

// --- PointMassModel ---------------------------------------------------------

namespace {

EnvSpec point_mass_spec() {
  EnvSpec spec;
  spec.state_dim = 4;
  spec.action_dim = 2;
  spec.gamma = 0.99;
  spec.max_episode_steps = PointMassModel::kEpisodeSteps;
  spec.name = "PointMassSparse";
  return spec;
}

EnvSpec pendulum_spec() {
  EnvSpec spec;
  spec.state_dim = 3;
  spec.action_dim = 1;
  spec.gamma = 0.99;
  spec.max_episode_steps = PendulumModel::kEpisodeSteps;
  spec.name = "PendulumSwing";
  return spec;
}

}  // namespace

PointMassModel::PointMassModel() : Model(point_mass_spec()) {}

Vector PointMassModel::initial_state(std::uint64_t seed) const {
  Rng rng(seed);
  Vector s = Vector::Zero(4);
  s[0] = rng.uniform(-kStartSpread, kStartSpread);
  s[1] = rng.uniform(-kStartSpread, kStartSpread);
  return s;
}

ModelStep PointMassModel::dynamics(const Vector& state,
                                   const Vector& action) const {
  const double dx = state[0] - kGoalX;
  const double dy = state[1] - kGoalY;
  const double reward =
      dx * dx + dy * dy <= kGoalRadius * kGoalRadius ? 1.0 : 0.0;
  Vector next(4);
  next[0] = std::clamp(state[0] + kDt * state[2], -kPositionLimit,
                       kPositionLimit);
  next[1] = std::clamp(state[1] + kDt * state[3], -kPositionLimit,
                       kPositionLimit);
  next[2] = std::clamp(state[2] + kDt * kAccelGain * action[0], -kVelocityLimit,
                       kVelocityLimit);
  next[3] = std::clamp(state[3] + kDt * kAccelGain * action[1], -kVelocityLimit,
                       kVelocityLimit);
  return {std::move(next), reward};
}

// --- PendulumModel ----------------------------------------------------------

PendulumModel::PendulumModel() : Model(pendulum_spec()) {}

double PendulumModel::angle(const Vector& state) {
  return std::atan2(state[1], state[0]);
}

Vector PendulumModel::initial_state(std::uint64_t seed) const {
  Rng rng(seed);
  const double th = rng.uniform(-std::numbers::pi, std::numbers::pi);
  const double th_dot = rng.uniform(-kInitSpeed, kInitSpeed);
  Vector s(3);
  s << std::cos(th), std::sin(th), th_dot;
  return s;
}

ModelStep PendulumModel::dynamics(const Vector& state,
                                  const Vector& action) const {
  const double th = angle(state);
  const double th_dot = state[2];
  const double a = action[0];
  const double torque = kMaxTorque * a;
  const double reward = -(th * th + 0.1 * th_dot * th_dot + 0.001 * a * a);
  const double th_ddot = 3.0 * kGravity / (2.0 * kLength) * std::sin(th) +
                         3.0 / (kMass * kLength * kLength) * torque;
  const double next_th = th + kDt * th_dot;
  const double next_th_dot =
      std::clamp(th_dot + kDt * th_ddot, -kMaxSpeed, kMaxSpeed);
  Vector next(3);
  next << std::cos(next_th), std::sin(next_th), next_th_dot;
  return {std::move(next), reward};
}

// --- factory ----------------------------------------------------------------

namespace {

std::shared_ptr<const Model> make_chain(int n) {
  if (n < 2 || n > 1000) throw ConfigError("ChainMDP length out of range");
  return std::make_shared<TabularModel>(
      make_chain_mdp(n, 4 * n, 0.99),
      n == 6 ? "ChainMDP" : "ChainMDP-" + std::to_string(n),
      std::vector<int>{n - 1}, false);
}

std::shared_ptr<const Model> make_random_finite(int s, int a,
                                                std::uint64_t seed,
                                                std::string name) {
  if (s < 1 || a < 1 || s > 10000 || a > 64) {
    throw ConfigError("RandomFiniteMDP size out of range");
  }
  return std::make_shared<TabularModel>(make_random_mdp(s, a, 50, 0.99, seed),
                                        std::move(name), std::vector<int>{},
                                        true);
}

}  // namespace

std::shared_ptr<const Model> make_model(const std::string& name) {
  if (name == "PointMassSparse") return std::make_shared<PointMassModel>();
  if (name == "PendulumSwing") return std::make_shared<PendulumModel>();
  if (name == "ChainMDP") return make_chain(6);
  if (name == "RandomFiniteMDP") return make_random_finite(5, 3, 0, name);
  std::smatch m;
  static const std::regex chain_re(R"(ChainMDP-(\d{1,4}))");
  static const std::regex random_re(R"(RandomFiniteMDP-(\d{1,5})x(\d{1,2})-(\d{1,19}))");
  if (std::regex_match(name, m, chain_re)) return make_chain(std::stoi(m[1]));
  if (std::regex_match(name, m, random_re)) {
    return make_random_finite(std::stoi(m[1]), std::stoi(m[2]),
                              std::stoull(m[3]), name);
  }
  throw ConfigError("unknown environment '" + name + "'");
}

Environment make_environment(const std::string& name) {
  return Environment(make_model(name));
}

std::vector<std::string> builtin_environment_names() {
  return {"ChainMDP", "PointMassSparse", "PendulumSwing", "RandomFiniteMDP"};
}

}  // namespace vsmbrl
