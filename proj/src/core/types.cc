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

#include "vsmbrl/core/types.h"

#include <cmath>

#include "json.hpp"
#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/rng.h"

namespace vsmbrl {
namespace {

using nlohmann::json;

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vector_from_json(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

bool same_vector(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

std::string_view origin_name(Origin origin) {
  return origin == Origin::kReal ? "Real" : "Imagined";
}

bool Transition::operator==(const Transition& other) const {
  return same_vector(state, other.state) && same_vector(action, other.action) &&
         reward == other.reward && same_vector(next_state, other.next_state) &&
         done == other.done && origin == other.origin;
}

void validate_transition(const Transition& t, int state_dim, int action_dim) {
  if (t.state.size() != t.next_state.size()) {
    throw ArgumentError("transition state/next_state dimension mismatch");
  }
  if (state_dim > 0 && t.state.size() != state_dim) {
    throw ArgumentError("transition state dimension " +
                        std::to_string(t.state.size()) + " != " +
                        std::to_string(state_dim));
  }
  if (action_dim > 0 && t.action.size() != action_dim) {
    throw ArgumentError("transition action dimension mismatch");
  }
  for (Eigen::Index i = 0; i < t.action.size(); ++i) {
    if (!(t.action[i] >= -1.0 && t.action[i] <= 1.0)) {
      throw ArgumentError("transition action component outside [-1, 1]");
    }
  }
}

std::string transition_to_json_line(const Transition& t) {
  json j;
  j["state"] = vector_to_json(t.state);
  j["action"] = vector_to_json(t.action);
  j["reward"] = t.reward;
  j["next_state"] = vector_to_json(t.next_state);
  j["done"] = t.done;
  j["origin"] = std::string(origin_name(t.origin));
  return j.dump();
}

Transition transition_from_json_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed transition record: ") +
                        e.what());
  }
  Transition t;
  t.state = vector_from_json(j.at("state"));
  t.action = vector_from_json(j.at("action"));
  t.reward = j.at("reward").get<double>();
  t.next_state = vector_from_json(j.at("next_state"));
  t.done = j.at("done").get<bool>();
  const auto origin = j.at("origin").get<std::string>();
  if (origin == "Real") {
    t.origin = Origin::kReal;
  } else if (origin == "Imagined") {
    t.origin = Origin::kImagined;
  } else {
    throw ArgumentError("unknown transition origin '" + origin + "'");
  }
  return t;
}

bool Trajectory::operator==(const Trajectory& other) const {
  if (states.size() != other.states.size() ||
      actions.size() != other.actions.size()) {
    return false;
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!same_vector(states[i], other.states[i])) return false;
  }
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (!same_vector(actions[i], other.actions[i])) return false;
  }
  return rewards == other.rewards && q_estimates == other.q_estimates &&
         same_vector(terminal_state, other.terminal_state) &&
         score == other.score;
}

void EnvSpec::validate() const {
  if (state_dim <= 0 || action_dim <= 0) {
    throw ConfigError("environment dimensions must be positive");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw ConfigError("environment gamma must lie in [0, 1)");
  }
  if (max_episode_steps <= 0) {
    throw ConfigError("max_episode_steps must be positive");
  }
}

void TabularMDP::validate() const {
  if (n_states <= 0 || n_actions <= 0) {
    throw ArgumentError("tabular MDP needs positive state and action counts");
  }
  const auto cells = static_cast<std::size_t>(n_states) * n_actions;
  if (transition.size() != cells || reward.size() != cells) {
    throw ArgumentError("tabular MDP table size mismatch");
  }
  for (int next : transition) {
    if (next < 0 || next >= n_states) {
      throw ArgumentError("tabular MDP successor out of range");
    }
  }
  if (horizon <= 0) throw ArgumentError("tabular MDP horizon must be positive");
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw ArgumentError("tabular MDP gamma must lie in [0, 1)");
  }
}

TabularMDP make_chain_mdp(int n_states, int horizon, double gamma) {
  if (n_states < 2) throw ArgumentError("chain needs at least 2 states");
  TabularMDP mdp;
  mdp.n_states = n_states;
  mdp.n_actions = 2;
  mdp.horizon = horizon;
  mdp.gamma = gamma;
  mdp.transition.resize(static_cast<std::size_t>(n_states) * 2);
  mdp.reward.assign(mdp.transition.size(), 0.0);
  const int goal = n_states - 1;
  for (int s = 0; s < n_states; ++s) {
    if (s == goal) {
      mdp.transition[mdp.index(s, 0)] = goal;
      mdp.transition[mdp.index(s, 1)] = goal;
      continue;
    }
    mdp.transition[mdp.index(s, 0)] = s > 0 ? s - 1 : 0;
    mdp.transition[mdp.index(s, 1)] = s + 1;
    if (s + 1 == goal) mdp.reward[mdp.index(s, 1)] = 1.0;
  }
  mdp.validate();
  return mdp;
}

TabularMDP make_random_mdp(int n_states, int n_actions, int horizon,
                           double gamma, std::uint64_t seed) {
  TabularMDP mdp;
  mdp.n_states = n_states;
  mdp.n_actions = n_actions;
  mdp.horizon = horizon;
  mdp.gamma = gamma;
  Rng rng(seed);
  const auto cells = static_cast<std::size_t>(n_states) * n_actions;
  mdp.transition.resize(cells);
  mdp.reward.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    mdp.transition[i] = static_cast<int>(rng.index(n_states));
    mdp.reward[i] = rng.uniform(0.0, 1.0);
  }
  mdp.validate();
  return mdp;
}

bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace vsmbrl
