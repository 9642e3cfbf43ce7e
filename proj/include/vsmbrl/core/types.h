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

#ifndef VSMBRL_CORE_TYPES_H_
#define VSMBRL_CORE_TYPES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace vsmbrl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Origin : std::uint8_t { kReal = 0, kImagined = 1 };

std::string_view origin_name(Origin origin);

// One (s, a, r, s', done) record. `done` marks a true terminal state only;
// time-limit truncation is never stored as terminal.
struct Transition {
  Vector state;
  Vector action;
  double reward = 0.0;
  Vector next_state;
  bool done = false;
  Origin origin = Origin::kReal;

  bool operator==(const Transition& other) const;
};

// Throws ArgumentError when an action component leaves [-1, 1] or the state
// dimensions disagree with each other or with `state_dim` (when positive).
void validate_transition(const Transition& t, int state_dim = -1,
                         int action_dim = -1);

// JSON-lines debugging format: {"state":[...],"action":[...],"reward":r,
// "next_state":[...],"done":b,"origin":"Real"|"Imagined"}.
std::string transition_to_json_line(const Transition& t);
Transition transition_from_json_line(std::string_view line);

// H-step imagined rollout. Every per-step sequence holds exactly H+1 entries;
// `terminal_state` is the model successor of the last (state, action) pair.
struct Trajectory {
  std::vector<Vector> states;
  std::vector<Vector> actions;
  std::vector<double> rewards;
  std::vector<double> q_estimates;
  Vector terminal_state;
  double score = 0.0;

  // H for a populated trajectory (length - 1).
  int horizon() const { return static_cast<int>(states.size()) - 1; }
  bool operator==(const Trajectory& other) const;
};

struct EnvSpec {
  int state_dim = 1;
  int action_dim = 1;
  double gamma = 0.99;
  int max_episode_steps = 1;
  std::string name;

  void validate() const;
};

// Deterministic finite MDP: exactly one successor per (state, action).
// Tables are row-major over (state, action).
struct TabularMDP {
  int n_states = 0;
  int n_actions = 0;
  std::vector<int> transition;
  std::vector<double> reward;
  int horizon = 1;
  double gamma = 0.9;

  int next(int s, int a) const { return transition[index(s, a)]; }
  double r(int s, int a) const { return reward[index(s, a)]; }
  std::size_t index(int s, int a) const {
    return static_cast<std::size_t>(s) * n_actions + a;
  }
  void validate() const;
};

// N-state deterministic chain. Action 0 moves left (clamped at 0), action 1
// moves right. Moving into the rightmost state pays 1; the goal is absorbing
// with zero reward.
TabularMDP make_chain_mdp(int n_states, int horizon, double gamma);

// Uniform random successors and rewards in [0, 1).
TabularMDP make_random_mdp(int n_states, int n_actions, int horizon,
                           double gamma, std::uint64_t seed);

bool all_finite(const Vector& v);

}  // namespace vsmbrl

#endif  // VSMBRL_CORE_TYPES_H_
