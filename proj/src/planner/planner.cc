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

#include "vsmbrl/planner/planner.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "vsmbrl/approx/policy.h"
#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/rng.h"

namespace vsmbrl {

void PlannerConfig::validate() const {
  if (n_trajectories < 1) throw ConfigError("planner.n_trajectories must be >= 1");
  if (horizon < 0) throw ConfigError("planner.horizon must be >= 0");
  if (scoring.horizon != horizon) {
    throw ConfigError("planner.scoring.horizon must equal planner.horizon");
  }
  try {
    scoring.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
}

bool PlanResult::operator==(const PlanResult& o) const {
  return chosen_action.size() == o.chosen_action.size() &&
         (chosen_action.array() == o.chosen_action.array()).all() &&
         chosen_index == o.chosen_index && scores == o.scores &&
         trajectories == o.trajectories;
}

Vector PolicyProposal::propose(int /*index*/, int step, const Vector& state,
                               std::uint64_t trajectory_seed) const {
  return policy_sample(actor_, state,
                       derive_seed(trajectory_seed,
                                   static_cast<std::uint64_t>(step)))
      .action;
}

double CriticEstimator::q(int /*step*/, const Vector& state,
                          const Vector& action) const {
  return critic_set_eval(critic_, state, action);
}

Vector SequenceProposal::propose(int index, int step, const Vector& /*state*/,
                                 std::uint64_t /*trajectory_seed*/) const {
  const auto& seq = sequences_.at(static_cast<std::size_t>(index));
  return seq.at(static_cast<std::size_t>(step));
}

Trajectory rollout_trajectory(const Model& model, const ActionProposal& proposal,
                              const QEstimator& q, const Vector& s0,
                              const PlannerConfig& config, int index,
                              std::uint64_t trajectory_seed) {
  const auto steps = static_cast<std::size_t>(config.horizon) + 1;
  Trajectory traj;
  traj.states.reserve(steps);
  traj.actions.reserve(steps);
  traj.rewards.reserve(steps);
  traj.q_estimates.reserve(steps);
  Vector s = s0;
  for (int h = 0; h <= config.horizon; ++h) {
    Vector a = proposal.propose(index, h, s, trajectory_seed);
    ModelStep ms = model.step(s, a);
    if (!ms.next_state.allFinite() || !std::isfinite(ms.reward)) {
      throw NumericalError("model produced a non-finite transition",
                           "rollout step " + std::to_string(h));
    }
    traj.q_estimates.push_back(q.q(h, s, a));
    traj.rewards.push_back(ms.reward);
    traj.states.push_back(std::move(s));
    traj.actions.push_back(std::move(a));
    s = std::move(ms.next_state);
  }
  traj.terminal_state = std::move(s);
  traj.score = score_trajectory(traj, config.scoring).value;
  return traj;
}

int select_best(const std::vector<double>& scores) {
  int best = -1;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) continue;
    if (best < 0 || scores[i] > scores[static_cast<std::size_t>(best)]) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::vector<Transition> imagined_transitions(const Trajectory& traj) {
  std::vector<Transition> out;
  out.reserve(traj.states.size());
  for (std::size_t h = 0; h < traj.states.size(); ++h) {
    Transition t;
    t.state = traj.states[h];
    t.action = traj.actions[h];
    t.reward = traj.rewards[h];
    t.next_state =
        h + 1 < traj.states.size() ? traj.states[h + 1] : traj.terminal_state;
    t.done = false;
    t.origin = Origin::kImagined;
    out.push_back(std::move(t));
  }
  return out;
}

int planner_threads() {
  if (const char* env = std::getenv("VSMBRL_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

PlanResult plan_action(const Model& model, const ActionProposal& proposal,
                       const QEstimator& q, const Vector& s0,
                       const PlannerConfig& config,
                       const PlanOptions& options) {
  config.validate();
  const int n = config.n_trajectories;
  PlanResult result;
  result.trajectories.resize(static_cast<std::size_t>(n));
  auto run = [&](int i) {
    result.trajectories[static_cast<std::size_t>(i)] = rollout_trajectory(
        model, proposal, q, s0, config, i,
        config.base_seed + static_cast<std::uint64_t>(i));
  };
  const int threads =
      std::min(n, options.threads > 0 ? options.threads : planner_threads());
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) run(i);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int i = w; i < n; i += threads) run(i);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  result.scores.reserve(static_cast<std::size_t>(n));
  for (const auto& t : result.trajectories) result.scores.push_back(t.score);
  result.chosen_index = select_best(result.scores);
  if (result.chosen_index < 0) {
    throw PlanningFailure("all trajectory scores are non-finite");
  }
  result.chosen_action =
      result.trajectories[static_cast<std::size_t>(result.chosen_index)]
          .actions.front();

  if (options.imagined_sink) {
    std::vector<Transition> batch;
    batch.reserve(static_cast<std::size_t>(n) * (config.horizon + 1));
    for (const auto& t : result.trajectories) {
      auto part = imagined_transitions(t);
      batch.insert(batch.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    options.imagined_sink->push_batch(batch);
  }
  return result;
}

void write_plan_trace(std::ostream& out, std::uint64_t env_step,
                      const PlanResult& result, std::int64_t wall_us) {
  nlohmann::json j;
  j["env_step"] = env_step;
  j["chosen_index"] = result.chosen_index;
  j["scores"] = result.scores;
  j["wall_us"] = wall_us;
  out << j.dump() << "\n";
}

}  // namespace vsmbrl
