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

#include "vsmbrl/oracle/oracle.h"

#include <algorithm>
#include <cmath>

#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/rng.h"

namespace vsmbrl::oracle {

ExactValues exact_q(const TabularMDP& mdp, const DeterministicPolicy& policy) {
  mdp.validate();
  if (static_cast<int>(policy.size()) != mdp.n_states) {
    throw ArgumentError("policy must assign an action to every state");
  }
  for (int a : policy) {
    if (a < 0 || a >= mdp.n_actions) throw ArgumentError("policy action out of range");
  }
  ExactValues ev;
  ev.horizon = mdp.horizon;
  ev.n_states = mdp.n_states;
  ev.n_actions = mdp.n_actions;
  const auto layers = static_cast<std::size_t>(mdp.horizon) + 1;
  ev.q.assign(layers * mdp.n_states * mdp.n_actions, 0.0);
  ev.v.assign(layers * mdp.n_states, 0.0);
  for (int t = mdp.horizon; t >= 0; --t) {
    for (int s = 0; s < mdp.n_states; ++s) {
      for (int a = 0; a < mdp.n_actions; ++a) {
        double q = mdp.r(s, a);
        if (t < mdp.horizon) q += mdp.gamma * ev.v_at(t + 1, mdp.next(s, a));
        ev.q[(static_cast<std::size_t>(t) * mdp.n_states + s) * mdp.n_actions +
             a] = q;
      }
      ev.v[static_cast<std::size_t>(t) * mdp.n_states + s] =
          ev.q_at(t, s, policy[static_cast<std::size_t>(s)]);
    }
  }
  return ev;
}

DeterministicPolicy constant_policy(const TabularMDP& mdp, int action) {
  return DeterministicPolicy(static_cast<std::size_t>(mdp.n_states), action);
}

DeterministicPolicy random_policy(const TabularMDP& mdp, std::uint64_t seed) {
  Rng rng(seed);
  DeterministicPolicy p(static_cast<std::size_t>(mdp.n_states));
  for (auto& a : p) a = static_cast<int>(rng.index(mdp.n_actions));
  return p;
}

TabularRollout rollout_policy(const TabularMDP& mdp,
                              const DeterministicPolicy& policy, int s0,
                              int steps) {
  TabularRollout r;
  int s = s0;
  for (int t = 0; t < steps; ++t) {
    const int a = policy[static_cast<std::size_t>(s)];
    r.states.push_back(s);
    r.actions.push_back(a);
    r.rewards.push_back(mdp.r(s, a));
    s = mdp.next(s, a);
  }
  return r;
}

double score_via_expansion(std::span<const double> rewards, double gamma,
                           int horizon) {
  if (rewards.empty()) throw ArgumentError("expansion needs r_0..r_T");
  const int last = static_cast<int>(rewards.size()) - 1;
  if (horizon < 0 || horizon > last) {
    throw ArgumentError("expansion needs 0 <= H <= T");
  }
  double inside = 0.0;
  for (int t = 0; t <= horizon; ++t) {
    inside += std::pow(gamma, t) * (t + 1) * rewards[static_cast<std::size_t>(t)];
  }
  double beyond = 0.0;
  for (int t = horizon + 1; t <= last; ++t) {
    beyond += (horizon + 1) * std::pow(gamma, t) *
              rewards[static_cast<std::size_t>(t)];
  }
  return inside + beyond;
}

std::vector<std::vector<int>> all_action_sequences(int n_actions, int length) {
  double count = std::pow(static_cast<double>(n_actions), length);
  if (count > static_cast<double>(kEnumerationLimit)) {
    throw ResourceError("action-sequence enumeration exceeds 10^6 sequences");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> seq(static_cast<std::size_t>(length), 0);
  while (true) {
    out.push_back(seq);
    int pos = length - 1;
    while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == n_actions - 1) {
      seq[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++seq[static_cast<std::size_t>(pos)];
  }
  return out;
}

BestPlan enumerate_best(const TabularMDP& mdp, int s0, double gamma,
                        int horizon, ScoringKind kind,
                        const ExactValues& q_source, int t0) {
  if (horizon < 0) throw ArgumentError("enumerate_best needs H >= 0");
  if (t0 + horizon > q_source.horizon) {
    throw ArgumentError("q_source does not cover t0 + H");
  }
  const auto sequences = all_action_sequences(mdp.n_actions, horizon + 1);
  BestPlan best;
  bool have = false;
  for (const auto& seq : sequences) {
    int s = s0;
    double score = 0.0;
    double discount = 1.0;
    for (int t = 0; t <= horizon; ++t) {
      const int a = seq[static_cast<std::size_t>(t)];
      const double r = mdp.r(s, a);
      const double q = q_source.q_at(t0 + t, s, a);
      switch (kind) {
        case ScoringKind::kSumReward:
          score += discount * r;
          break;
        case ScoringKind::kSumValue:
          score += discount * q;
          break;
        case ScoringKind::kSumRewardValue:
          score += t < horizon ? discount * r : discount * q;
          break;
      }
      discount *= gamma;
      s = mdp.next(s, a);
    }
    if (!have || score > best.best_score) {
      best.best_score = score;
      best.best_sequence = seq;
      best.best_first_action = seq.front();
      have = true;
    }
  }
  return best;
}

ExactQEstimator::ExactQEstimator(const TabularModel& model, ExactValues values,
                                 int t0)
    : model_(model), values_(std::move(values)), t0_(t0) {}

double ExactQEstimator::q(int step, const Vector& state,
                          const Vector& action) const {
  const int t = t0_ + step;
  if (t > values_.horizon) throw ArgumentError("exact Q queried beyond horizon");
  return values_.q_at(t, model_.decode_state(state),
                      model_.decode_action(action));
}

SeriesBoundReport verify_series_bound(int n_trials, std::uint64_t seed) {
  SeriesBoundReport report;
  report.n_trials = n_trials;
  for (int k = 0; k < n_trials; ++k) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(k));
    Rng rng(trial_seed);
    const double gamma = rng.uniform(0.1, 0.99);
    const int last = 1 + static_cast<int>(rng.index(3000));
    const int horizon = static_cast<int>(rng.index(static_cast<std::uint64_t>(last) + 1));
    const double scale = rng.uniform(0.0, 10.0);
    const int shape = static_cast<int>(rng.index(3));
    std::vector<double> rewards(static_cast<std::size_t>(last) + 1);
    for (auto& r : rewards) {
      switch (shape) {
        case 0:  // uniform
          r = rng.uniform(0.0, scale);
          break;
        case 1:  // constant at the max
          r = scale;
          break;
        default:  // sparse
          r = rng.uniform(0.0, 1.0) < 0.05 ? scale : 0.0;
      }
    }
    const double r_max = *std::max_element(rewards.begin(), rewards.end());
    const double bound = score_upper_bound(r_max, gamma);
    double infinite_weights = 0.0;
    double discount = 1.0;
    for (int t = 0; t <= last; ++t) {
      infinite_weights += discount * (t + 1) * rewards[static_cast<std::size_t>(t)];
      discount *= gamma;
    }
    const double expansion = score_via_expansion(rewards, gamma, horizon);
    const double s = std::max(infinite_weights, expansion);
    if (bound > 0.0) report.max_ratio = std::max(report.max_ratio, s / bound);
    // Constant sequences with long T saturate the bound; allow summation
    // round-off (a few thousand terms) but nothing more.
    if (s > bound * (1.0 + 1e-12)) {
      ++report.violations;
      report.failing_trial_seeds.push_back(trial_seed);
    }
    if (gamma <= 0.95) {
      const double limit = 1.0 / ((1.0 - gamma) * (1.0 - gamma));
      report.max_series_error = std::max(
          report.max_series_error, std::abs(partial_series(gamma, 10000) - limit));
    }
  }
  return report;
}

}  // namespace vsmbrl::oracle
