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

#include "vsmbrl/scoring/scoring.h"

#include <cmath>

#include "vsmbrl/core/errors.h"

namespace vsmbrl {
namespace {

void check_length(const std::vector<double>& seq, int horizon,
                  const char* what) {
  if (static_cast<int>(seq.size()) != horizon + 1) {
    throw ContractViolation(std::string(what) + " must hold H+1 = " +
                            std::to_string(horizon + 1) + " entries, got " +
                            std::to_string(seq.size()));
  }
}

Score finish(std::vector<double> per_step) {
  Score s;
  for (double v : per_step) s.value += v;
  s.per_step = std::move(per_step);
  return s;
}

}  // namespace

std::string_view scoring_kind_name(ScoringKind kind) {
  switch (kind) {
    case ScoringKind::kSumReward:
      return "SumReward";
    case ScoringKind::kSumRewardValue:
      return "SumRewardValue";
    case ScoringKind::kSumValue:
      return "SumValue";
  }
  return "?";
}

std::optional<ScoringKind> parse_scoring_kind(std::string_view name) {
  if (name == "SumReward") return ScoringKind::kSumReward;
  if (name == "SumRewardValue") return ScoringKind::kSumRewardValue;
  if (name == "SumValue") return ScoringKind::kSumValue;
  return std::nullopt;
}

void ScoringSpec::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw ArgumentError("scoring gamma must lie in [0, 1)");
  }
  if (horizon < 0) throw ArgumentError("scoring horizon must be >= 0");
}

Score score_sum_value(const Trajectory& traj, const ScoringSpec& spec) {
  spec.validate();
  check_length(traj.q_estimates, spec.horizon, "q_estimates");
  std::vector<double> terms(static_cast<std::size_t>(spec.horizon) + 1);
  double discount = 1.0;
  for (int t = 0; t <= spec.horizon; ++t) {
    terms[static_cast<std::size_t>(t)] =
        discount * traj.q_estimates[static_cast<std::size_t>(t)];
    discount *= spec.gamma;
  }
  return finish(std::move(terms));
}

Score score_sum_reward(const Trajectory& traj, const ScoringSpec& spec) {
  spec.validate();
  check_length(traj.rewards, spec.horizon, "rewards");
  std::vector<double> terms(static_cast<std::size_t>(spec.horizon) + 1);
  double discount = 1.0;
  for (int t = 0; t <= spec.horizon; ++t) {
    terms[static_cast<std::size_t>(t)] =
        discount * traj.rewards[static_cast<std::size_t>(t)];
    discount *= spec.gamma;
  }
  return finish(std::move(terms));
}

Score score_sum_reward_value(const Trajectory& traj, const ScoringSpec& spec) {
  spec.validate();
  // rewards[H] is not read, but a trajectory always carries H+1 of them.
  check_length(traj.rewards, spec.horizon, "rewards");
  check_length(traj.q_estimates, spec.horizon, "q_estimates");
  const auto h = static_cast<std::size_t>(spec.horizon);
  std::vector<double> terms(h + 1);
  double discount = 1.0;
  for (std::size_t t = 0; t < h; ++t) {
    terms[t] = discount * traj.rewards[t];
    discount *= spec.gamma;
  }
  terms[h] = discount * traj.q_estimates[h];
  return finish(std::move(terms));
}

Score score_trajectory(const Trajectory& traj, const ScoringSpec& spec) {
  switch (spec.kind) {
    case ScoringKind::kSumReward:
      return score_sum_reward(traj, spec);
    case ScoringKind::kSumRewardValue:
      return score_sum_reward_value(traj, spec);
    case ScoringKind::kSumValue:
      return score_sum_value(traj, spec);
  }
  throw ArgumentError("unknown scoring kind");
}

double weight_profile(int t, const ScoringSpec& spec) {
  if (t < 0) throw ArgumentError("weight_profile needs t >= 0");
  const double discount = std::pow(spec.gamma, t);
  return t <= spec.horizon ? discount * (t + 1.0)
                           : (spec.horizon + 1.0) * discount;
}

double score_upper_bound(double r_max, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw ArgumentError("score_upper_bound needs gamma in [0, 1)");
  }
  if (!(r_max >= 0.0)) throw ArgumentError("score_upper_bound needs r_max >= 0");
  return r_max / ((1.0 - gamma) * (1.0 - gamma));
}

double partial_series(double gamma, int n_terms) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw ArgumentError("partial_series needs gamma in [0, 1)");
  }
  if (n_terms <= 0) throw ArgumentError("partial_series needs n_terms > 0");
  // Summed smallest-first to keep the tail from being swamped.
  std::vector<double> terms(static_cast<std::size_t>(n_terms));
  double discount = 1.0;
  for (int t = 0; t < n_terms; ++t) {
    terms[static_cast<std::size_t>(t)] = discount * (t + 1.0);
    discount *= gamma;
  }
  double sum = 0.0;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
  return sum;
}

}  // namespace vsmbrl
