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

#ifndef VSMBRL_SCORING_SCORING_H_
#define VSMBRL_SCORING_SCORING_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsmbrl/core/types.h"

namespace vsmbrl {

enum class ScoringKind { kSumReward, kSumRewardValue, kSumValue };

std::string_view scoring_kind_name(ScoringKind kind);
// Accepts "SumReward", "SumRewardValue", "SumValue".
std::optional<ScoringKind> parse_scoring_kind(std::string_view name);

struct ScoringSpec {
  ScoringKind kind = ScoringKind::kSumValue;
  double gamma = 0.99;
  int horizon = 5;

  // Throws ArgumentError unless gamma in [0, 1) and horizon >= 0.
  void validate() const;
  bool operator==(const ScoringSpec&) const = default;
};

struct Score {
  double value = 0.0;
  // H+1 discounted summands; value is their left-to-right sum.
  std::vector<double> per_step;
};

// sum_{t=0}^{H} gamma^t Q(s_t, a_t)
Score score_sum_value(const Trajectory& traj, const ScoringSpec& spec);
// sum_{t=0}^{H} gamma^t r_t
Score score_sum_reward(const Trajectory& traj, const ScoringSpec& spec);
// sum_{t=0}^{H-1} gamma^t r_t + gamma^H Q(s_H, a_H)
Score score_sum_reward_value(const Trajectory& traj, const ScoringSpec& spec);
Score score_trajectory(const Trajectory& traj, const ScoringSpec& spec);

// Effective reward weight of the value-summation score under exact Q:
// gamma^t (t+1) inside the horizon, (H+1) gamma^t beyond it.
double weight_profile(int t, const ScoringSpec& spec);

// r_max / (1 - gamma)^2: the infinite-horizon bound on the value-summation
// score for rewards bounded by r_max.
double score_upper_bound(double r_max, double gamma);

// sum_{t=0}^{n_terms-1} gamma^t (t+1)
double partial_series(double gamma, int n_terms);

}  // namespace vsmbrl

#endif  // VSMBRL_SCORING_SCORING_H_
