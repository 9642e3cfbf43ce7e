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

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/rng.h"
#include "vsmbrl/planner/planner.h"
#include "vsmbrl/scoring/scoring.h"

namespace vsmbrl {
namespace {

Trajectory make_traj(std::vector<double> rewards, std::vector<double> q) {
  Trajectory t;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    t.states.push_back(Vector::Zero(1));
    t.actions.push_back(Vector::Zero(1));
  }
  t.rewards = std::move(rewards);
  t.q_estimates = std::move(q);
  return t;
}

ScoringSpec spec(ScoringKind k, double gamma, int h) { return {k, gamma, h}; }

TEST(SumValue, Examples) {
  EXPECT_EQ(score_sum_value(make_traj({0}, {3.5}), spec(ScoringKind::kSumValue, 0.9, 0)).value, 3.5);
  EXPECT_DOUBLE_EQ(
      score_sum_value(make_traj({1, 1}, {1.75, 1.5}), spec(ScoringKind::kSumValue, 0.5, 1)).value,
      2.5);
  EXPECT_EQ(score_sum_value(make_traj({1, 1, 1}, {0, 0, 0}), spec(ScoringKind::kSumValue, 0.5, 2)).value,
            0.0);
}

TEST(SumValue, MissingEstimates) {
  EXPECT_THROW(score_sum_value(make_traj({1, 1}, {1.0}), spec(ScoringKind::kSumValue, 0.5, 1)),
               ContractViolation);
}

TEST(SumReward, Examples) {
  EXPECT_DOUBLE_EQ(
      score_sum_reward(make_traj({1, 1}, {9, 9}), spec(ScoringKind::kSumReward, 0.5, 1)).value, 1.5);
  EXPECT_EQ(score_sum_reward(make_traj({0, 0, 0}, {4, 5, 6}), spec(ScoringKind::kSumReward, 0.9, 2)).value,
            0.0);
  EXPECT_EQ(score_sum_reward(make_traj({0.7}, {4}), spec(ScoringKind::kSumReward, 0.9, 0)).value, 0.7);
}

TEST(SumRewardValue, Examples) {
  EXPECT_DOUBLE_EQ(score_sum_reward_value(make_traj({1, 123}, {9, 1.5}),
                                          spec(ScoringKind::kSumRewardValue, 0.5, 1))
                       .value,
                   1.75);
  EXPECT_EQ(score_sum_reward_value(make_traj({5}, {2.25}), spec(ScoringKind::kSumRewardValue, 0.5, 0)).value,
            2.25);
  EXPECT_DOUBLE_EQ(score_sum_reward_value(make_traj({0, 0, 0}, {0, 0, 8}),
                                          spec(ScoringKind::kSumRewardValue, 0.5, 2))
                       .value,
                   2.0);
}

TEST(Score, ValueIsSumOfPerStep) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int h = static_cast<int>(rng.index(12));
    std::vector<double> r, q;
    for (int t = 0; t <= h; ++t) {
      r.push_back(rng.uniform(-3, 3));
      q.push_back(rng.uniform(-30, 30));
    }
    for (auto kind : {ScoringKind::kSumReward, ScoringKind::kSumRewardValue, ScoringKind::kSumValue}) {
      const Score s = score_trajectory(make_traj(r, q), spec(kind, rng.uniform(0, 0.999), h));
      ASSERT_EQ(s.per_step.size(), static_cast<std::size_t>(h + 1));
      const double total = std::accumulate(s.per_step.begin(), s.per_step.end(), 0.0);
      EXPECT_NEAR(s.value, total, 1e-12 * std::max(1.0, std::abs(total)));
    }
  }
}

TEST(Score, HZeroCoincidence) {
  const Trajectory t = make_traj({0.3}, {-1.125});
  EXPECT_EQ(score_sum_value(t, spec(ScoringKind::kSumValue, 0.9, 0)).value,
            score_sum_reward_value(t, spec(ScoringKind::kSumRewardValue, 0.9, 0)).value);
}

TEST(Spec, Validation) {
  EXPECT_THROW(spec(ScoringKind::kSumValue, 1.0, 3).validate(), ArgumentError);
  EXPECT_THROW(spec(ScoringKind::kSumValue, 0.5, -1).validate(), ArgumentError);
  EXPECT_NO_THROW(spec(ScoringKind::kSumValue, 0.0, 0).validate());
  EXPECT_EQ(parse_scoring_kind("SumValue"), ScoringKind::kSumValue);
  EXPECT_FALSE(parse_scoring_kind("sum"));
  for (auto kind : {ScoringKind::kSumReward, ScoringKind::kSumRewardValue, ScoringKind::kSumValue}) {
    EXPECT_EQ(parse_scoring_kind(scoring_kind_name(kind)), kind);
  }
}

TEST(WeightProfile, Examples) {
  EXPECT_EQ(weight_profile(0, spec(ScoringKind::kSumValue, 0.3, 0)), 1.0);
  EXPECT_EQ(weight_profile(0, spec(ScoringKind::kSumValue, 0.95, 7)), 1.0);
  EXPECT_NEAR(weight_profile(8, spec(ScoringKind::kSumValue, 0.9, 100)), 3.87420489, 1e-12);
  EXPECT_DOUBLE_EQ(weight_profile(3, spec(ScoringKind::kSumValue, 0.5, 2)), 0.375);
}

TEST(WeightProfile, ExceedsOneOnComputedInterval) {
  const ScoringSpec s = spec(ScoringKind::kSumValue, 0.9, 100);
  EXPECT_DOUBLE_EQ(weight_profile(1, s), 1.8);
  EXPECT_NEAR(weight_profile(33, s), 1.0507072490, 1e-9);
  EXPECT_NEAR(weight_profile(34, s), 0.9734493631, 1e-9);
  for (int t = 1; t <= 33; ++t) EXPECT_GT(weight_profile(t, s), 1.0) << t;
  for (int t = 34; t <= 100; ++t) EXPECT_LT(weight_profile(t, s), 1.0) << t;
}

TEST(WeightProfile, DominatesRewardWeightInsideHorizon) {
  for (double g : {0.1, 0.5, 0.9, 0.99}) {
    const ScoringSpec s = spec(ScoringKind::kSumValue, g, 20);
    for (int t = 1; t <= 20; ++t) EXPECT_GT(weight_profile(t, s), std::pow(g, t));
  }
}

TEST(WeightProfile, MatchesScoringOfRewardImpulse) {
  // A single reward at step tau, exact tail Q: the value-summation score is the
  // weight at tau.
  const double g = 0.8;
  const int h = 4;
  const int last = 12;
  for (int tau = 0; tau <= last; ++tau) {
    std::vector<double> r(last + 1, 0.0);
    r[static_cast<std::size_t>(tau)] = 1.0;
    std::vector<double> q(h + 1, 0.0);
    for (int t = 0; t <= h; ++t) {
      for (int k = t; k <= last; ++k) q[static_cast<std::size_t>(t)] += std::pow(g, k - t) * r[static_cast<std::size_t>(k)];
    }
    std::vector<double> rh(r.begin(), r.begin() + h + 1);
    const double s = score_sum_value(make_traj(rh, q), spec(ScoringKind::kSumValue, g, h)).value;
    EXPECT_NEAR(s, weight_profile(tau, spec(ScoringKind::kSumValue, g, h)), 1e-14) << tau;
  }
}

TEST(Bound, Examples) {
  EXPECT_DOUBLE_EQ(score_upper_bound(1.0, 0.5), 4.0);
  EXPECT_EQ(score_upper_bound(0.0, 0.7), 0.0);
  EXPECT_NEAR(score_upper_bound(1.0, 0.9), 100.0, 1e-12);
  EXPECT_THROW(score_upper_bound(1.0, 1.0), ArgumentError);
  EXPECT_THROW(score_upper_bound(-1.0, 0.5), ArgumentError);
}

TEST(PartialSeries, Examples) {
  EXPECT_EQ(partial_series(0.0, 1), 1.0);
  EXPECT_EQ(partial_series(0.0, 500), 1.0);
  EXPECT_NEAR(partial_series(0.5, 50), 4.0, 1e-10);
  EXPECT_NEAR(partial_series(0.9, 500), 100.0, 1e-6);
  EXPECT_NEAR(partial_series(0.95, 10000), 400.0, 1e-6);
  // Finite sums stay below the limit.
  EXPECT_LT(partial_series(0.99, 100), 1e4);
}

TEST(ArgmaxInvariance, AffineScoreMaps) {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.index(20));
    std::vector<double> scores(static_cast<std::size_t>(n));
    // Coarse values so ties happen.
    for (auto& s : scores) s = std::round(rng.uniform(-5, 5));
    const int base = select_best(scores);
    const double c = std::ldexp(1.0, static_cast<int>(rng.index(8)));  // exact scaling
    const double shift = std::round(rng.uniform(-100, 100));
    std::vector<double> mapped = scores;
    for (auto& s : mapped) s = c * s + shift;
    EXPECT_EQ(select_best(mapped), base);
  }
}

}  // namespace
}  // namespace vsmbrl
