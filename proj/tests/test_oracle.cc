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

#include <gtest/gtest.h>

#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/rng.h"
#include "vsmbrl/oracle/oracle.h"
#include "vsmbrl/scoring/scoring.h"

namespace vsmbrl {
namespace {

using oracle::ExactValues;

// One state, one self-loop action paying `r`.
TabularMDP loop_mdp(double r, int horizon, double gamma) {
  TabularMDP m;
  m.n_states = 1;
  m.n_actions = 1;
  m.transition = {0};
  m.reward = {r};
  m.horizon = horizon;
  m.gamma = gamma;
  return m;
}

TEST(ExactQ, ThreeStepChainByHand) {
  const TabularMDP m = loop_mdp(1.0, 2, 0.5);
  const ExactValues ev = oracle::exact_q(m, oracle::constant_policy(m, 0));
  EXPECT_EQ(ev.q_at(2, 0, 0), 1.0);
  EXPECT_EQ(ev.q_at(1, 0, 0), 1.5);
  EXPECT_EQ(ev.q_at(0, 0, 0), 1.75);
}

TEST(ExactQ, MyopicAndZeroReward) {
  const TabularMDP m = make_random_mdp(5, 3, 7, 0.0, 4);
  const ExactValues ev = oracle::exact_q(m, oracle::random_policy(m, 1));
  for (int t = 0; t <= m.horizon; ++t)
    for (int s = 0; s < 5; ++s)
      for (int a = 0; a < 3; ++a) EXPECT_EQ(ev.q_at(t, s, a), m.r(s, a));

  TabularMDP z = make_random_mdp(4, 2, 6, 0.9, 2);
  std::fill(z.reward.begin(), z.reward.end(), 0.0);
  const ExactValues ez = oracle::exact_q(z, oracle::random_policy(z, 3));
  for (double q : ez.q) EXPECT_EQ(q, 0.0);
}

TEST(ExactQ, BellmanAndValueInvariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const TabularMDP m = make_random_mdp(6, 3, 9, 0.85, seed);
    const auto pi = oracle::random_policy(m, seed + 50);
    const ExactValues ev = oracle::exact_q(m, pi);
    for (int s = 0; s < m.n_states; ++s) {
      for (int a = 0; a < m.n_actions; ++a) {
        EXPECT_EQ(ev.q_at(m.horizon, s, a), m.r(s, a));
        for (int t = 0; t < m.horizon; ++t) {
          const int sn = m.next(s, a);
          EXPECT_EQ(ev.q_at(t, s, a),
                    m.r(s, a) + m.gamma * ev.q_at(t + 1, sn, pi[static_cast<std::size_t>(sn)]));
        }
      }
      for (int t = 0; t <= m.horizon; ++t) {
        EXPECT_EQ(ev.v_at(t, s), ev.q_at(t, s, pi[static_cast<std::size_t>(s)]));
      }
    }
  }
}

TEST(ExactQ, TelescopingAlongRollouts) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const TabularMDP m = make_random_mdp(8, 3, 12, 0.95, seed);
    const auto pi = oracle::random_policy(m, seed);
    const ExactValues ev = oracle::exact_q(m, pi);
    const auto roll = oracle::rollout_policy(m, pi, static_cast<int>(seed % 8), m.horizon + 1);
    for (int t = 0; t < m.horizon; ++t) {
      const auto i = static_cast<std::size_t>(t);
      EXPECT_EQ(roll.rewards[i] + m.gamma * ev.q_at(t + 1, roll.states[i + 1], roll.actions[i + 1]),
                ev.q_at(t, roll.states[i], roll.actions[i]));
    }
  }
}

TEST(Expansion, Examples) {
  const std::vector<double> ones = {1, 1, 1};
  EXPECT_DOUBLE_EQ(oracle::score_via_expansion(ones, 0.5, 1), 2.5);
  // H = T: no tail.
  EXPECT_DOUBLE_EQ(oracle::score_via_expansion(ones, 0.5, 2), 1 + 2 * 0.5 + 3 * 0.25);
  EXPECT_EQ(oracle::score_via_expansion(std::vector<double>(5, 0.0), 0.9, 3), 0.0);
  EXPECT_THROW(oracle::score_via_expansion(ones, 0.5, 3), ArgumentError);
}

TEST(Expansion, MatchesSumValueOnChainExample) {
  // Same chain as ThreeStepChainByHand: q = (1.75, 1.5), H = 1.
  Trajectory t;
  t.states = {Vector::Zero(1), Vector::Zero(1)};
  t.actions = t.states;
  t.rewards = {1, 1};
  t.q_estimates = {1.75, 1.5};
  EXPECT_DOUBLE_EQ(score_sum_value(t, {ScoringKind::kSumValue, 0.5, 1}).value,
                   oracle::score_via_expansion(std::vector<double>{1, 1, 1}, 0.5, 1));
}

TEST(Enumeration, SequenceOrderAndGuard) {
  const auto seqs = oracle::all_action_sequences(2, 3);
  ASSERT_EQ(seqs.size(), 8u);
  EXPECT_EQ(seqs.front(), (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(seqs[1], (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(seqs.back(), (std::vector<int>{1, 1, 1}));
  EXPECT_THROW(oracle::all_action_sequences(10, 7), ResourceError);
  const TabularMDP m = make_random_mdp(2, 10, 10, 0.9, 0);
  const ExactValues ev = oracle::exact_q(m, oracle::constant_policy(m, 0));
  EXPECT_THROW(oracle::enumerate_best(m, 0, 0.9, 6, ScoringKind::kSumValue, ev), ResourceError);
}

TEST(Enumeration, SingleAction) {
  const TabularMDP m = loop_mdp(2.0, 5, 0.5);
  const ExactValues ev = oracle::exact_q(m, oracle::constant_policy(m, 0));
  const auto best = oracle::enumerate_best(m, 0, 0.5, 2, ScoringKind::kSumReward, ev);
  EXPECT_EQ(best.best_first_action, 0);
  EXPECT_DOUBLE_EQ(best.best_score, 2.0 + 1.0 + 0.5);
}

TEST(Enumeration, TwoStatesTwoActionsByHand) {
  // s0: a0 -> s0 r=0, a1 -> s1 r=0.5; s1: a0 -> s0 r=2, a1 -> s1 r=0.
  TabularMDP m;
  m.n_states = 2;
  m.n_actions = 2;
  m.transition = {0, 1, 0, 1};
  m.reward = {0.0, 0.5, 2.0, 0.0};
  m.horizon = 3;
  m.gamma = 0.5;
  const ExactValues ev = oracle::exact_q(m, oracle::constant_policy(m, 0));
  // SumReward, H = 1 from s0: (0,0)->0, (0,1)->0.25, (1,0)->0.5+1=1.5, (1,1)->0.5.
  const auto best = oracle::enumerate_best(m, 0, 0.5, 1, ScoringKind::kSumReward, ev);
  EXPECT_EQ(best.best_first_action, 1);
  EXPECT_DOUBLE_EQ(best.best_score, 1.5);
  EXPECT_EQ(best.best_sequence, (std::vector<int>{1, 0}));
}

TEST(Enumeration, ChainPrefersRight) {
  const TabularMDP m = make_chain_mdp(6, 24, 0.99);
  const ExactValues ev = oracle::exact_q(m, oracle::constant_policy(m, 1));
  for (int s = 0; s < 4; ++s) {
    const auto best = oracle::enumerate_best(m, s, 0.99, 4, ScoringKind::kSumValue, ev);
    EXPECT_EQ(best.best_first_action, 1) << s;
  }
  // Next to the absorbing goal the summed values reward lingering: stepping
  // back keeps two high-value steps inside the window, entering ends it.
  EXPECT_EQ(oracle::enumerate_best(m, 4, 0.99, 4, ScoringKind::kSumValue, ev).best_first_action, 0);
  EXPECT_EQ(oracle::enumerate_best(m, 4, 0.99, 4, ScoringKind::kSumReward, ev).best_first_action, 1);
}

// Receding-horizon control with the enumeration oracle: replan at every
// state, execute the first action.
int steps_to_goal(const TabularMDP& m, ScoringKind kind, int horizon, const ExactValues& ev) {
  int s = 0;
  for (int t = 0; t < m.horizon; ++t) {
    const int a = oracle::enumerate_best(m, s, m.gamma, horizon, kind, ev).best_first_action;
    s = m.transition[m.index(s, a)];
    if (s == m.n_states - 1) return t + 1;
  }
  return -1;
}

TEST(Enumeration, RecedingHorizonOnChain) {
  const TabularMDP m = make_chain_mdp(6, 24, 0.99);
  const ExactValues ev = oracle::exact_q(m, oracle::constant_policy(m, 1));
  EXPECT_EQ(steps_to_goal(m, ScoringKind::kSumReward, 4, ev), 5);
  EXPECT_EQ(steps_to_goal(m, ScoringKind::kSumRewardValue, 4, ev), 5);
  // Summed values oscillate between the last two states for the whole
  // episode: entering the absorbing goal zeroes every later term.
  for (int h = 1; h <= 5; ++h) EXPECT_EQ(steps_to_goal(m, ScoringKind::kSumValue, h, ev), -1) << h;
  EXPECT_EQ(steps_to_goal(m, ScoringKind::kSumValue, 0, ev), 5);
}

TEST(Enumeration, TieKeepsFirstSequence) {
  const TabularMDP m = make_random_mdp(3, 3, 4, 0.9, 1);
  TabularMDP flat = m;
  std::fill(flat.reward.begin(), flat.reward.end(), 1.0);
  const ExactValues ev = oracle::exact_q(flat, oracle::constant_policy(flat, 2));
  const auto best = oracle::enumerate_best(flat, 0, 0.9, 2, ScoringKind::kSumReward, ev);
  EXPECT_EQ(best.best_sequence, (std::vector<int>{0, 0, 0}));
}

TEST(SeriesBound, ConstantRewardsBelowBound) {
  const std::vector<double> r(200, 3.0);
  const double s = oracle::score_via_expansion(r, 0.5, 199);
  EXPECT_LT(s, score_upper_bound(3.0, 0.5));
  EXPECT_NEAR(s, 12.0, 1e-9);
}

TEST(SeriesBound, RandomTrialsHaveNoViolations) {
  const auto rep = oracle::verify_series_bound(1000, 42);
  EXPECT_EQ(rep.n_trials, 1000);
  EXPECT_EQ(rep.violations, 0);
  EXPECT_TRUE(rep.failing_trial_seeds.empty());
  EXPECT_LE(rep.max_ratio, 1.0 + 1e-12);
  EXPECT_GT(rep.max_ratio, 0.5);
  EXPECT_LT(rep.max_series_error, 1e-6);
}

}  // namespace
}  // namespace vsmbrl
