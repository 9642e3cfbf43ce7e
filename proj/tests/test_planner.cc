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
#include <cstdlib>
#include <limits>
#include <string>

#include <gtest/gtest.h>

#include "vsmbrl/approx/policy.h"
#include "vsmbrl/core/environment.h"
#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/replay_buffer.h"
#include "vsmbrl/harness/verify.h"
#include "vsmbrl/planner/planner.h"

namespace vsmbrl {
namespace {

class ConstantQ : public QEstimator {
 public:
  explicit ConstantQ(double v) : v_(v) {}
  double q(int, const Vector&, const Vector&) const override { return v_; }

 private:
  double v_;
};

// Q equals the first action coordinate.
class ActionQ : public QEstimator {
 public:
  double q(int, const Vector&, const Vector& a) const override { return a[0]; }
};

class ExplodingModel : public Model {
 public:
  explicit ExplodingModel(int blow_up_at) : Model(spec()), at_(blow_up_at) {}
  Vector initial_state(std::uint64_t) const override { return Vector::Zero(1); }

 protected:
  ModelStep dynamics(const Vector& s, const Vector&) const override {
    ModelStep ms;
    ms.next_state = s.array() + 1.0;
    ms.reward = s[0] >= at_ ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    return ms;
  }

 private:
  static EnvSpec spec() {
    EnvSpec e;
    e.name = "exploding";
    e.max_episode_steps = 10;
    return e;
  }
  int at_;
};

struct PointMassFixture : ::testing::Test {
  std::shared_ptr<const Model> model = make_model("PointMassSparse");
  ParameterSet actor = [] {
    ParameterSet a = make_actor(4, 2, {8, 8});
    init_uniform_fan_in(a, 5);
    return a;
  }();
  Vector s0 = model->initial_state(3);

  PlannerConfig config(ScoringKind kind, int n = 16, int h = 5) const {
    PlannerConfig c;
    c.n_trajectories = n;
    c.horizon = h;
    c.scoring = {kind, 0.99, h};
    c.base_seed = 1234;
    return c;
  }
};

TEST_F(PointMassFixture, HorizonZeroPicksBestFirstStep) {
  const PolicyProposal proposal(actor);
  const ActionQ q;
  const PlanResult r = plan_action(*model, proposal, q, s0, config(ScoringKind::kSumValue, 16, 0));
  ASSERT_EQ(r.trajectories.size(), 16u);
  int best = 0;
  for (int i = 0; i < 16; ++i) {
    EXPECT_EQ(r.trajectories[static_cast<std::size_t>(i)].horizon(), 0);
    if (r.scores[static_cast<std::size_t>(i)] > r.scores[static_cast<std::size_t>(best)]) best = i;
    EXPECT_EQ(r.scores[static_cast<std::size_t>(i)],
              r.trajectories[static_cast<std::size_t>(i)].actions[0][0]);
  }
  EXPECT_EQ(r.chosen_index, best);
  EXPECT_EQ(r.chosen_action, r.trajectories[static_cast<std::size_t>(best)].actions[0]);
}

TEST_F(PointMassFixture, Deterministic) {
  const PolicyProposal proposal(actor);
  const ActionQ q;
  const PlannerConfig c = config(ScoringKind::kSumRewardValue);
  EXPECT_TRUE(plan_action(*model, proposal, q, s0, c) == plan_action(*model, proposal, q, s0, c));
  PlannerConfig other = c;
  other.base_seed += 1;
  EXPECT_FALSE(plan_action(*model, proposal, q, s0, c) ==
               plan_action(*model, proposal, q, s0, other));
}

TEST_F(PointMassFixture, TrajectoryUsesIndexedSeed) {
  const PolicyProposal proposal(actor);
  const ActionQ q;
  const PlannerConfig c = config(ScoringKind::kSumValue, 8, 3);
  const PlanResult r = plan_action(*model, proposal, q, s0, c);
  for (int i = 0; i < 8; ++i) {
    EXPECT_TRUE(rollout_trajectory(*model, proposal, q, s0, c, i, c.base_seed + static_cast<std::uint64_t>(i)) ==
                r.trajectories[static_cast<std::size_t>(i)]);
  }
}

TEST_F(PointMassFixture, SingleTrajectoryReturnsItsFirstAction) {
  const PolicyProposal proposal(actor);
  const PlanResult r = plan_action(*model, proposal, ConstantQ(0.0), s0,
                                   config(ScoringKind::kSumReward, 1));
  EXPECT_EQ(r.chosen_index, 0);
  EXPECT_EQ(r.chosen_action, r.trajectories[0].actions[0]);
  EXPECT_EQ(r.chosen_action, proposal.propose(0, 0, s0, 1234));
}

TEST_F(PointMassFixture, ThreadCountDoesNotChangeResult) {
  const PolicyProposal proposal(actor);
  const ActionQ q;
  const PlannerConfig c = config(ScoringKind::kSumValue, 33, 5);
  PlanOptions serial;
  serial.threads = 1;
  const PlanResult a = plan_action(*model, proposal, q, s0, c, serial);
  for (int threads : {2, 4, 7}) {
    PlanOptions par;
    par.threads = threads;
    EXPECT_TRUE(plan_action(*model, proposal, q, s0, c, par) == a) << threads;
  }
}

TEST_F(PointMassFixture, ScoringKindOnlyChangesScores) {
  const PolicyProposal proposal(actor);
  const ActionQ q;
  const PlanResult a = plan_action(*model, proposal, q, s0, config(ScoringKind::kSumValue));
  for (ScoringKind k : {ScoringKind::kSumReward, ScoringKind::kSumRewardValue}) {
    const PlanResult b = plan_action(*model, proposal, q, s0, config(k));
    ASSERT_EQ(a.trajectories.size(), b.trajectories.size());
    for (std::size_t i = 0; i < a.trajectories.size(); ++i) {
      EXPECT_EQ(a.trajectories[i].states, b.trajectories[i].states);
      EXPECT_EQ(a.trajectories[i].actions, b.trajectories[i].actions);
      EXPECT_EQ(a.trajectories[i].rewards, b.trajectories[i].rewards);
      EXPECT_EQ(a.trajectories[i].q_estimates, b.trajectories[i].q_estimates);
    }
  }
}

TEST_F(PointMassFixture, ImaginedSinkReceivesEveryStep) {
  const PolicyProposal proposal(actor);
  ReplayBuffer sink(1000);
  PlanOptions opts;
  opts.imagined_sink = &sink;
  const PlanResult r =
      plan_action(*model, proposal, ConstantQ(1.0), s0, config(ScoringKind::kSumValue, 16, 5), opts);
  ASSERT_EQ(sink.size(), 16u * 6u);
  for (std::size_t k = 0; k < sink.size(); ++k) {
    const Transition t = sink.at(k);
    EXPECT_EQ(t.origin, Origin::kImagined);
    EXPECT_FALSE(t.done);
  }
  // Transition h of trajectory i links s_h to s_{h+1}.
  const Transition first = sink.at(0);
  EXPECT_EQ(first.state, r.trajectories[0].states[0]);
  EXPECT_EQ(first.next_state, r.trajectories[0].states[1]);
  const Transition last = sink.at(5);
  EXPECT_EQ(last.next_state, r.trajectories[0].terminal_state);
}

TEST(Planner, ChainRightPolicyVisitsSuccessiveStates) {
  auto model = std::dynamic_pointer_cast<const TabularModel>(make_model("ChainMDP-10"));
  ASSERT_TRUE(model);
  const std::vector<Vector> right(4, model->encode_action(1));
  const SequenceProposal proposal({right});
  PlannerConfig c;
  c.n_trajectories = 1;
  c.horizon = 3;
  c.scoring = {ScoringKind::kSumReward, 0.99, 3};
  const PlanResult r = plan_action(*model, proposal, ConstantQ(0.0), model->encode_state(0), c);
  ASSERT_EQ(r.trajectories[0].states.size(), 4u);
  for (int h = 0; h < 4; ++h) {
    EXPECT_EQ(model->decode_state(r.trajectories[0].states[static_cast<std::size_t>(h)]), h);
  }
  EXPECT_EQ(model->decode_state(r.trajectories[0].terminal_state), 4);
  EXPECT_EQ(r.scores[0], 0.0);
}

TEST(Planner, TiesGoToLowestIndex) {
  EXPECT_EQ(select_best({2.0, 5.0, 5.0}), 1);
  EXPECT_EQ(select_best({1.0, 1.0, 1.0}), 0);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(select_best({nan, 3.0, std::numeric_limits<double>::infinity()}), 1);
  EXPECT_EQ(select_best({nan, nan}), -1);
}

TEST(Planner, ConstantScoresPickFirstTrajectory) {
  auto model = make_model("PointMassSparse");
  const PolicyProposal proposal(make_actor(4, 2, {4}));
  PlannerConfig c;
  c.n_trajectories = 9;
  c.horizon = 2;
  c.scoring = {ScoringKind::kSumValue, 0.9, 2};
  const PlanResult r = plan_action(*model, proposal, ConstantQ(1.0), Vector::Zero(4), c);
  EXPECT_EQ(r.chosen_index, 0);
}

TEST(Planner, NoFiniteScoreIsPlanningFailure) {
  auto model = make_model("PointMassSparse");
  const PolicyProposal proposal(make_actor(4, 2, {4}));
  PlannerConfig c;
  c.n_trajectories = 4;
  c.horizon = 2;
  c.scoring = {ScoringKind::kSumValue, 0.9, 2};
  EXPECT_THROW(plan_action(*model, proposal, ConstantQ(std::numeric_limits<double>::infinity()),
                           Vector::Zero(4), c),
               PlanningFailure);
}

TEST(Planner, NonFiniteModelNamesRolloutStep) {
  const ExplodingModel model(2);
  const SequenceProposal proposal({std::vector<Vector>(5, Vector::Zero(1))});
  PlannerConfig c;
  c.n_trajectories = 1;
  c.horizon = 4;
  c.scoring = {ScoringKind::kSumReward, 0.9, 4};
  try {
    plan_action(model, proposal, ConstantQ(0.0), Vector::Zero(1), c);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.diagnostic(), "rollout step 2");
  }
}

TEST(Planner, SparseRewardBeyondHorizonOnlySeparatedByValue) {
  const SuiteResult r = verify_sparse_discrimination();
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_EQ(r.metrics.at("sum_reward_variance").get<double>(), 0.0);
}

TEST(Planner, MatchesExhaustiveSearch) {
  const SuiteResult r = verify_planner_agreement(30, 19);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Planner, ConfigValidation) {
  PlannerConfig c;
  c.n_trajectories = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = PlannerConfig{};
  c.horizon = -1;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Planner, ThreadCapFromEnvironment) {
  const char* old = std::getenv("VSMBRL_THREADS");
  const std::string saved = old ? old : "";
  setenv("VSMBRL_THREADS", "3", 1);
  EXPECT_EQ(planner_threads(), 3);
  setenv("VSMBRL_THREADS", "0", 1);
  EXPECT_GE(planner_threads(), 1);
  setenv("VSMBRL_THREADS", "junk", 1);
  EXPECT_GE(planner_threads(), 1);
  if (old) {
    setenv("VSMBRL_THREADS", saved.c_str(), 1);
  } else {
    unsetenv("VSMBRL_THREADS");
  }
}

TEST(Planner, PlanTraceLine) {
  auto model = make_model("PointMassSparse");
  const PolicyProposal proposal(make_actor(4, 2, {4}));
  PlannerConfig c;
  c.n_trajectories = 3;
  c.horizon = 1;
  c.scoring = {ScoringKind::kSumValue, 0.9, 1};
  const PlanResult r = plan_action(*model, proposal, ConstantQ(2.0), Vector::Zero(4), c);
  std::ostringstream out;
  write_plan_trace(out, 17, r, 0);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j.at("env_step").get<int>(), 17);
  EXPECT_EQ(j.at("chosen_index").get<int>(), 0);
  EXPECT_EQ(j.at("scores").size(), 3u);
  EXPECT_EQ(out.str().back(), '\n');
}

}  // namespace
}  // namespace vsmbrl
