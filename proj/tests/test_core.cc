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
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "vsmbrl/core/environment.h"
#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/replay_buffer.h"
#include "vsmbrl/core/rng.h"
#include "vsmbrl/core/types.h"

namespace vsmbrl {
namespace {

Transition tagged(double tag) {
  Transition t;
  t.state = Vector::Constant(1, tag);
  t.action = Vector::Zero(1);
  t.next_state = Vector::Constant(1, tag + 1);
  t.reward = tag;
  return t;
}

Vector action_for(const TabularModel& m, int a) { return m.encode_action(a); }

TEST(ChainEnv, ResetStartsLeftmostOneHot) {
  Environment env = make_environment("ChainMDP-5");
  const Vector s = env.reset(0);
  ASSERT_EQ(s.size(), 5);
  EXPECT_EQ(s[0], 1.0);
  EXPECT_EQ(s.sum(), 1.0);
}

TEST(ChainEnv, StepRightAndGoal) {
  auto model = std::dynamic_pointer_cast<const TabularModel>(make_model("ChainMDP-5"));
  ASSERT_TRUE(model);
  Environment env(model);
  env.reset(0);
  env.restore(model->encode_state(3), 3, false);
  StepResult r = env.step(action_for(*model, 1));
  EXPECT_EQ(model->decode_state(r.next_state), 4);
  // 5-state chain: state 4 is the goal, entered from N-2 = 3.
  EXPECT_EQ(r.reward, 1.0);
  EXPECT_TRUE(r.done);
  EXPECT_TRUE(r.terminal);

  env.reset(0);
  env.restore(model->encode_state(2), 2, false);
  r = env.step(action_for(*model, 1));
  EXPECT_EQ(model->decode_state(r.next_state), 3);
  EXPECT_EQ(r.reward, 0.0);
  EXPECT_FALSE(r.done);
}

TEST(ChainEnv, ModelStepLeft) {
  auto model = std::dynamic_pointer_cast<const TabularModel>(make_model("ChainMDP-6"));
  const ModelStep st = model->step(model->encode_state(2), action_for(*model, 0));
  EXPECT_EQ(model->decode_state(st.next_state), 1);
  EXPECT_EQ(st.reward, 0.0);
  // Clamped at the left end.
  const ModelStep edge = model->step(model->encode_state(0), action_for(*model, 0));
  EXPECT_EQ(model->decode_state(edge.next_state), 0);
}

TEST(Environment, StepAfterDoneAndBeforeReset) {
  Environment env = make_environment("ChainMDP-3");
  EXPECT_THROW(env.step(Vector::Constant(1, 0.5)), StateError);
  env.reset(0);
  env.step(Vector::Constant(1, 0.5));
  const StepResult r = env.step(Vector::Constant(1, 0.5));
  ASSERT_TRUE(r.done);
  EXPECT_THROW(env.step(Vector::Constant(1, 0.5)), StateError);
}

TEST(Environment, ActionDimensionMismatch) {
  Environment env = make_environment("PointMassSparse");
  env.reset(1);
  EXPECT_THROW(env.step(Vector::Zero(3)), ArgumentError);
  EXPECT_THROW(env.model().step(Vector::Zero(2), Vector::Zero(2)), ArgumentError);
}

TEST(Environment, UnknownName) {
  EXPECT_THROW(make_model("HalfCheetah"), ConfigError);
  EXPECT_THROW(make_model("ChainMDP-x"), ConfigError);
}

TEST(PointMass, ResetDeterministic) {
  Environment a = make_environment("PointMassSparse");
  Environment b = make_environment("PointMassSparse");
  EXPECT_EQ(a.reset(7), b.reset(7));
  EXPECT_EQ(a.reset(7), a.reset(7));
}

TEST(PointMass, ZeroActionFromRest) {
  auto model = make_model("PointMassSparse");
  Vector s(4);
  s << 0.2, -0.3, 0.0, 0.0;
  const ModelStep st = model->step(s, Vector::Zero(2));
  EXPECT_EQ(st.next_state, s);
  EXPECT_EQ(st.reward, 0.0);
}

TEST(PointMass, RewardOnlyInsideGoal) {
  auto model = make_model("PointMassSparse");
  Vector in(4);
  in << 0.5, 0.55, 0.0, 0.0;
  EXPECT_EQ(model->step(in, Vector::Zero(2)).reward, 1.0);
  Vector out(4);
  out << 0.5, 0.61, 0.0, 0.0;
  EXPECT_EQ(model->step(out, Vector::Zero(2)).reward, 0.0);
}

TEST(Pendulum, ResetRanges) {
  auto model = make_model("PendulumSwing");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Vector s = model->initial_state(seed);
    const double th = PendulumModel::angle(s);
    EXPECT_GE(th, -std::numbers::pi);
    EXPECT_LE(th, std::numbers::pi);
    EXPECT_GE(s[2], -1.0);
    EXPECT_LE(s[2], 1.0);
    EXPECT_NEAR(s[0] * s[0] + s[1] * s[1], 1.0, 1e-12);
  }
}

TEST(Pendulum, OneEulerStepByHand) {
  auto model = make_model("PendulumSwing");
  const double th = 0.3;
  const double thdot = -0.5;
  const double a = 0.25;
  Vector s(3);
  s << std::cos(th), std::sin(th), thdot;
  // Forward Euler with th = 0 upright, so gravity pushes away from 0:
  // th'' = 3g/(2l) sin th + 3/(m l^2) u, u = 2a.
  const ModelStep st = model->step(s, Vector::Constant(1, a));
  const double dt = 0.05;
  const double th_ddot = 15.0 * std::sin(th) + 3.0 * (2.0 * a);
  const double thdot_new = thdot + dt * th_ddot;
  const double th_new = th + dt * thdot;
  EXPECT_NEAR(st.next_state[2], thdot_new, 1e-12);
  EXPECT_NEAR(PendulumModel::angle(st.next_state), th_new, 1e-12);
  EXPECT_NEAR(st.reward, -(th * th + 0.1 * thdot * thdot + 0.001 * a * a), 1e-12);
}

TEST(Models, ModelMatchesEnvironmentExactly) {
  for (const auto& name : builtin_environment_names()) {
    auto model = make_model(name);
    Environment env(model);
    Rng rng(99);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      if (!env.started() || env.done()) env.reset(rng.engine()());
      const Vector s = env.state();
      Vector a(model->spec().action_dim);
      for (Eigen::Index k = 0; k < a.size(); ++k) a[k] = rng.uniform(-1, 1);
      const ModelStep m = model->step(s, a);
      const StepResult e = env.step(a);
      worst = std::max(worst, (m.next_state - e.next_state).cwiseAbs().maxCoeff());
      EXPECT_EQ(m.reward, e.reward);
    }
    EXPECT_EQ(worst, 0.0) << name;
  }
}

TEST(Models, EpisodeLengthBounded) {
  for (const auto& name : builtin_environment_names()) {
    Environment env = make_environment(name);
    Rng rng(5);
    for (int ep = 0; ep < 3; ++ep) {
      env.reset(static_cast<std::uint64_t>(ep));
      int steps = 0;
      while (!env.done()) {
        Vector a(env.spec().action_dim);
        for (Eigen::Index k = 0; k < a.size(); ++k) a[k] = rng.uniform(-1, 1);
        env.step(a);
        ++steps;
      }
      EXPECT_LE(steps, env.spec().max_episode_steps) << name;
    }
  }
}

TEST(ReplayBuffer, FifoCapacityTwo) {
  ReplayBuffer buf(2);
  buf.push(tagged(1));
  buf.push(tagged(2));
  buf.push(tagged(3));
  ASSERT_EQ(buf.size(), 2u);
  EXPECT_EQ(buf.at(0).reward, 2.0);
  EXPECT_EQ(buf.at(1).reward, 3.0);
  EXPECT_EQ(buf.total_pushed(), 3u);
}

TEST(ReplayBuffer, FifoLastCapacityInOrder) {
  ReplayBuffer buf(7);
  for (int i = 0; i < 40; ++i) buf.push(tagged(i));
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(buf.at(i).reward, 33.0 + static_cast<double>(i));
  }
}

TEST(ReplayBuffer, SampleDeterministicAndErrors) {
  ReplayBuffer buf(10);
  EXPECT_THROW(buf.sample(1, 0), StateError);
  for (int i = 0; i < 6; ++i) buf.push(tagged(i));
  EXPECT_EQ(buf.sample_indices(5, 1), buf.sample_indices(5, 1));
  EXPECT_THROW(buf.sample(7, 0), StateError);
}

TEST(ReplayBuffer, SampleUniformWithinFiveSigma) {
  const int n_items = 10000;
  const int n_draws = 1000;
  ReplayBuffer buf(n_items);
  for (int i = 0; i < n_items; ++i) buf.push(tagged(i));
  // 200 independent draws of 1000 give 2e5 samples; per-item counts are
  // Binomial(2e5, 1e-4) with mean 20 and sd sqrt(20 (1 - 1e-4)).
  std::vector<int> counts(n_items, 0);
  const int rounds = 200;
  for (int r = 0; r < rounds; ++r) {
    for (std::size_t idx : buf.sample_indices(n_draws, 1000 + static_cast<std::uint64_t>(r))) {
      ++counts[idx];
    }
  }
  const double p = 1.0 / n_items;
  const double total = static_cast<double>(rounds) * n_draws;
  const double mean = total * p;
  const double sd = std::sqrt(total * p * (1.0 - p));
  for (int c : counts) {
    EXPECT_LE(std::abs(c - mean), 5.0 * sd);
  }
}

TEST(ReplayBuffer, SaveLoadRoundTrip) {
  ReplayBuffer buf(4);
  for (int i = 0; i < 6; ++i) {
    Transition t = tagged(i);
    t.origin = i % 2 ? Origin::kImagined : Origin::kReal;
    t.done = i == 5;
    buf.push(t);
  }
  std::stringstream ss;
  buf.save(ss);
  const ReplayBuffer back = ReplayBuffer::load(ss);
  ASSERT_EQ(back.size(), buf.size());
  EXPECT_EQ(back.total_pushed(), buf.total_pushed());
  for (std::size_t i = 0; i < buf.size(); ++i) EXPECT_EQ(back.at(i), buf.at(i));
  EXPECT_EQ(back.sample_indices(3, 9), buf.sample_indices(3, 9));
}

TEST(Transition, JsonLineRoundTrip) {
  Transition t = tagged(0.125);
  t.origin = Origin::kImagined;
  t.done = true;
  const std::string line = transition_to_json_line(t);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(transition_from_json_line(line), t);
}

TEST(Transition, ValidateRejectsOutOfRangeAction) {
  Transition t = tagged(0);
  t.action = Vector::Constant(1, 1.5);
  EXPECT_THROW(validate_transition(t), ArgumentError);
  t.action = Vector::Constant(1, 0.5);
  EXPECT_THROW(validate_transition(t, 2), ArgumentError);
}

TEST(Rng, DeriveSeedSeparatesStreams) {
  EXPECT_NE(derive_seed(1, Stream::kPlan, 0), derive_seed(1, Stream::kEnvReset, 0));
  EXPECT_NE(derive_seed(1, Stream::kPlan, 0), derive_seed(1, Stream::kPlan, 1));
  EXPECT_EQ(derive_seed(3, Stream::kPlan, 4), derive_seed(3, Stream::kPlan, 4));
}

TEST(RandomMdp, RewardsInUnitInterval) {
  const TabularMDP mdp = make_random_mdp(6, 3, 10, 0.9, 17);
  mdp.validate();
  for (double r : mdp.reward) {
    EXPECT_GE(r, 0.0);
    EXPECT_LT(r, 1.0);
  }
  EXPECT_EQ(make_random_mdp(6, 3, 10, 0.9, 17).transition, mdp.transition);
}

}  // namespace
}  // namespace vsmbrl
