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

#include "vsmbrl/harness/verify.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "vsmbrl/approx/policy.h"
#include "vsmbrl/core/environment.h"
#include "vsmbrl/core/rng.h"
#include "vsmbrl/learner/learner.h"
#include "vsmbrl/learner/losses.h"
#include "vsmbrl/oracle/oracle.h"
#include "vsmbrl/planner/planner.h"

namespace vsmbrl {
namespace {

using oracle::ExactValues;

struct RandomOracleCase {
  TabularMDP mdp;
  oracle::DeterministicPolicy policy;
  int s0 = 0;
};

RandomOracleCase random_case(std::uint64_t seed) {
  Rng rng(seed);
  const int n_states = 1 + static_cast<int>(rng.index(8));
  const int n_actions = 1 + static_cast<int>(rng.index(3));
  const int horizon = 1 + static_cast<int>(rng.index(12));
  const double gamma = rng.uniform(0.0, 0.99);
  RandomOracleCase c;
  c.mdp = make_random_mdp(n_states, n_actions, horizon, gamma, rng.engine()());
  c.policy = oracle::random_policy(c.mdp, rng.engine()());
  c.s0 = static_cast<int>(rng.index(n_states));
  return c;
}

// Trajectory record for the first H+1 steps of a policy rollout, with exact Q.
Trajectory prefix_trajectory(const oracle::TabularRollout& roll,
                             const ExactValues& ev, int horizon) {
  Trajectory traj;
  for (int t = 0; t <= horizon; ++t) {
    const auto i = static_cast<std::size_t>(t);
    traj.states.push_back(Vector::Constant(1, roll.states[i]));
    traj.actions.push_back(Vector::Constant(1, roll.actions[i]));
    traj.rewards.push_back(roll.rewards[i]);
    traj.q_estimates.push_back(ev.q_at(t, roll.states[i], roll.actions[i]));
  }
  return traj;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& s) { return s.passed; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j;
  j["passed"] = passed();
  j["suites"] = nlohmann::json::array();
  for (const auto& s : suites) {
    j["suites"].push_back({{"name", s.name},
                           {"passed", s.passed},
                           {"detail", s.detail},
                           {"metrics", s.metrics}});
  }
  return j;
}

std::string VerifyReport::to_table() const {
  std::ostringstream out;
  std::size_t width = 5;
  for (const auto& s : suites) width = std::max(width, s.name.size());
  for (const auto& s : suites) {
    out << (s.passed ? "PASS  " : "FAIL  ") << s.name
        << std::string(width - s.name.size() + 2, ' ') << s.detail << "\n";
  }
  out << (passed() ? "all suites passed" : "verification FAILED") << "\n";
  return out.str();
}

Vector central_difference(const std::function<double(const Vector&)>& f,
                          const Vector& x, double h) {
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

double gradient_relative_error(const Vector& analytic, const Vector& numeric) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < analytic.size(); ++i) {
    const double denom =
        std::max({std::abs(analytic[i]), std::abs(numeric[i]), 1e-6});
    worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / denom);
  }
  return worst;
}

SuiteResult verify_expansion_identity(int n_mdps, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = "expansion_identity";
  double worst = 0.0;
  int cases = 0;
  for (int k = 0; k < n_mdps; ++k) {
    const auto c = random_case(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const ExactValues ev = oracle::exact_q(c.mdp, c.policy);
    const int T = c.mdp.horizon;
    const auto roll = oracle::rollout_policy(c.mdp, c.policy, c.s0, T + 1);
    for (int h = 0; h <= T; ++h) {
      const Trajectory traj = prefix_trajectory(roll, ev, h);
      const double value_sum =
          score_sum_value(traj, {ScoringKind::kSumValue, c.mdp.gamma, h}).value;
      const double expanded =
          oracle::score_via_expansion(roll.rewards, c.mdp.gamma, h);
      worst = std::max(worst, std::abs(value_sum - expanded));
      ++cases;
    }
  }
  const double secs = elapsed_s(t0);
  r.passed = worst < 1e-10 && secs < 10.0;
  r.metrics = {{"cases", cases}, {"max_abs_error", worst}, {"seconds", secs}};
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d (MDP, H) cases, max |err| = %.3g (< 1e-10)",
                cases, worst);
  r.detail = buf;
  return r;
}

SuiteResult verify_bellman_telescoping(int n_mdps, std::uint64_t seed) {
  SuiteResult r;
  r.name = "bellman_telescoping";
  double worst = 0.0;
  bool h0_exact = true;
  for (int k = 0; k < n_mdps; ++k) {
    const auto c = random_case(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const ExactValues ev = oracle::exact_q(c.mdp, c.policy);
    const int T = c.mdp.horizon;
    const auto roll = oracle::rollout_policy(c.mdp, c.policy, c.s0, T + 1);
    const double q0 = ev.q_at(0, roll.states[0], roll.actions[0]);
    for (int h = 0; h <= T; ++h) {
      const Trajectory traj = prefix_trajectory(roll, ev, h);
      const double srv =
          score_sum_reward_value(traj, {ScoringKind::kSumRewardValue, c.mdp.gamma, h})
              .value;
      worst = std::max(worst, std::abs(srv - q0));
      if (h == 0) {
        const double sv =
            score_sum_value(traj, {ScoringKind::kSumValue, c.mdp.gamma, 0}).value;
        h0_exact = h0_exact && sv == srv && sv == q0;
      }
    }
  }
  r.passed = worst < 1e-12 && h0_exact;
  r.metrics = {{"max_abs_error", worst}, {"h0_coincidence_exact", h0_exact}};
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "|SumRewardValue - Q(s0,a0)| max = %.3g (< 1e-12), H=0 exact: %s",
                worst, h0_exact ? "yes" : "no");
  r.detail = buf;
  return r;
}

SuiteResult verify_series_bound_suite(int n_trials, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = "series_bound";
  const auto rep = oracle::verify_series_bound(n_trials, seed);
  double series_err = 0.0;
  nlohmann::json series = nlohmann::json::object();
  for (double g : {0.5, 0.9, 0.95}) {
    const double limit = 1.0 / ((1.0 - g) * (1.0 - g));
    const double err = std::abs(partial_series(g, 10000) - limit);
    series_err = std::max(series_err, err);
    series[std::to_string(g)] = {{"limit", limit}, {"abs_error", err}};
  }
  const double secs = elapsed_s(t0);
  r.passed = rep.passed() && series_err < 1e-6 && rep.max_series_error < 1e-6 &&
             secs < 5.0;
  r.metrics = {{"trials", rep.n_trials},
               {"violations", rep.violations},
               {"max_ratio_to_bound", rep.max_ratio},
               {"failing_trial_seeds", rep.failing_trial_seeds},
               {"series", series},
               {"seconds", secs}};
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d trials, %d violations, max S/bound = %.6f, series err = %.3g",
                rep.n_trials, rep.violations, rep.max_ratio, series_err);
  r.detail = buf;
  return r;
}

SuiteResult verify_gradients(int n_trials, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = "gradient_check";
  double worst_critic = 0.0;
  double worst_actor = 0.0;
  const std::vector<int> hidden = {8, 8};
  for (int k = 0; k < n_trials; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const int sd = 1 + static_cast<int>(rng.index(4));
    const int ad = 1 + static_cast<int>(rng.index(3));
    const int batch = 1 + static_cast<int>(rng.index(8));
    const double alpha = rng.uniform(0.0, 0.5);

    ParameterSet critic = make_critic(sd, ad, hidden);
    init_uniform_fan_in(critic, rng.engine()());
    CriticSet critics = make_critic_set(sd, ad, hidden, true);
    for (auto& net : critics.nets) init_uniform_fan_in(net, rng.engine()());
    ParameterSet actor = make_actor(sd, ad, hidden);
    init_uniform_fan_in(actor, rng.engine()());

    std::vector<Transition> ts;
    for (int j = 0; j < batch; ++j) {
      Transition t;
      t.state = Vector::NullaryExpr(sd, [&] { return rng.uniform(-1, 1); });
      t.action = Vector::NullaryExpr(ad, [&] { return rng.uniform(-1, 1); });
      t.next_state = Vector::NullaryExpr(sd, [&] { return rng.uniform(-1, 1); });
      t.reward = rng.uniform(-1, 1);
      t.done = rng.uniform(0, 1) < 0.2;
      ts.push_back(t);
    }
    const TransitionBatch b = make_batch(ts);
    const Vector y = soft_td_targets(critics, actor, b, 0.9, alpha,
                                     normal_matrix(ad, batch, rng.engine()()));
    const LossAndGrad cg = critic_loss_grad(critic, b, y);
    const Vector cfd = central_difference(
        [&](const Vector& v) {
          return critic_loss(ParameterSet(critic.layer_shapes(), v), b, y);
        },
        critic.values());
    worst_critic = std::max(worst_critic, gradient_relative_error(cg.grad, cfd));

    const Matrix noise = normal_matrix(ad, batch, rng.engine()());
    const LossAndGrad ag = actor_loss_grad(actor, critics, b.states, noise, alpha);
    const Vector afd = central_difference(
        [&](const Vector& v) {
          return actor_loss(ParameterSet(actor.layer_shapes(), v), critics,
                            b.states, noise, alpha);
        },
        actor.values());
    worst_actor = std::max(worst_actor, gradient_relative_error(ag.grad, afd));
  }
  const double secs = elapsed_s(t0);
  r.passed = worst_critic < 1e-4 && worst_actor < 1e-4 && secs < 30.0;
  r.metrics = {{"trials", n_trials},
               {"critic_max_rel_error", worst_critic},
               {"actor_max_rel_error", worst_actor},
               {"seconds", secs}};
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d trials, max rel err critic %.3g, actor %.3g (< 1e-4)",
                n_trials, worst_critic, worst_actor);
  r.detail = buf;
  return r;
}

SuiteResult verify_sparse_discrimination() {
  SuiteResult r;
  r.name = "sparse_discrimination";
  const int n = 10;
  const int horizon = 5;
  auto model = std::dynamic_pointer_cast<const TabularModel>(
      make_model("ChainMDP-" + std::to_string(n)));
  const TabularMDP& mdp = model->mdp();
  const ExactValues ev = oracle::exact_q(mdp, oracle::constant_policy(mdp, 1));
  const oracle::ExactQEstimator q(*model, ev);
  const PolicyProposal proposal(make_actor(n, 1, {8, 8}));

  auto variance = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return var / static_cast<double>(v.size());
  };
  PlannerConfig cfg;
  cfg.n_trajectories = 16;
  cfg.horizon = horizon;
  cfg.base_seed = 11;
  cfg.scoring = {ScoringKind::kSumReward, mdp.gamma, horizon};
  const PlanResult reward_plan =
      plan_action(*model, proposal, q, model->encode_state(0), cfg);
  cfg.scoring.kind = ScoringKind::kSumValue;
  const PlanResult value_plan =
      plan_action(*model, proposal, q, model->encode_state(0), cfg);
  const double v_reward = variance(reward_plan.scores);
  const double v_value = variance(value_plan.scores);
  r.passed = v_reward == 0.0 && v_value > 0.0;
  r.metrics = {{"sum_reward_variance", v_reward},
               {"sum_value_variance", v_value},
               {"goal_distance", n - 1},
               {"horizon", horizon}};
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "goal distance %d > H=%d: Var[SumReward] = %g, Var[SumValue] = %.3g",
                n - 1, horizon, v_reward, v_value);
  r.detail = buf;
  return r;
}

SuiteResult verify_planner_agreement(int n_mdps, std::uint64_t seed) {
  SuiteResult r;
  r.name = "planner_oracle_agreement";
  int agree = 0;
  for (int k = 0; k < n_mdps; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const int n_states = 2 + static_cast<int>(rng.index(3));
    const int n_actions = 2 + static_cast<int>(rng.index(2));
    const int horizon = static_cast<int>(rng.index(4));
    const auto kind = static_cast<ScoringKind>(rng.index(3));
    const TabularMDP mdp =
        make_random_mdp(n_states, n_actions, horizon + 4, rng.uniform(0.5, 0.99),
                        rng.engine()());
    const TabularModel model(mdp, "oracle", {}, false);
    const ExactValues ev = oracle::exact_q(mdp, oracle::random_policy(mdp, rng.engine()()));
    const int s0 = static_cast<int>(rng.index(n_states));
    const auto best = oracle::enumerate_best(mdp, s0, mdp.gamma, horizon, kind, ev);

    std::vector<std::vector<Vector>> sequences;
    for (const auto& seq : oracle::all_action_sequences(n_actions, horizon + 1)) {
      std::vector<Vector> actions;
      for (int a : seq) actions.push_back(model.encode_action(a));
      sequences.push_back(std::move(actions));
    }
    PlannerConfig cfg;
    cfg.n_trajectories = static_cast<int>(sequences.size());
    cfg.horizon = horizon;
    cfg.scoring = {kind, mdp.gamma, horizon};
    const SequenceProposal proposal(std::move(sequences));
    const oracle::ExactQEstimator q(model, ev);
    const PlanResult plan =
        plan_action(model, proposal, q, model.encode_state(s0), cfg);
    if (model.decode_action(plan.chosen_action) == best.best_first_action) ++agree;
  }
  r.passed = agree == n_mdps;
  r.metrics = {{"mdps", n_mdps}, {"agreements", agree}};
  r.detail = std::to_string(agree) + "/" + std::to_string(n_mdps) +
             " first actions match exhaustive enumeration";
  return r;
}

SuiteResult verify_weight_profile() {
  SuiteResult r;
  r.name = "weight_profile";
  const ScoringSpec spec{ScoringKind::kSumValue, 0.9, 100};
  int first = -1;
  int last = -1;
  for (int t = 0; t <= 100; ++t) {
    if (weight_profile(t, spec) > 1.0) {
      if (first < 0) first = t;
      last = t;
    }
  }
  const bool formula = weight_profile(0, spec) == 1.0 &&
                       std::abs(weight_profile(8, spec) - 3.87420489) < 1e-12;
  r.passed = formula;
  r.metrics = {{"gamma", 0.9},
               {"horizon", 100},
               {"computed_interval", {first, last}},
               {"one_based_interval", {first + 1, last + 1}},
               {"w1", weight_profile(1, spec)},
               {"w33", weight_profile(33, spec)},
               {"w34", weight_profile(34, spec)}};
  r.detail = "gamma=0.9: weight > 1 for t in [" + std::to_string(first) + ", " +
             std::to_string(last) + "], [" + std::to_string(first + 1) + ", " +
             std::to_string(last + 1) + "] when steps are counted from 1";
  return r;
}

VerifyReport run_verify_suites() {
  VerifyReport rep;
  rep.suites.push_back(verify_expansion_identity());
  rep.suites.push_back(verify_bellman_telescoping());
  rep.suites.push_back(verify_series_bound_suite());
  rep.suites.push_back(verify_gradients());
  rep.suites.push_back(verify_sparse_discrimination());
  rep.suites.push_back(verify_planner_agreement());
  rep.suites.push_back(verify_weight_profile());
  return rep;
}

void write_weight_profile_csv(std::ostream& out, const ScoringSpec& spec,
                              int t_max) {
  out << "t,sum_reward_weight,sum_value_weight,beyond_horizon_weight\n";
  char buf[160];
  for (int t = 0; t <= t_max; ++t) {
    const double g = std::pow(spec.gamma, t);
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", t,
                  t <= spec.horizon ? g : 0.0, g * (t + 1.0),
                  (spec.horizon + 1.0) * g);
    out << buf;
  }
}

}  // namespace vsmbrl
