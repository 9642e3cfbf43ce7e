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

#include "vsmbrl/harness/trainer.h"

#include <chrono>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "vsmbrl/approx/policy.h"
#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/rng.h"
#include "vsmbrl/planner/planner.h"

namespace vsmbrl {
namespace {

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch())
      .count();
}

double mean_or_nan(double sum, std::uint64_t n) {
  return n ? sum / static_cast<double>(n)
           : std::numeric_limits<double>::quiet_NaN();
}

nlohmann::json vector_json(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

Trainer::Trainer(ExperimentConfig config, std::uint64_t seed)
    : config_(std::move(config)),
      seed_(seed),
      model_(make_model(config_.env)),
      env_(model_),
      learner_(model_->spec().state_dim, model_->spec().action_dim,
               config_.learner, seed),
      real_(config_.buffer_capacity),
      imagined_(config_.buffer_capacity) {
  config_.validate();
  wall_epoch_ms_ = now_ms();
}

PlannerConfig Trainer::planner_for(Stream stream, std::uint64_t counter) const {
  PlannerConfig pc = config_.planner;
  pc.base_seed = derive_seed(config_.planner.base_seed ^ seed_, stream, counter);
  return pc;
}

void Trainer::open_plan_trace(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  trace_ = std::make_unique<std::ofstream>(path, std::ios::app);
}

void Trainer::step() {
  if (!env_.started() || env_.done()) {
    env_.reset(derive_seed(seed_, Stream::kEnvReset, episodes_++));
  }
  const std::uint64_t t = learner_.counters().env_steps;
  const Vector state = env_.state();

  Vector action;
  if (t < config_.warmup_steps) {
    action = policy_sample(learner_.actor(), state,
                           derive_seed(seed_, Stream::kPolicyStep, t))
                 .action;
  } else {
    // Snapshot at call entry; updates land only after the plan is complete.
    const PolicyProposal proposal(learner_.actor());
    const CriticEstimator critic(learner_.critic());
    const auto t0 = std::chrono::steady_clock::now();
    PlanOptions options;
    options.imagined_sink = &imagined_;
    const PlanResult plan = plan_action(*model_, proposal, critic, state,
                                        planner_for(Stream::kPlan, t), options);
    if (trace_) {
      const auto us =
          config_.record_wall_clock
              ? std::chrono::duration_cast<std::chrono::microseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count()
              : 0;
      write_plan_trace(*trace_, t, plan, us);
    }
    double score_sum = 0.0;
    for (double s : plan.scores) score_sum += s;
    window_.mean_score_sum += score_sum / static_cast<double>(plan.scores.size());
    window_.chosen_score_sum += plan.scores[static_cast<std::size_t>(plan.chosen_index)];
    ++window_.plans;
    action = plan.chosen_action;
  }

  const StepResult sr = env_.step(action);
  Transition real;
  real.state = state;
  real.action = action;
  real.reward = sr.reward;
  real.next_state = sr.next_state;
  real.done = sr.terminal;
  real.origin = Origin::kReal;
  real_.push(std::move(real));
  learner_.count_env_step();

  if (real_.size() >= static_cast<std::size_t>(config_.learner.batch_size)) {
    const TrainStepReport rep = learner_.train_step(real_, imagined_);
    if (rep.critic_updates > 0) {
      window_.critic_sum += rep.critic_loss * rep.critic_updates;
      window_.critic_n += static_cast<std::uint64_t>(rep.critic_updates);
    }
    if (rep.actor_updates > 0) {
      window_.actor_sum += rep.actor_loss * rep.actor_updates;
      window_.actor_n += static_cast<std::uint64_t>(rep.actor_updates);
    }
  }

  if (learner_.counters().env_steps % config_.eval_every == 0) emit_row();
}

void Trainer::run(std::uint64_t until_env_step) {
  while (learner_.counters().env_steps < until_env_step) step();
}

double Trainer::evaluate() {
  Environment env(model_);
  double total = 0.0;
  const auto episodes = static_cast<std::uint64_t>(config_.eval_episodes);
  std::uint64_t plan_counter = 0;
  for (std::uint64_t e = 0; e < episodes; ++e) {
    env.reset(derive_seed(seed_, Stream::kEvalReset, evaluations_ * episodes + e));
    double ret = 0.0;
    while (!env.done()) {
      Vector action;
      if (config_.eval_mode == EvalMode::kPolicyMean) {
        action = policy_mean_action(learner_.actor(), env.state());
      } else {
        const PolicyProposal proposal(learner_.actor());
        const CriticEstimator critic(learner_.critic());
        action = plan_action(*model_, proposal, critic, env.state(),
                             planner_for(Stream::kEvalPlan,
                                         (evaluations_ << 32) + plan_counter++))
                     .chosen_action;
      }
      ret += env.step(action).reward;
    }
    total += ret;
  }
  ++evaluations_;
  return total / static_cast<double>(episodes);
}

void Trainer::emit_row() {
  MetricRow row;
  row.seed = seed_;
  row.env_step = learner_.counters().env_steps;
  row.episode_return = evaluate();
  row.critic_loss = mean_or_nan(window_.critic_sum, window_.critic_n);
  row.actor_loss = mean_or_nan(window_.actor_sum, window_.actor_n);
  row.mean_score = mean_or_nan(window_.mean_score_sum, window_.plans);
  row.chosen_score = mean_or_nan(window_.chosen_score_sum, window_.plans);
  row.wall_ms = config_.record_wall_clock ? now_ms() - wall_epoch_ms_ : 0.0;
  rows_.push_back(row);
  window_ = Window{};
}

void Trainer::save_checkpoint(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  learner_.save(dir / "learner");
  {
    std::ofstream out(dir / "real.buf", std::ios::binary);
    real_.save(out);
  }
  {
    std::ofstream out(dir / "imagined.buf", std::ios::binary);
    imagined_.save(out);
  }
  write_metrics(dir / "metrics.csv", rows_);
  nlohmann::json m;
  m["config"] = config_to_json(config_);
  m["seed"] = seed_;
  m["episodes"] = episodes_;
  m["evaluations"] = evaluations_;
  m["env"] = {{"started", env_.started()},
              {"done", env_.done()},
              {"episode_steps", env_.episode_steps()},
              {"state", env_.started() ? vector_json(env_.state())
                                       : nlohmann::json::array()}};
  m["window"] = {{"critic_sum", window_.critic_sum},
                 {"critic_n", window_.critic_n},
                 {"actor_sum", window_.actor_sum},
                 {"actor_n", window_.actor_n},
                 {"mean_score_sum", window_.mean_score_sum},
                 {"chosen_score_sum", window_.chosen_score_sum},
                 {"plans", window_.plans}};
  std::ofstream(dir / "manifest.json") << m.dump(2) << "\n";
}

Trainer Trainer::load_checkpoint(const std::filesystem::path& dir) {
  std::ifstream min(dir / "manifest.json");
  if (!min) throw ArgumentError("checkpoint missing manifest.json: " + dir.string());
  const auto m = nlohmann::json::parse(min);
  Trainer t(config_from_json(m.at("config")), m.at("seed").get<std::uint64_t>());
  t.learner_.load(dir / "learner");
  {
    std::ifstream in(dir / "real.buf", std::ios::binary);
    t.real_ = ReplayBuffer::load(in);
  }
  {
    std::ifstream in(dir / "imagined.buf", std::ios::binary);
    t.imagined_ = ReplayBuffer::load(in);
  }
  t.rows_ = read_metrics(dir / "metrics.csv");
  t.episodes_ = m.at("episodes").get<std::uint64_t>();
  t.evaluations_ = m.at("evaluations").get<std::uint64_t>();
  const auto& e = m.at("env");
  if (e.at("started").get<bool>()) {
    const auto values = e.at("state").get<std::vector<double>>();
    Vector s = Eigen::Map<const Vector>(values.data(),
                                        static_cast<Eigen::Index>(values.size()));
    t.env_.restore(std::move(s), e.at("episode_steps").get<int>(),
                   e.at("done").get<bool>());
  }
  const auto& w = m.at("window");
  t.window_.critic_sum = w.at("critic_sum").get<double>();
  t.window_.critic_n = w.at("critic_n").get<std::uint64_t>();
  t.window_.actor_sum = w.at("actor_sum").get<double>();
  t.window_.actor_n = w.at("actor_n").get<std::uint64_t>();
  t.window_.mean_score_sum = w.at("mean_score_sum").get<double>();
  t.window_.chosen_score_sum = w.at("chosen_score_sum").get<double>();
  t.window_.plans = w.at("plans").get<std::uint64_t>();
  return t;
}

double evaluate_checkpoint(const std::filesystem::path& dir, int episodes) {
  Trainer t = Trainer::load_checkpoint(dir);
  if (episodes > 0) t.set_eval_episodes(episodes);
  return t.evaluate();
}

}  // namespace vsmbrl
