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

#include "vsmbrl/harness/config.h"

#include <fstream>
#include <set>

#include "vsmbrl/core/environment.h"
#include "vsmbrl/core/errors.h"

namespace vsmbrl {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

std::string_view eval_mode_name(EvalMode m) {
  return m == EvalMode::kPlanner ? "planner" : "policy_mean";
}

json scoring_to_json(const ScoringSpec& s) {
  return {{"kind", std::string(scoring_kind_name(s.kind))},
          {"gamma", s.gamma},
          {"horizon", s.horizon}};
}

ScoringSpec scoring_from_json(const json& j) {
  reject_unknown(j, {"kind", "gamma", "horizon"}, "planner.scoring");
  ScoringSpec s;
  std::string kind(scoring_kind_name(s.kind));
  read(j, "kind", kind, "planner.scoring");
  const auto parsed = parse_scoring_kind(kind);
  if (!parsed) throw ConfigError("unknown scoring kind '" + kind + "'");
  s.kind = *parsed;
  read(j, "gamma", s.gamma, "planner.scoring");
  read(j, "horizon", s.horizon, "planner.scoring");
  return s;
}

}  // namespace

void ExperimentConfig::validate() const {
  make_model(env);
  planner.validate();
  learner.validate();
  if (eval_every == 0) throw ConfigError("eval_every must be positive");
  if (n_seeds <= 0) throw ConfigError("n_seeds must be positive");
  if (buffer_capacity == 0) throw ConfigError("buffer_capacity must be positive");
  if (buffer_capacity < static_cast<std::uint64_t>(learner.batch_size)) {
    throw ConfigError("buffer_capacity must hold at least one batch");
  }
  if (eval_episodes <= 0) throw ConfigError("eval_episodes must be positive");
  if (output_dir.empty()) throw ConfigError("output_dir must be set");
}

ExperimentConfig default_experiment_config(const std::string& env,
                                           ScoringKind kind) {
  ExperimentConfig cfg;
  cfg.env = env;
  cfg.planner.scoring.kind = kind;
  cfg.output_dir = "runs/" + env + "_" + std::string(scoring_kind_name(kind));
  return cfg;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["env"] = c.env;
  j["planner"] = {{"n_trajectories", c.planner.n_trajectories},
                  {"horizon", c.planner.horizon},
                  {"scoring", scoring_to_json(c.planner.scoring)},
                  {"base_seed", c.planner.base_seed}};
  const LearnerConfig& l = c.learner;
  j["learner"] = {{"gamma", l.gamma},
                  {"tau", l.tau},
                  {"alpha", l.alpha},
                  {"batch_size", l.batch_size},
                  {"critic_lr", l.critic_lr},
                  {"actor_lr", l.actor_lr},
                  {"actor_update_divisor", l.actor_update_divisor},
                  {"twin", l.twin},
                  {"critic_updates_per_env_step", l.critic_updates_per_env_step},
                  {"imagined_fraction", l.imagined_fraction},
                  {"hidden", l.hidden}};
  j["total_env_steps"] = c.total_env_steps;
  j["eval_every"] = c.eval_every;
  j["n_seeds"] = c.n_seeds;
  j["output_dir"] = c.output_dir;
  j["warmup_steps"] = c.warmup_steps;
  j["buffer_capacity"] = c.buffer_capacity;
  j["eval_episodes"] = c.eval_episodes;
  j["eval_mode"] = std::string(eval_mode_name(c.eval_mode));
  j["record_wall_clock"] = c.record_wall_clock;
  j["plan_trace"] = c.plan_trace;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  reject_unknown(j,
                 {"env", "planner", "learner", "total_env_steps", "eval_every",
                  "n_seeds", "output_dir", "warmup_steps", "buffer_capacity",
                  "eval_episodes", "eval_mode", "record_wall_clock", "plan_trace"},
                 "config");
  ExperimentConfig c;
  read(j, "env", c.env, "config");
  if (j.contains("planner")) {
    const json& p = j["planner"];
    reject_unknown(p, {"n_trajectories", "horizon", "scoring", "base_seed"},
                   "planner");
    read(p, "n_trajectories", c.planner.n_trajectories, "planner");
    read(p, "horizon", c.planner.horizon, "planner");
    read(p, "base_seed", c.planner.base_seed, "planner");
    if (p.contains("scoring")) {
      c.planner.scoring = scoring_from_json(p["scoring"]);
    } else {
      c.planner.scoring.horizon = c.planner.horizon;
    }
  }
  if (j.contains("learner")) {
    const json& l = j["learner"];
    reject_unknown(l,
                   {"gamma", "tau", "alpha", "batch_size", "critic_lr",
                    "actor_lr", "actor_update_divisor", "twin",
                    "critic_updates_per_env_step", "imagined_fraction",
                    "hidden"},
                   "learner");
    LearnerConfig& o = c.learner;
    read(l, "gamma", o.gamma, "learner");
    read(l, "tau", o.tau, "learner");
    read(l, "alpha", o.alpha, "learner");
    read(l, "batch_size", o.batch_size, "learner");
    read(l, "critic_lr", o.critic_lr, "learner");
    read(l, "actor_lr", o.actor_lr, "learner");
    read(l, "actor_update_divisor", o.actor_update_divisor, "learner");
    read(l, "twin", o.twin, "learner");
    read(l, "critic_updates_per_env_step", o.critic_updates_per_env_step,
         "learner");
    read(l, "imagined_fraction", o.imagined_fraction, "learner");
    read(l, "hidden", o.hidden, "learner");
  }
  read(j, "total_env_steps", c.total_env_steps, "config");
  read(j, "eval_every", c.eval_every, "config");
  read(j, "n_seeds", c.n_seeds, "config");
  read(j, "output_dir", c.output_dir, "config");
  read(j, "warmup_steps", c.warmup_steps, "config");
  read(j, "buffer_capacity", c.buffer_capacity, "config");
  read(j, "eval_episodes", c.eval_episodes, "config");
  std::string mode(eval_mode_name(c.eval_mode));
  read(j, "eval_mode", mode, "config");
  if (mode == "planner") {
    c.eval_mode = EvalMode::kPlanner;
  } else if (mode == "policy_mean") {
    c.eval_mode = EvalMode::kPolicyMean;
  } else {
    throw ConfigError("unknown eval_mode '" + mode + "'");
  }
  read(j, "record_wall_clock", c.record_wall_clock, "config");
  read(j, "plan_trace", c.plan_trace, "config");
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " +
                      e.what());
  }
  return config_from_json(j);
}

void save_config(const ExperimentConfig& cfg,
                 const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config " + path.string());
  out << config_to_json(cfg).dump(2) << "\n";
}

}  // namespace vsmbrl
