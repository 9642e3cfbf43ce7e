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

// Command-line front end: verify, train, eval, compare.
//
// Exit codes: 0 success, 1 verification (or run) failure, 2 bad config or
// arguments.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vsmbrl/core/errors.h"
#include "vsmbrl/harness/compare.h"
#include "vsmbrl/harness/config.h"
#include "vsmbrl/harness/experiment.h"
#include "vsmbrl/harness/trainer.h"
#include "vsmbrl/harness/verify.h"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kConfigError = 2;

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int run_verify(const std::string& json_path, const std::string& weights_path,
               double gamma, int horizon, int t_max) {
  const vsmbrl::VerifyReport report = vsmbrl::run_verify_suites();
  std::cout << report.to_table();
  if (!json_path.empty()) {
    std::ofstream(json_path) << report.to_json().dump(2) << "\n";
  }
  if (!weights_path.empty()) {
    vsmbrl::ScoringSpec spec{vsmbrl::ScoringKind::kSumValue, gamma, horizon};
    std::ofstream out(weights_path);
    vsmbrl::write_weight_profile_csv(out, spec, t_max);
  }
  return report.passed() ? kOk : kFailed;
}

int run_train(const std::string& config_path, std::uint64_t seed,
              const std::string& output_dir, long long steps) {
  vsmbrl::ExperimentConfig cfg = vsmbrl::load_config(config_path);
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  if (steps > 0) cfg.total_env_steps = static_cast<std::uint64_t>(steps);
  cfg.validate();
  const vsmbrl::SeedResult r = vsmbrl::run_seed(cfg, seed, true);
  if (!r.ok) {
    std::cerr << "seed " << seed << " failed: " << r.error << "\n";
    return kFailed;
  }
  std::printf("seed %llu: final return %.6g, critic steps %llu, actor steps %llu%s\n",
              static_cast<unsigned long long>(seed), r.final_return,
              static_cast<unsigned long long>(r.counters.critic_steps),
              static_cast<unsigned long long>(r.counters.actor_steps),
              r.cadence_ok ? "" : " (CADENCE VIOLATED)");
  std::printf("metrics: %s\n",
              (std::filesystem::path(cfg.output_dir) /
               ("seed_" + std::to_string(seed)) / "metrics.csv")
                  .string()
                  .c_str());
  return r.cadence_ok ? kOk : kFailed;
}

int run_eval(const std::string& checkpoint, int episodes) {
  const double ret = vsmbrl::evaluate_checkpoint(checkpoint, episodes);
  std::printf("mean return %.6g\n", ret);
  return kOk;
}

int run_compare(const std::string& configs, const std::string& output_dir,
                long long steps, int n_seeds, const std::string& csv_path) {
  std::vector<vsmbrl::ExperimentConfig> cfgs;
  for (const auto& path : split_commas(configs)) {
    vsmbrl::ExperimentConfig cfg = vsmbrl::load_config(path);
    if (steps > 0) cfg.total_env_steps = static_cast<std::uint64_t>(steps);
    if (n_seeds > 0) cfg.n_seeds = n_seeds;
    if (!output_dir.empty()) {
      cfg.output_dir = (std::filesystem::path(output_dir) /
                        vsmbrl::scoring_kind_name(cfg.planner.scoring.kind))
                           .string();
    }
    cfg.validate();
    cfgs.push_back(cfg);
  }
  if (cfgs.empty()) throw vsmbrl::ArgumentError("--configs is empty");
  const vsmbrl::ComparisonReport report = vsmbrl::compare(cfgs, {});
  std::cout << report.to_markdown();
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    report.write_csv(out);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"value-summation model-based RL toolkit"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run the oracle identity suites");
  std::string json_path, weights_path;
  double gamma = 0.9;
  int horizon = 5;
  int t_max = 60;
  verify->add_option("--json", json_path, "write the report as JSON");
  verify->add_option("--weights-csv", weights_path,
                     "write the per-step weight profile as CSV");
  verify->add_option("--gamma", gamma, "discount for the weight profile");
  verify->add_option("--horizon", horizon, "horizon for the weight profile");
  verify->add_option("--t-max", t_max, "last step of the weight profile");

  auto* train = app.add_subcommand("train", "train one seed");
  std::string config_path, output_dir;
  std::uint64_t seed = 0;
  long long steps = 0;
  train->add_option("--config", config_path, "experiment config (JSON)")
      ->required();
  train->add_option("--seed", seed, "seed")->required();
  train->add_option("--output-dir", output_dir, "override output_dir");
  train->add_option("--steps", steps, "override total_env_steps");

  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint");
  std::string checkpoint;
  int episodes = 0;
  eval->add_option("--checkpoint", checkpoint, "checkpoint directory")
      ->required();
  eval->add_option("--episodes", episodes, "override eval_episodes");

  auto* cmp = app.add_subcommand("compare", "compare scoring functions");
  std::string configs, csv_path;
  int n_seeds = 0;
  cmp->add_option("--configs", configs, "comma-separated config files")
      ->required();
  cmp->add_option("--output-dir", output_dir, "root for per-config outputs");
  cmp->add_option("--steps", steps, "override total_env_steps");
  cmp->add_option("--seeds", n_seeds, "override n_seeds");
  cmp->add_option("--csv", csv_path, "write mean-return curves as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*verify) return run_verify(json_path, weights_path, gamma, horizon, t_max);
    if (*train) return run_train(config_path, seed, output_dir, steps);
    if (*eval) return run_eval(checkpoint, episodes);
    if (*cmp) return run_compare(configs, output_dir, steps, n_seeds, csv_path);
  } catch (const vsmbrl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const vsmbrl::ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return kConfigError;
  } catch (const vsmbrl::VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}
