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

#include "vsmbrl/harness/experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "vsmbrl/core/errors.h"
#include "vsmbrl/harness/trainer.h"
#include "vsmbrl/planner/planner.h"

namespace vsmbrl {
namespace {

std::filesystem::path seed_dir(const ExperimentConfig& cfg, std::uint64_t seed) {
  return std::filesystem::path(cfg.output_dir) / ("seed_" + std::to_string(seed));
}

}  // namespace

double final_window_return(const std::vector<MetricRow>& rows) {
  if (rows.empty()) return std::nan("");
  const std::size_t n = std::max<std::size_t>(1, (rows.size() + 9) / 10);
  double sum = 0.0;
  for (std::size_t i = rows.size() - n; i < rows.size(); ++i) {
    sum += rows[i].episode_return;
  }
  return sum / static_cast<double>(n);
}

std::string ExperimentSummary::table_entry() const {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.4g \xC2\xB1 %.3g", final_mean, final_std);
  return buf;
}

nlohmann::json ExperimentSummary::to_json() const {
  nlohmann::json j;
  j["env"] = config.env;
  j["scoring"] = std::string(scoring_kind_name(config.planner.scoring.kind));
  j["final_window"] = "last 10% of evaluation points";
  j["n_ok"] = n_ok;
  j["final_mean"] = final_mean;
  j["final_std"] = final_std;
  j["table_entry"] = table_entry();
  j["cadence_ok"] = cadence_ok;
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& s : this->seeds) {
    nlohmann::json e = {{"seed", s.seed},
                        {"ok", s.ok},
                        {"rows", s.rows.size()},
                        {"critic_steps", s.counters.critic_steps},
                        {"actor_steps", s.counters.actor_steps},
                        {"env_steps", s.counters.env_steps},
                        {"cadence_ok", s.cadence_ok}};
    if (std::isfinite(s.final_return)) e["final_return"] = s.final_return;
    if (!s.ok) e["error"] = s.error;
    seeds.push_back(e);
  }
  j["seeds"] = seeds;
  return j;
}

SeedResult run_seed(const ExperimentConfig& cfg, std::uint64_t seed,
                    bool write_files) {
  SeedResult result;
  result.seed = seed;
  const auto dir = seed_dir(cfg, seed);
  try {
    Trainer trainer(cfg, seed);
    if (write_files && cfg.plan_trace) trainer.open_plan_trace(dir / "plan_trace.jsonl");
    trainer.run();
    result.rows = trainer.rows();
    result.counters = trainer.learner().counters();
    if (write_files) {
      write_metrics(dir / "metrics.csv", result.rows);
      trainer.save_checkpoint(dir / "checkpoint");
    }
  } catch (const NumericalError& e) {
    result.ok = false;
    result.error = e.what();
  } catch (const PlanningFailure& e) {
    result.ok = false;
    result.error = e.what();
  }
  result.cadence_ok =
      result.counters.cadence_holds(cfg.learner.actor_update_divisor);
  result.final_return = final_window_return(result.rows);
  if (!result.ok && write_files) {
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "FAILED") << result.error << "\n";
  }
  return result;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg,
                                 const RunOptions& options) {
  cfg.validate();
  ExperimentSummary summary;
  summary.config = cfg;
  std::vector<std::uint64_t> seeds = options.seeds;
  if (seeds.empty()) {
    for (int s = 0; s < cfg.n_seeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  }
  summary.seeds.resize(seeds.size());
  const int workers = std::max(
      1, std::min<int>(static_cast<int>(seeds.size()),
                       options.workers > 0 ? options.workers : planner_threads()));
  if (workers == 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      summary.seeds[i] = run_seed(cfg, seeds[i], options.write_files);
    }
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < seeds.size();
             i += static_cast<std::size_t>(workers)) {
          summary.seeds[i] = run_seed(cfg, seeds[i], options.write_files);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<double> finals;
  for (const auto& s : summary.seeds) {
    summary.cadence_ok = summary.cadence_ok && s.cadence_ok;
    if (s.ok && std::isfinite(s.final_return)) finals.push_back(s.final_return);
  }
  summary.n_ok = static_cast<int>(finals.size());
  if (!finals.empty()) {
    double mean = 0.0;
    for (double f : finals) mean += f;
    mean /= static_cast<double>(finals.size());
    double var = 0.0;
    for (double f : finals) var += (f - mean) * (f - mean);
    summary.final_mean = mean;
    summary.final_std =
        finals.size() > 1 ? std::sqrt(var / static_cast<double>(finals.size() - 1))
                          : 0.0;
  }
  if (options.write_files) {
    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream(std::filesystem::path(cfg.output_dir) / "summary.json")
        << summary.to_json().dump(2) << "\n";
  }
  return summary;
}

}  // namespace vsmbrl
