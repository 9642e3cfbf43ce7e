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

#ifndef VSMBRL_HARNESS_EXPERIMENT_H_
#define VSMBRL_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsmbrl/harness/config.h"
#include "vsmbrl/harness/metrics.h"
#include "vsmbrl/learner/learner.h"

namespace vsmbrl {

struct SeedResult {
  std::uint64_t seed = 0;
  bool ok = true;
  std::string error;
  std::vector<MetricRow> rows;
  UpdateCounters counters;
  bool cadence_ok = true;
  // Mean return over the final 10% of evaluation points (at least one).
  double final_return = 0.0;
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::vector<SeedResult> seeds;
  // Across successful seeds.
  double final_mean = 0.0;
  double final_std = 0.0;
  int n_ok = 0;
  bool cadence_ok = true;

  // "7284 ± 183" style.
  std::string table_entry() const;
  nlohmann::json to_json() const;
};

double final_window_return(const std::vector<MetricRow>& rows);

struct RunOptions {
  // Seeds to run; empty means 0..n_seeds-1.
  std::vector<std::uint64_t> seeds;
  // Write per-seed metrics/checkpoints and summary.json under output_dir.
  bool write_files = true;
  // Seeds run concurrently (0 = VSMBRL_THREADS / hardware concurrency).
  int workers = 1;
};

// Each seed writes only output_dir/seed_<k>/; a numerical failure aborts
// that seed alone and is recorded in its SeedResult.
ExperimentSummary run_experiment(const ExperimentConfig& cfg,
                                 const RunOptions& options = {});

SeedResult run_seed(const ExperimentConfig& cfg, std::uint64_t seed,
                    bool write_files);

}  // namespace vsmbrl

#endif  // VSMBRL_HARNESS_EXPERIMENT_H_
