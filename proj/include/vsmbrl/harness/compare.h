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

#ifndef VSMBRL_HARNESS_COMPARE_H_
#define VSMBRL_HARNESS_COMPARE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vsmbrl/harness/experiment.h"

namespace vsmbrl {

struct ComparisonReport {
  std::string env;
  std::vector<std::string> labels;  // one per run, scoring kind name
  std::vector<std::uint64_t> steps;
  // mean_returns[k][i]: seed-averaged return of run k at steps[i].
  std::vector<std::vector<double>> mean_returns;
  // Trapezoidal area under the mean-return curve divided by the step span
  // (the curve's average height); the single value when only one point exists.
  std::vector<double> auc;
  std::vector<double> final_mean;
  std::vector<double> final_std;

  std::string to_markdown() const;
  // Header: env_step,<label>... ; one row per evaluation step.
  void write_csv(std::ostream& out) const;
};

// Throws ArgumentError unless the configs differ only in scoring kind and
// output_dir.
void check_comparable(const std::vector<ExperimentConfig>& cfgs);

// Throws ArgumentError if the runs' evaluation step grids differ.
ComparisonReport compare_summaries(const std::vector<ExperimentSummary>& runs);

ComparisonReport compare(const std::vector<ExperimentConfig>& cfgs,
                         const RunOptions& options = {});

double normalized_auc(const std::vector<std::uint64_t>& steps,
                      const std::vector<double>& values);

}  // namespace vsmbrl

#endif  // VSMBRL_HARNESS_COMPARE_H_
