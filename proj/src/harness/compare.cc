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

#include "vsmbrl/harness/compare.h"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "vsmbrl/core/errors.h"

namespace vsmbrl {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<std::uint64_t> step_grid(const ExperimentSummary& run) {
  std::vector<std::uint64_t> grid;
  bool have = false;
  for (const auto& s : run.seeds) {
    if (!s.ok) continue;
    std::vector<std::uint64_t> g;
    for (const auto& r : s.rows) g.push_back(r.env_step);
    if (!have) {
      grid = std::move(g);
      have = true;
    } else if (g != grid) {
      throw ArgumentError("seeds of one run disagree on the evaluation steps");
    }
  }
  return grid;
}

}  // namespace

void check_comparable(const std::vector<ExperimentConfig>& cfgs) {
  if (cfgs.empty()) throw ArgumentError("compare needs at least one config");
  for (std::size_t i = 1; i < cfgs.size(); ++i) {
    ExperimentConfig a = cfgs.front();
    ExperimentConfig b = cfgs[i];
    a.output_dir = b.output_dir;
    a.planner.scoring.kind = b.planner.scoring.kind;
    if (!(a == b)) {
      throw ArgumentError("compare configs must differ only in scoring.kind "
                          "and output_dir");
    }
  }
}

double normalized_auc(const std::vector<std::uint64_t>& steps,
                      const std::vector<double>& values) {
  if (steps.empty()) return std::nan("");
  if (steps.size() == 1) return values.front();
  double area = 0.0;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    area += 0.5 * (values[i] + values[i - 1]) *
            static_cast<double>(steps[i] - steps[i - 1]);
  }
  return area / static_cast<double>(steps.back() - steps.front());
}

ComparisonReport compare_summaries(const std::vector<ExperimentSummary>& runs) {
  if (runs.empty()) throw ArgumentError("compare needs at least one run");
  ComparisonReport rep;
  rep.env = runs.front().config.env;
  rep.steps = step_grid(runs.front());
  for (const auto& run : runs) {
    if (step_grid(run) != rep.steps) {
      throw ArgumentError("runs have mismatched evaluation step grids");
    }
    rep.labels.emplace_back(scoring_kind_name(run.config.planner.scoring.kind));
    std::vector<double> mean(rep.steps.size(), 0.0);
    int n = 0;
    for (const auto& s : run.seeds) {
      if (!s.ok) continue;
      for (std::size_t i = 0; i < rep.steps.size(); ++i) {
        mean[i] += s.rows[i].episode_return;
      }
      ++n;
    }
    for (double& m : mean) m = n ? m / n : std::nan("");
    rep.auc.push_back(normalized_auc(rep.steps, mean));
    rep.mean_returns.push_back(std::move(mean));
    rep.final_mean.push_back(run.final_mean);
    rep.final_std.push_back(run.final_std);
  }
  return rep;
}

ComparisonReport compare(const std::vector<ExperimentConfig>& cfgs,
                         const RunOptions& options) {
  check_comparable(cfgs);
  std::vector<ExperimentSummary> runs;
  for (const auto& cfg : cfgs) runs.push_back(run_experiment(cfg, options));
  return compare_summaries(runs);
}

std::string ComparisonReport::to_markdown() const {
  std::ostringstream md;
  md << "# Scoring comparison: " << env << "\n\n";
  md << "| scoring | final return (mean \xC2\xB1 std, last 10% of evals) | "
        "learning efficiency (normalized AUC) |\n|---|---|---|\n";
  for (std::size_t k = 0; k < labels.size(); ++k) {
    md << "| " << labels[k] << " | " << fmt(final_mean[k]) << " \xC2\xB1 "
       << fmt(final_std[k]) << " | " << fmt(auc[k]) << " |\n";
  }
  md << "\n| env_step |";
  for (const auto& l : labels) md << ' ' << l << " |";
  md << "\n|---|";
  for (std::size_t k = 0; k < labels.size(); ++k) md << "---|";
  md << "\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    md << "| " << steps[i] << " |";
    for (std::size_t k = 0; k < labels.size(); ++k) {
      md << ' ' << fmt(mean_returns[k][i]) << " |";
    }
    md << "\n";
  }
  return md.str();
}

void ComparisonReport::write_csv(std::ostream& out) const {
  out << "env_step";
  for (const auto& l : labels) out << ',' << l;
  out << "\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out << steps[i];
    for (std::size_t k = 0; k < labels.size(); ++k) {
      out << ',' << fmt(mean_returns[k][i]);
    }
    out << "\n";
  }
}

}  // namespace vsmbrl
