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

#ifndef VSMBRL_HARNESS_METRICS_H_
#define VSMBRL_HARNESS_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace vsmbrl {

inline constexpr std::string_view kMetricsHeader =
    "seed,env_step,episode_return,critic_loss,actor_loss,mean_score,"
    "chosen_score,wall_ms";

struct MetricRow {
  std::uint64_t seed = 0;
  std::uint64_t env_step = 0;
  double episode_return = 0.0;
  double critic_loss = 0.0;
  double actor_loss = 0.0;
  double mean_score = 0.0;
  double chosen_score = 0.0;
  double wall_ms = 0.0;
};

// Bitwise comparison (NaN == NaN).
bool same_row(const MetricRow& a, const MetricRow& b);

// Reals use the shortest round-trip representation; non-finite values are
// written as nan, inf or -inf.
void write_metrics(std::ostream& out, const std::vector<MetricRow>& rows);
void write_metrics(const std::filesystem::path& path,
                   const std::vector<MetricRow>& rows);
// Throws ParseError with a 1-based line number on malformed input.
std::vector<MetricRow> read_metrics(std::istream& in);
std::vector<MetricRow> read_metrics(const std::filesystem::path& path);

}  // namespace vsmbrl

#endif  // VSMBRL_HARNESS_METRICS_H_
