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

#include "vsmbrl/harness/metrics.h"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "vsmbrl/core/errors.h"

namespace vsmbrl {
namespace {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view field, std::size_t line) {
  if (field == "nan") return std::nan("");
  if (field == "inf") return INFINITY;
  if (field == "-inf") return -INFINITY;
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParseError("bad real '" + std::string(field) + "'", line);
  }
  return v;
}

std::uint64_t parse_uint(std::string_view field, std::size_t line) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParseError("bad integer '" + std::string(field) + "'", line);
  }
  return v;
}

bool same_bits(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0 ||
         (std::isnan(a) && std::isnan(b));
}

}  // namespace

bool same_row(const MetricRow& a, const MetricRow& b) {
  return a.seed == b.seed && a.env_step == b.env_step &&
         same_bits(a.episode_return, b.episode_return) &&
         same_bits(a.critic_loss, b.critic_loss) &&
         same_bits(a.actor_loss, b.actor_loss) &&
         same_bits(a.mean_score, b.mean_score) &&
         same_bits(a.chosen_score, b.chosen_score) &&
         same_bits(a.wall_ms, b.wall_ms);
}

void write_metrics(std::ostream& out, const std::vector<MetricRow>& rows) {
  out << kMetricsHeader << "\n";
  for (const auto& r : rows) {
    out << r.seed << ',' << r.env_step << ',' << format_real(r.episode_return)
        << ',' << format_real(r.critic_loss) << ','
        << format_real(r.actor_loss) << ',' << format_real(r.mean_score) << ','
        << format_real(r.chosen_score) << ',' << format_real(r.wall_ms)
        << "\n";
  }
}

void write_metrics(const std::filesystem::path& path,
                   const std::vector<MetricRow>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StateError("cannot write " + path.string());
  write_metrics(out, rows);
}

std::vector<MetricRow> read_metrics(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("missing header", line_no);
  if (line != kMetricsHeader) throw ParseError("unexpected header", line_no);
  std::vector<MetricRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 8) {
      throw ParseError("expected 8 fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    MetricRow r;
    r.seed = parse_uint(fields[0], line_no);
    r.env_step = parse_uint(fields[1], line_no);
    r.episode_return = parse_real(fields[2], line_no);
    r.critic_loss = parse_real(fields[3], line_no);
    r.actor_loss = parse_real(fields[4], line_no);
    r.mean_score = parse_real(fields[5], line_no);
    r.chosen_score = parse_real(fields[6], line_no);
    r.wall_ms = parse_real(fields[7], line_no);
    rows.push_back(r);
  }
  return rows;
}

std::vector<MetricRow> read_metrics(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StateError("cannot read " + path.string());
  return read_metrics(in);
}

}  // namespace vsmbrl
