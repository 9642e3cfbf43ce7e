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

#include "vsmbrl/approx/param_io.h"

#include <bit>
#include <fstream>

#include "vsmbrl/core/errors.h"

namespace vsmbrl {

static_assert(std::endian::native == std::endian::little,
              "parameter files are little-endian");

nlohmann::json layer_shapes_to_json(const std::vector<LayerShape>& shapes) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : shapes) j.push_back({s.in, s.out});
  return j;
}

std::vector<LayerShape> layer_shapes_from_json(const nlohmann::json& j) {
  std::vector<LayerShape> shapes;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) {
      throw ArgumentError("layer shape must be an [in, out] pair");
    }
    shapes.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return shapes;
}

void save_parameters(const ParameterSet& params,
                     const std::filesystem::path& stem,
                     const nlohmann::json& rng_state) {
  auto bin = stem;
  bin += ".bin";
  auto manifest_path = stem;
  manifest_path += ".json";
  std::ofstream out(bin, std::ios::binary);
  if (!out) throw StateError("cannot write " + bin.string());
  out.write(reinterpret_cast<const char*>(params.values().data()),
            static_cast<std::streamsize>(sizeof(double) * params.size()));
  nlohmann::json manifest;
  manifest["layer_shapes"] = layer_shapes_to_json(params.layer_shapes());
  manifest["version"] = params.version();
  manifest["count"] = params.size();
  manifest["rng_state"] = rng_state;
  std::ofstream mout(manifest_path);
  if (!mout) throw StateError("cannot write " + manifest_path.string());
  mout << manifest.dump(2) << "\n";
}

LoadedParameters load_parameters(const std::filesystem::path& stem) {
  auto bin = stem;
  bin += ".bin";
  auto manifest_path = stem;
  manifest_path += ".json";
  std::ifstream min(manifest_path);
  if (!min) throw ArgumentError("cannot read " + manifest_path.string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(min);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError("malformed parameter manifest: " +
                        std::string(e.what()));
  }
  auto shapes = layer_shapes_from_json(manifest.at("layer_shapes"));
  const auto count = manifest.at("count").get<std::size_t>();
  if (count != ParameterSet::count(shapes)) {
    throw ArgumentError("manifest count disagrees with layer shapes");
  }
  std::ifstream in(bin, std::ios::binary | std::ios::ate);
  if (!in) throw ArgumentError("cannot read " + bin.string());
  if (static_cast<std::size_t>(in.tellg()) != count * sizeof(double)) {
    throw ArgumentError("parameter file size disagrees with manifest");
  }
  in.seekg(0);
  Vector values(static_cast<Eigen::Index>(count));
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  return {ParameterSet(std::move(shapes), std::move(values),
                       manifest.at("version").get<std::uint64_t>()),
          manifest.value("rng_state", nlohmann::json::object())};
}

}  // namespace vsmbrl
