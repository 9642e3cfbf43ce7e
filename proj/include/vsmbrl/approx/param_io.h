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

#ifndef VSMBRL_APPROX_PARAM_IO_H_
#define VSMBRL_APPROX_PARAM_IO_H_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "vsmbrl/approx/parameter_set.h"

namespace vsmbrl {

// Writes `<stem>.bin` (values as raw little-endian doubles) and
// `<stem>.json` (layer_shapes, version, value count, rng_state).
void save_parameters(const ParameterSet& params,
                     const std::filesystem::path& stem,
                     const nlohmann::json& rng_state = nlohmann::json::object());

struct LoadedParameters {
  ParameterSet params;
  nlohmann::json rng_state;
};

LoadedParameters load_parameters(const std::filesystem::path& stem);

// Manifest fragment shared with checkpoints.
nlohmann::json layer_shapes_to_json(const std::vector<LayerShape>& shapes);
std::vector<LayerShape> layer_shapes_from_json(const nlohmann::json& j);

}  // namespace vsmbrl

#endif  // VSMBRL_APPROX_PARAM_IO_H_
