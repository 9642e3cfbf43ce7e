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

#ifndef VSMBRL_APPROX_PARAMETER_SET_H_
#define VSMBRL_APPROX_PARAMETER_SET_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "vsmbrl/core/types.h"

namespace vsmbrl {

struct LayerShape {
  int in = 0;
  int out = 0;
  bool operator==(const LayerShape&) const = default;
};

// Flat parameter vector of a fully connected network. Each layer occupies a
// column-major (out x in) weight block followed by its out-sized bias.
class ParameterSet {
 public:
  ParameterSet() = default;
  // Zero-initialised parameters for the given topology.
  explicit ParameterSet(std::vector<LayerShape> shapes);
  ParameterSet(std::vector<LayerShape> shapes, Vector values,
               std::uint64_t version = 0);

  // in -> hidden... -> out.
  static ParameterSet mlp(int in, const std::vector<int>& hidden, int out);
  static std::size_t count(const std::vector<LayerShape>& shapes);

  const std::vector<LayerShape>& layer_shapes() const { return shapes_; }
  const Vector& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  std::uint64_t version() const { return version_; }
  int input_dim() const { return shapes_.front().in; }
  int output_dim() const { return shapes_.back().out; }
  std::size_t n_layers() const { return shapes_.size(); }

  Eigen::Map<const Matrix> weight(std::size_t layer) const;
  Eigen::Map<const Vector> bias(std::size_t layer) const;
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const;

  // Replaces values without counting as a gradient step.
  void set_values(Vector values);
  // Adds `delta` and advances the version by exactly one.
  void apply_gradient_step(const Vector& delta);

  bool same_shape(const ParameterSet& other) const {
    return shapes_ == other.shapes_;
  }
  bool operator==(const ParameterSet& other) const;

 private:
  std::vector<LayerShape> shapes_;
  std::vector<std::size_t> offsets_;
  Vector values_;
  std::uint64_t version_ = 0;
};

// Uniform(-1/sqrt(in), 1/sqrt(in)) for every weight and bias.
void init_uniform_fan_in(ParameterSet& params, std::uint64_t seed);

}  // namespace vsmbrl

#endif  // VSMBRL_APPROX_PARAMETER_SET_H_
