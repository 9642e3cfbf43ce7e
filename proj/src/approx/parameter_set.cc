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

#include "vsmbrl/approx/parameter_set.h"

#include <cmath>

#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/rng.h"

namespace vsmbrl {

ParameterSet::ParameterSet(std::vector<LayerShape> shapes)
    : ParameterSet(shapes, Vector::Zero(static_cast<Eigen::Index>(
                               count(shapes)))) {}

ParameterSet::ParameterSet(std::vector<LayerShape> shapes, Vector values,
                           std::uint64_t version)
    : shapes_(std::move(shapes)), values_(std::move(values)),
      version_(version) {
  if (shapes_.empty()) throw ArgumentError("network needs at least one layer");
  std::size_t offset = 0;
  for (std::size_t l = 0; l < shapes_.size(); ++l) {
    const auto& s = shapes_[l];
    if (s.in <= 0 || s.out <= 0) throw ArgumentError("layer sizes must be positive");
    if (l > 0 && shapes_[l - 1].out != s.in) {
      throw ArgumentError("consecutive layer sizes do not chain");
    }
    offsets_.push_back(offset);
    offset += static_cast<std::size_t>(s.in) * s.out + s.out;
  }
  if (static_cast<std::size_t>(values_.size()) != offset) {
    throw ArgumentError("parameter vector length " +
                        std::to_string(values_.size()) + " != " +
                        std::to_string(offset));
  }
}

ParameterSet ParameterSet::mlp(int in, const std::vector<int>& hidden,
                               int out) {
  std::vector<LayerShape> shapes;
  int prev = in;
  for (int h : hidden) {
    shapes.push_back({prev, h});
    prev = h;
  }
  shapes.push_back({prev, out});
  return ParameterSet(std::move(shapes));
}

std::size_t ParameterSet::count(const std::vector<LayerShape>& shapes) {
  std::size_t n = 0;
  for (const auto& s : shapes) {
    n += static_cast<std::size_t>(s.in) * s.out + s.out;
  }
  return n;
}

Eigen::Map<const Matrix> ParameterSet::weight(std::size_t layer) const {
  const auto& s = shapes_[layer];
  return {values_.data() + offsets_[layer], s.out, s.in};
}

Eigen::Map<const Vector> ParameterSet::bias(std::size_t layer) const {
  return {values_.data() + bias_offset(layer), shapes_[layer].out};
}

std::size_t ParameterSet::bias_offset(std::size_t layer) const {
  const auto& s = shapes_[layer];
  return offsets_[layer] + static_cast<std::size_t>(s.in) * s.out;
}

void ParameterSet::set_values(Vector values) {
  if (values.size() != values_.size()) {
    throw ArgumentError("parameter vector length mismatch");
  }
  values_ = std::move(values);
}

void ParameterSet::apply_gradient_step(const Vector& delta) {
  if (delta.size() != values_.size()) {
    throw ArgumentError("gradient step length mismatch");
  }
  values_ += delta;
  ++version_;
}

bool ParameterSet::operator==(const ParameterSet& other) const {
  return shapes_ == other.shapes_ && version_ == other.version_ &&
         (values_.array() == other.values_.array()).all();
}

void init_uniform_fan_in(ParameterSet& params, std::uint64_t seed) {
  Rng rng(seed);
  Vector values = params.values();
  for (std::size_t l = 0; l < params.n_layers(); ++l) {
    const auto& s = params.layer_shapes()[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(s.in));
    const std::size_t begin = params.weight_offset(l);
    const std::size_t end = params.bias_offset(l) + s.out;
    for (std::size_t i = begin; i < end; ++i) {
      values[static_cast<Eigen::Index>(i)] = rng.uniform(-bound, bound);
    }
  }
  params.set_values(std::move(values));
}

}  // namespace vsmbrl
