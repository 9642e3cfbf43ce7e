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

#include "vsmbrl/approx/adam.h"

#include <cmath>

#include "vsmbrl/core/errors.h"

namespace vsmbrl {

AdamState make_adam_state(const ParameterSet& params) {
  const auto n = static_cast<Eigen::Index>(params.size());
  return {Vector::Zero(n), Vector::Zero(n), 0};
}

void adam_step(ParameterSet& params, const Vector& grad, AdamState& state,
               const AdamConfig& config) {
  if (grad.size() != static_cast<Eigen::Index>(params.size()) ||
      state.m.size() != grad.size()) {
    throw ArgumentError("Adam gradient/state length mismatch");
  }
  ++state.t;
  state.m = config.beta1 * state.m + (1.0 - config.beta1) * grad;
  state.v = config.beta2 * state.v +
            (1.0 - config.beta2) * grad.array().square().matrix();
  const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.t));
  const Vector delta =
      (-config.lr * (state.m.array() / c1) /
       ((state.v.array() / c2).sqrt() + config.eps))
          .matrix();
  params.apply_gradient_step(delta);
}

}  // namespace vsmbrl
