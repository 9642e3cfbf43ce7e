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

#ifndef VSMBRL_APPROX_ADAM_H_
#define VSMBRL_APPROX_ADAM_H_

#include <cstdint>

#include "vsmbrl/approx/parameter_set.h"

namespace vsmbrl {

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  Vector m;
  Vector v;
  std::uint64_t t = 0;

  bool operator==(const AdamState& o) const {
    return t == o.t && m.size() == o.m.size() && v.size() == o.v.size() &&
           (m.array() == o.m.array()).all() && (v.array() == o.v.array()).all();
  }
};

AdamState make_adam_state(const ParameterSet& params);

// One bias-corrected Adam descent step on `params` (version advances by one).
void adam_step(ParameterSet& params, const Vector& grad, AdamState& state,
               const AdamConfig& config);

}  // namespace vsmbrl

#endif  // VSMBRL_APPROX_ADAM_H_
