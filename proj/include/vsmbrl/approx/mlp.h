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

#ifndef VSMBRL_APPROX_MLP_H_
#define VSMBRL_APPROX_MLP_H_

#include <vector>

#include "vsmbrl/approx/parameter_set.h"

namespace vsmbrl {

// Activations kept by a batched forward pass: activations[0] is the input,
// activations[l] the tanh output of hidden layer l, and the last entry the
// linear network output. Samples are columns.
struct MlpCache {
  std::vector<Matrix> activations;
};

Matrix mlp_forward(const ParameterSet& params, const Matrix& input,
                   MlpCache* cache = nullptr);
Vector mlp_forward_one(const ParameterSet& params, const Vector& input);

// Reverse-mode pass for a cached forward. Adds dL/dparams into `grad` (sized
// like params) and returns dL/dinput.
Matrix mlp_backward(const ParameterSet& params, const MlpCache& cache,
                    const Matrix& grad_output, Vector& grad);

}  // namespace vsmbrl

#endif  // VSMBRL_APPROX_MLP_H_
