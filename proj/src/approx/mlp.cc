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

#include "vsmbrl/approx/mlp.h"

#include "vsmbrl/core/errors.h"

namespace vsmbrl {
namespace {

// Eigen has no packet tanh for doubles; this form vectorises through exp and
// keeps full relative accuracy near 0 through the odd series.
template <typename Dense>
void tanh_in_place(Dense& z) {
  using Array = Eigen::Array<double, Dense::RowsAtCompileTime, Dense::ColsAtCompileTime>;
  const Array a = z.array();
  const Array e = (2.0 * a).exp();
  const auto sq = a.square();
  z = (a.abs() < 0.01)
          .select(a * (1.0 - sq * (1.0 / 3.0 - sq * (2.0 / 15.0))),
                  1.0 - 2.0 / (e + 1.0))
          .matrix();
}

}  // namespace

Matrix mlp_forward(const ParameterSet& params, const Matrix& input,
                   MlpCache* cache) {
  if (input.rows() != params.input_dim()) {
    throw ArgumentError("network input dimension " +
                        std::to_string(input.rows()) + " != " +
                        std::to_string(params.input_dim()));
  }
  const std::size_t n = params.n_layers();
  if (cache) {
    cache->activations.resize(n + 1);
    cache->activations[0] = input;
  }
  Matrix x = input;
  for (std::size_t l = 0; l < n; ++l) {
    Matrix z = params.weight(l) * x;
    z.colwise() += params.bias(l);
    if (l + 1 < n) tanh_in_place(z);
    x = std::move(z);
    if (cache) cache->activations[l + 1] = x;
  }
  return x;
}

Vector mlp_forward_one(const ParameterSet& params, const Vector& input) {
  if (input.size() != params.input_dim()) {
    throw ArgumentError("network input dimension " +
                        std::to_string(input.size()) + " != " +
                        std::to_string(params.input_dim()));
  }
  const std::size_t n = params.n_layers();
  Vector x = input;
  for (std::size_t l = 0; l < n; ++l) {
    Vector z = params.weight(l) * x + params.bias(l);
    if (l + 1 < n) tanh_in_place(z);
    x = std::move(z);
  }
  return x;
}

Matrix mlp_backward(const ParameterSet& params, const MlpCache& cache,
                    const Matrix& grad_output, Vector& grad) {
  const std::size_t n = params.n_layers();
  if (cache.activations.size() != n + 1) {
    throw ArgumentError("forward cache does not match network depth");
  }
  if (grad.size() != static_cast<Eigen::Index>(params.size())) {
    throw ArgumentError("gradient buffer length mismatch");
  }
  Matrix delta = grad_output;
  for (std::size_t l = n; l-- > 0;) {
    const auto& shape = params.layer_shapes()[l];
    const Matrix& x = cache.activations[l];
    Eigen::Map<Matrix> dw(grad.data() + params.weight_offset(l), shape.out,
                          shape.in);
    Eigen::Map<Vector> db(grad.data() + params.bias_offset(l), shape.out);
    dw.noalias() += delta * x.transpose();
    db += delta.rowwise().sum();
    Matrix upstream = params.weight(l).transpose() * delta;
    if (l > 0) {
      upstream.array() *= 1.0 - x.array().square();
    }
    delta = std::move(upstream);
  }
  return delta;
}

}  // namespace vsmbrl
