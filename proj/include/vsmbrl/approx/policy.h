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

#ifndef VSMBRL_APPROX_POLICY_H_
#define VSMBRL_APPROX_POLICY_H_

#include <cstdint>

#include "vsmbrl/approx/mlp.h"
#include "vsmbrl/approx/parameter_set.h"

namespace vsmbrl {

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;

// Squashed-Gaussian policy head. The actor network emits 2*action_dim rows:
// the pre-squash mean followed by the unclamped log standard deviation.
struct PolicyOutput {
  Vector action;
  double log_prob = 0.0;
  Vector mean;
  Vector log_std;
};

PolicyOutput policy_sample(const ParameterSet& actor, const Vector& state,
                           std::uint64_t noise_seed);
// Same as policy_sample with the standard normal draw supplied explicitly.
PolicyOutput policy_from_noise(const ParameterSet& actor, const Vector& state,
                               const Vector& noise);
// tanh(mean): the deterministic action.
Vector policy_mean_action(const ParameterSet& actor, const Vector& state);

// log density of a = tanh(u), u ~ N(mean, exp(log_std)^2), evaluated at the
// pre-squash point u. Includes the tanh change-of-variables term.
double squashed_gaussian_log_prob(const Vector& pre_tanh, const Vector& mean,
                                  const Vector& log_std);

// log(1 - tanh(u)^2) without cancellation.
double log1m_tanh_sq(double u);

ParameterSet make_actor(int state_dim, int action_dim,
                        const std::vector<int>& hidden);
ParameterSet make_critic(int state_dim, int action_dim,
                         const std::vector<int>& hidden);

// Batched reparameterised forward pass (samples are columns).
struct PolicyBatch {
  MlpCache cache;
  Matrix mean;
  Matrix raw_log_std;
  Matrix log_std;
  Matrix noise;
  Matrix pre_tanh;
  Matrix action;
  Vector log_prob;
};

PolicyBatch policy_forward_batch(const ParameterSet& actor,
                                 const Matrix& states, const Matrix& noise);

}  // namespace vsmbrl

#endif  // VSMBRL_APPROX_POLICY_H_
