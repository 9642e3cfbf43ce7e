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

#include "vsmbrl/approx/policy.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/rng.h"

namespace vsmbrl {
namespace {

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);
const double kActionBound = std::nextafter(1.0, 0.0);

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double squash(double u) {
  return std::clamp(std::tanh(u), -kActionBound, kActionBound);
}

int action_dim_of(const ParameterSet& actor) {
  if (actor.output_dim() % 2 != 0) {
    throw ArgumentError("actor output must hold mean and log_std rows");
  }
  return actor.output_dim() / 2;
}

}  // namespace

double log1m_tanh_sq(double u) {
  return 2.0 * (std::numbers::ln2 - u - softplus(-2.0 * u));
}

double squashed_gaussian_log_prob(const Vector& pre_tanh, const Vector& mean,
                                  const Vector& log_std) {
  double lp = 0.0;
  for (Eigen::Index i = 0; i < pre_tanh.size(); ++i) {
    const double z = (pre_tanh[i] - mean[i]) / std::exp(log_std[i]);
    lp += -0.5 * z * z - log_std[i] - kHalfLog2Pi - log1m_tanh_sq(pre_tanh[i]);
  }
  return lp;
}

PolicyOutput policy_from_noise(const ParameterSet& actor, const Vector& state,
                               const Vector& noise) {
  const int ad = action_dim_of(actor);
  if (noise.size() != ad) throw ArgumentError("policy noise dimension mismatch");
  const Vector out = mlp_forward_one(actor, state);
  PolicyOutput p;
  p.mean = out.head(ad);
  p.log_std = out.tail(ad).cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
  p.action.resize(ad);
  p.log_prob = 0.0;
  for (int i = 0; i < ad; ++i) {
    const double u = p.mean[i] + std::exp(p.log_std[i]) * noise[i];
    p.action[i] = squash(u);
    p.log_prob += -0.5 * noise[i] * noise[i] - p.log_std[i] - kHalfLog2Pi -
                  log1m_tanh_sq(u);
  }
  return p;
}

PolicyOutput policy_sample(const ParameterSet& actor, const Vector& state,
                           std::uint64_t noise_seed) {
  const int ad = action_dim_of(actor);
  Rng rng(noise_seed);
  Vector noise(ad);
  for (int i = 0; i < ad; ++i) noise[i] = rng.normal();
  return policy_from_noise(actor, state, noise);
}

Vector policy_mean_action(const ParameterSet& actor, const Vector& state) {
  const int ad = action_dim_of(actor);
  Vector mean = mlp_forward_one(actor, state).head(ad);
  for (int i = 0; i < ad; ++i) mean[i] = squash(mean[i]);
  return mean;
}

ParameterSet make_actor(int state_dim, int action_dim,
                        const std::vector<int>& hidden) {
  return ParameterSet::mlp(state_dim, hidden, 2 * action_dim);
}

ParameterSet make_critic(int state_dim, int action_dim,
                         const std::vector<int>& hidden) {
  return ParameterSet::mlp(state_dim + action_dim, hidden, 1);
}

PolicyBatch policy_forward_batch(const ParameterSet& actor,
                                 const Matrix& states, const Matrix& noise) {
  const int ad = action_dim_of(actor);
  if (noise.rows() != ad || noise.cols() != states.cols()) {
    throw ArgumentError("policy noise batch shape mismatch");
  }
  PolicyBatch b;
  const Matrix out = mlp_forward(actor, states, &b.cache);
  b.mean = out.topRows(ad);
  b.raw_log_std = out.bottomRows(ad);
  b.log_std = b.raw_log_std.cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
  b.noise = noise;
  b.pre_tanh = b.mean + (b.log_std.array().exp() * noise.array()).matrix();
  b.action.resize(ad, states.cols());
  b.log_prob = Vector::Zero(states.cols());
  for (Eigen::Index j = 0; j < states.cols(); ++j) {
    for (int i = 0; i < ad; ++i) {
      const double u = b.pre_tanh(i, j);
      b.action(i, j) = squash(u);
      b.log_prob[j] += -0.5 * noise(i, j) * noise(i, j) - b.log_std(i, j) -
                       kHalfLog2Pi - log1m_tanh_sq(u);
    }
  }
  return b;
}

}  // namespace vsmbrl
