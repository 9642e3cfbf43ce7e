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

#ifndef VSMBRL_LEARNER_LOSSES_H_
#define VSMBRL_LEARNER_LOSSES_H_

#include <span>
#include <vector>

#include "vsmbrl/approx/parameter_set.h"
#include "vsmbrl/core/types.h"

namespace vsmbrl {

// One critic network, or a twin pair whose estimate is the elementwise min.
struct CriticSet {
  std::vector<ParameterSet> nets;

  bool twin() const { return nets.size() == 2; }
  bool same_shape(const CriticSet& other) const;
  bool operator==(const CriticSet& other) const = default;
};

CriticSet make_critic_set(int state_dim, int action_dim,
                          const std::vector<int>& hidden, bool twin);

// Q(s, a) of a single network. Throws ArgumentError on non-finite inputs or
// a dimension mismatch.
double critic_eval(const ParameterSet& critic, const Vector& state,
                   const Vector& action);
// min over the set.
double critic_set_eval(const CriticSet& critic, const Vector& state,
                       const Vector& action);

// Column-stacked view of a transition minibatch.
struct TransitionBatch {
  Matrix states;
  Matrix actions;
  Matrix next_states;
  Vector rewards;
  Vector not_done;
  std::vector<Origin> origins;

  Eigen::Index size() const { return rewards.size(); }
  Matrix critic_input() const;
};

TransitionBatch make_batch(std::span<const Transition> transitions);

struct LossAndGrad {
  double loss = 0.0;
  Vector grad;
};

// y = r + gamma * (1 - done) * (min_k Q'_k(s', a') - alpha * log pi(a'|s')),
// a' = tanh(mean + std * next_noise). Throws NumericalError naming the first
// non-finite target.
Vector soft_td_targets(const CriticSet& target, const ParameterSet& actor,
                       const TransitionBatch& batch, double gamma,
                       double alpha, const Matrix& next_noise);

// mean_j (Q(s_j, a_j) - y_j)^2 and its parameter gradient.
double critic_loss(const ParameterSet& critic, const TransitionBatch& batch,
                   const Vector& targets);
LossAndGrad critic_loss_grad(const ParameterSet& critic,
                             const TransitionBatch& batch,
                             const Vector& targets);

// mean_j (alpha * log pi(a_j|s_j) - min_k Q_k(s_j, a_j)) with
// a_j = tanh(mean + std * noise_j), and its actor-parameter gradient.
double actor_loss(const ParameterSet& actor, const CriticSet& critic,
                  const Matrix& states, const Matrix& noise, double alpha);
LossAndGrad actor_loss_grad(const ParameterSet& actor, const CriticSet& critic,
                            const Matrix& states, const Matrix& noise,
                            double alpha);

}  // namespace vsmbrl

#endif  // VSMBRL_LEARNER_LOSSES_H_
