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

#include "vsmbrl/learner/losses.h"

#include <cmath>
#include <string>

#include "vsmbrl/approx/mlp.h"
#include "vsmbrl/approx/policy.h"
#include "vsmbrl/core/errors.h"

namespace vsmbrl {
namespace {

Matrix stack(const Matrix& top, const Matrix& bottom) {
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

// Row vector of min-over-nets Q values plus the index of the minimising net.
Eigen::RowVectorXd min_q(const std::vector<ParameterSet>& nets,
                         const Matrix& input, std::vector<MlpCache>* caches,
                         std::vector<int>* argmin) {
  Eigen::RowVectorXd best;
  if (caches) caches->resize(nets.size());
  if (argmin) argmin->assign(static_cast<std::size_t>(input.cols()), 0);
  for (std::size_t k = 0; k < nets.size(); ++k) {
    const Matrix q = mlp_forward(nets[k], input, caches ? &(*caches)[k] : nullptr);
    if (k == 0) {
      best = q.row(0);
      continue;
    }
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      if (q(0, j) < best[j]) {
        best[j] = q(0, j);
        if (argmin) (*argmin)[static_cast<std::size_t>(j)] = static_cast<int>(k);
      }
    }
  }
  return best;
}

void require_finite(double loss, const char* what) {
  if (!std::isfinite(loss)) {
    throw NumericalError(std::string(what) + " is not finite",
                         "loss=" + std::to_string(loss));
  }
}

}  // namespace

bool CriticSet::same_shape(const CriticSet& other) const {
  if (nets.size() != other.nets.size()) return false;
  for (std::size_t k = 0; k < nets.size(); ++k) {
    if (!nets[k].same_shape(other.nets[k])) return false;
  }
  return true;
}

CriticSet make_critic_set(int state_dim, int action_dim,
                          const std::vector<int>& hidden, bool twin) {
  CriticSet set;
  set.nets.push_back(make_critic(state_dim, action_dim, hidden));
  if (twin) set.nets.push_back(make_critic(state_dim, action_dim, hidden));
  return set;
}

double critic_eval(const ParameterSet& critic, const Vector& state,
                   const Vector& action) {
  if (!state.allFinite() || !action.allFinite()) {
    throw ArgumentError("critic input is not finite");
  }
  Vector input(state.size() + action.size());
  input << state, action;
  return mlp_forward_one(critic, input)[0];
}

double critic_set_eval(const CriticSet& critic, const Vector& state,
                       const Vector& action) {
  if (critic.nets.empty()) throw ArgumentError("empty critic set");
  double q = critic_eval(critic.nets[0], state, action);
  for (std::size_t k = 1; k < critic.nets.size(); ++k) {
    q = std::min(q, critic_eval(critic.nets[k], state, action));
  }
  return q;
}

Matrix TransitionBatch::critic_input() const { return stack(states, actions); }

TransitionBatch make_batch(std::span<const Transition> transitions) {
  if (transitions.empty()) throw ArgumentError("empty transition batch");
  const auto n = static_cast<Eigen::Index>(transitions.size());
  const auto sd = transitions.front().state.size();
  const auto ad = transitions.front().action.size();
  TransitionBatch b;
  b.states.resize(sd, n);
  b.actions.resize(ad, n);
  b.next_states.resize(sd, n);
  b.rewards.resize(n);
  b.not_done.resize(n);
  b.origins.reserve(transitions.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    const Transition& t = transitions[static_cast<std::size_t>(j)];
    if (t.state.size() != sd || t.next_state.size() != sd ||
        t.action.size() != ad) {
      throw ArgumentError("transition " + std::to_string(j) +
                          " has inconsistent dimensions");
    }
    b.states.col(j) = t.state;
    b.actions.col(j) = t.action;
    b.next_states.col(j) = t.next_state;
    b.rewards[j] = t.reward;
    b.not_done[j] = t.done ? 0.0 : 1.0;
    b.origins.push_back(t.origin);
  }
  return b;
}

Vector soft_td_targets(const CriticSet& target, const ParameterSet& actor,
                       const TransitionBatch& batch, double gamma,
                       double alpha, const Matrix& next_noise) {
  const PolicyBatch next = policy_forward_batch(actor, batch.next_states,
                                                next_noise);
  const Eigen::RowVectorXd q_next =
      min_q(target.nets, stack(batch.next_states, next.action), nullptr,
            nullptr);
  Vector y(batch.size());
  for (Eigen::Index j = 0; j < batch.size(); ++j) {
    const double soft_value = q_next[j] - alpha * next.log_prob[j];
    y[j] = batch.not_done[j] == 0.0 ? batch.rewards[j]
                                    : batch.rewards[j] + gamma * soft_value;
    if (!std::isfinite(y[j])) {
      throw NumericalError("non-finite TD target",
                           "transition " + std::to_string(j));
    }
  }
  return y;
}

double critic_loss(const ParameterSet& critic, const TransitionBatch& batch,
                   const Vector& targets) {
  const Matrix q = mlp_forward(critic, batch.critic_input());
  const double loss =
      (q.row(0).transpose() - targets).squaredNorm() / batch.size();
  require_finite(loss, "critic loss");
  return loss;
}

LossAndGrad critic_loss_grad(const ParameterSet& critic,
                             const TransitionBatch& batch,
                             const Vector& targets) {
  MlpCache cache;
  const Matrix q = mlp_forward(critic, batch.critic_input(), &cache);
  const Vector err = q.row(0).transpose() - targets;
  LossAndGrad out;
  out.loss = err.squaredNorm() / batch.size();
  require_finite(out.loss, "critic loss");
  out.grad = Vector::Zero(static_cast<Eigen::Index>(critic.size()));
  const Matrix grad_out =
      (2.0 / static_cast<double>(batch.size())) * err.transpose();
  mlp_backward(critic, cache, grad_out, out.grad);
  return out;
}

double actor_loss(const ParameterSet& actor, const CriticSet& critic,
                  const Matrix& states, const Matrix& noise, double alpha) {
  const PolicyBatch pb = policy_forward_batch(actor, states, noise);
  const Eigen::RowVectorXd q =
      min_q(critic.nets, stack(states, pb.action), nullptr, nullptr);
  const double loss =
      (alpha * pb.log_prob.transpose() - q).sum() / states.cols();
  require_finite(loss, "actor loss");
  return loss;
}

LossAndGrad actor_loss_grad(const ParameterSet& actor, const CriticSet& critic,
                            const Matrix& states, const Matrix& noise,
                            double alpha) {
  const Eigen::Index n = states.cols();
  const PolicyBatch pb = policy_forward_batch(actor, states, noise);
  const Eigen::Index ad = pb.action.rows();
  std::vector<MlpCache> caches;
  std::vector<int> argmin;
  const Eigen::RowVectorXd q =
      min_q(critic.nets, stack(states, pb.action), &caches, &argmin);

  LossAndGrad out;
  out.loss = (alpha * pb.log_prob.transpose() - q).sum() / n;
  require_finite(out.loss, "actor loss");

  // dQmin/da through whichever net attains the min for each sample.
  Matrix dq_da = Matrix::Zero(ad, n);
  for (std::size_t k = 0; k < critic.nets.size(); ++k) {
    Matrix seed = Matrix::Zero(1, n);
    bool any = false;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (argmin[static_cast<std::size_t>(j)] == static_cast<int>(k)) {
        seed(0, j) = 1.0;
        any = true;
      }
    }
    if (!any) continue;
    Vector scratch = Vector::Zero(static_cast<Eigen::Index>(critic.nets[k].size()));
    const Matrix d_input = mlp_backward(critic.nets[k], caches[k], seed, scratch);
    dq_da += d_input.bottomRows(ad);
  }

  // Per-sample loss alpha*log pi - Q. With the noise held fixed,
  // d log pi / du = 2 tanh(u) and du/dlog_std = std * noise.
  Matrix grad_head(2 * ad, n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < ad; ++i) {
      const double th = std::tanh(pb.pre_tanh(i, j));
      const double dl_du =
          alpha * 2.0 * th - dq_da(i, j) * (1.0 - th * th);
      const double sigma = std::exp(pb.log_std(i, j));
      double dl_dlogstd = -alpha + dl_du * sigma * pb.noise(i, j);
      const double raw = pb.raw_log_std(i, j);
      if (raw < kLogStdMin || raw > kLogStdMax) dl_dlogstd = 0.0;
      grad_head(i, j) = dl_du * inv_n;
      grad_head(ad + i, j) = dl_dlogstd * inv_n;
    }
  }
  out.grad = Vector::Zero(static_cast<Eigen::Index>(actor.size()));
  mlp_backward(actor, pb.cache, grad_head, out.grad);
  return out;
}

}  // namespace vsmbrl
