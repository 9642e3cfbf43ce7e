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

#ifndef VSMBRL_ORACLE_ORACLE_H_
#define VSMBRL_ORACLE_ORACLE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vsmbrl/core/environment.h"
#include "vsmbrl/core/types.h"
#include "vsmbrl/planner/planner.h"
#include "vsmbrl/scoring/scoring.h"

namespace vsmbrl::oracle {

// Action index per state.
using DeterministicPolicy = std::vector<int>;

// Finite-horizon values of a deterministic policy: q(t, s, a) is the
// discounted return of taking a at time t and following the policy until the
// horizon T inclusive.
struct ExactValues {
  int horizon = 0;
  int n_states = 0;
  int n_actions = 0;
  std::vector<double> q;  // (T+1) x S x A
  std::vector<double> v;  // (T+1) x S

  double q_at(int t, int s, int a) const {
    return q[(static_cast<std::size_t>(t) * n_states + s) * n_actions + a];
  }
  double v_at(int t, int s) const {
    return v[static_cast<std::size_t>(t) * n_states + s];
  }
};

// Backward induction from t = T down to 0.
ExactValues exact_q(const TabularMDP& mdp, const DeterministicPolicy& policy);

DeterministicPolicy constant_policy(const TabularMDP& mdp, int action);
DeterministicPolicy random_policy(const TabularMDP& mdp, std::uint64_t seed);

struct TabularRollout {
  std::vector<int> states;
  std::vector<int> actions;
  std::vector<double> rewards;
};

// Follows the policy for `steps` steps from s0.
TabularRollout rollout_policy(const TabularMDP& mdp,
                              const DeterministicPolicy& policy, int s0,
                              int steps);

// sum_{t=0}^{H} gamma^t (t+1) r_t + sum_{t=H+1}^{T} (H+1) gamma^t r_t with
// T = rewards.size() - 1. Throws ArgumentError if H > T.
double score_via_expansion(std::span<const double> rewards, double gamma,
                           int horizon);

struct BestPlan {
  double best_score = 0.0;
  int best_first_action = 0;
  std::vector<int> best_sequence;
};

inline constexpr std::uint64_t kEnumerationLimit = 1'000'000;

// Scores every length-(H+1) action sequence from s0 (lexicographic order,
// first action most significant) using q_source at times t0..t0+H, and keeps
// the first maximum. Throws ResourceError beyond kEnumerationLimit sequences.
BestPlan enumerate_best(const TabularMDP& mdp, int s0, double gamma,
                        int horizon, ScoringKind kind,
                        const ExactValues& q_source, int t0 = 0);

// Every action sequence in the enumeration order of enumerate_best.
std::vector<std::vector<int>> all_action_sequences(int n_actions, int length);

// Exact time-indexed Q as a planner estimator over a TabularModel's encoding.
class ExactQEstimator : public QEstimator {
 public:
  ExactQEstimator(const TabularModel& model, ExactValues values, int t0 = 0);
  double q(int step, const Vector& state, const Vector& action) const override;

 private:
  const TabularModel& model_;
  ExactValues values_;
  int t0_;
};

struct SeriesBoundReport {
  int n_trials = 0;
  // S > bound beyond a 1e-12 relative round-off allowance.
  int violations = 0;
  // Largest observed S / (r_max / (1 - gamma)^2) over all trials.
  double max_ratio = 0.0;
  // Largest |partial_series(gamma, 10^4) - 1/(1 - gamma)^2| over the trial
  // gammas that are <= 0.95.
  double max_series_error = 0.0;
  std::vector<std::uint64_t> failing_trial_seeds;

  bool passed() const { return violations == 0; }
};

// Random non-negative reward sequences and gamma in [0.1, 0.99]; checks both
// the infinite-horizon weights and the finite-H expansion against the bound.
SeriesBoundReport verify_series_bound(int n_trials, std::uint64_t seed);

}  // namespace vsmbrl::oracle

#endif  // VSMBRL_ORACLE_ORACLE_H_
