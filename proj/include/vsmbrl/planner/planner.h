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

#ifndef VSMBRL_PLANNER_PLANNER_H_
#define VSMBRL_PLANNER_PLANNER_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vsmbrl/approx/parameter_set.h"
#include "vsmbrl/core/environment.h"
#include "vsmbrl/core/replay_buffer.h"
#include "vsmbrl/learner/losses.h"
#include "vsmbrl/scoring/scoring.h"

namespace vsmbrl {

struct PlannerConfig {
  int n_trajectories = 16;
  int horizon = 5;
  ScoringSpec scoring;
  std::uint64_t base_seed = 0;

  void validate() const;
  bool operator==(const PlannerConfig&) const = default;
};

struct PlanResult {
  Vector chosen_action;
  int chosen_index = 0;
  std::vector<double> scores;
  std::vector<Trajectory> trajectories;

  bool operator==(const PlanResult& other) const;
};

// Source of candidate actions. Implementations must be pure functions of
// their arguments so rollouts can run in any order.
class ActionProposal {
 public:
  virtual ~ActionProposal() = default;
  virtual Vector propose(int index, int step, const Vector& state,
                         std::uint64_t trajectory_seed) const = 0;
};

// Estimate of Q(s_h, a_h) at rollout step h.
class QEstimator {
 public:
  virtual ~QEstimator() = default;
  virtual double q(int step, const Vector& state,
                   const Vector& action) const = 0;
};

// Samples from the behavioural policy; step h of a trajectory uses the noise
// seed derive_seed(trajectory_seed, h).
class PolicyProposal : public ActionProposal {
 public:
  explicit PolicyProposal(ParameterSet actor) : actor_(std::move(actor)) {}
  Vector propose(int index, int step, const Vector& state,
                 std::uint64_t trajectory_seed) const override;
  const ParameterSet& actor() const { return actor_; }

 private:
  ParameterSet actor_;
};

// min over the critic set.
class CriticEstimator : public QEstimator {
 public:
  explicit CriticEstimator(CriticSet critic) : critic_(std::move(critic)) {}
  double q(int step, const Vector& state, const Vector& action) const override;

 private:
  CriticSet critic_;
};

// Fixed action sequences replayed open-loop: candidate i plays sequences[i].
class SequenceProposal : public ActionProposal {
 public:
  explicit SequenceProposal(std::vector<std::vector<Vector>> sequences)
      : sequences_(std::move(sequences)) {}
  Vector propose(int index, int step, const Vector& state,
                 std::uint64_t trajectory_seed) const override;

 private:
  std::vector<std::vector<Vector>> sequences_;
};

// H+1 step rollout of (policy sample, model step, Q estimate) from s0.
// Throws NumericalError carrying the step index if the model produces a
// non-finite state or reward.
Trajectory rollout_trajectory(const Model& model, const ActionProposal& proposal,
                              const QEstimator& q, const Vector& s0,
                              const PlannerConfig& config, int index,
                              std::uint64_t trajectory_seed);

// Index of the largest finite score, lowest index on ties; -1 if none is
// finite.
int select_best(const std::vector<double>& scores);

struct PlanOptions {
  // 0 = planner_threads().
  int threads = 0;
  // When set, receives all N*(H+1) imagined transitions in one batch.
  ReplayBuffer* imagined_sink = nullptr;
};

// Random-shooting MPC step: N rollouts with seeds base_seed + i, scored by
// config.scoring; returns the first action of the best trajectory. Throws
// PlanningFailure if no score is finite.
PlanResult plan_action(const Model& model, const ActionProposal& proposal,
                       const QEstimator& q, const Vector& s0,
                       const PlannerConfig& config,
                       const PlanOptions& options = {});

// Imagined transitions of one trajectory (done = false throughout).
std::vector<Transition> imagined_transitions(const Trajectory& traj);

// Worker cap: VSMBRL_THREADS if set and positive, else hardware concurrency.
int planner_threads();

// One JSON line per planner call: env_step, chosen_index, scores, wall_us.
void write_plan_trace(std::ostream& out, std::uint64_t env_step,
                      const PlanResult& result, std::int64_t wall_us);

}  // namespace vsmbrl

#endif  // VSMBRL_PLANNER_PLANNER_H_
