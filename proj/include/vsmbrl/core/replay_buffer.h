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

#ifndef VSMBRL_CORE_REPLAY_BUFFER_H_
#define VSMBRL_CORE_REPLAY_BUFFER_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <span>
#include <vector>

#include "vsmbrl/core/types.h"

namespace vsmbrl {

// Bounded FIFO of transitions. Oldest entries are evicted first. Access is
// fully serialized; `sample` sees a consistent snapshot.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  ReplayBuffer(const ReplayBuffer& other);
  ReplayBuffer& operator=(const ReplayBuffer& other);

  void push(Transition t);
  // Pushes the whole range under one lock so readers never observe a partial
  // batch.
  void push_batch(std::span<const Transition> batch);

  // Uniform with replacement; the index sequence depends only on (size,
  // n, seed). Throws StateError on an empty buffer or n > size.
  std::vector<std::size_t> sample_indices(std::size_t n,
                                          std::uint64_t seed) const;
  std::vector<Transition> sample(std::size_t n, std::uint64_t seed) const;

  // i-th entry in insertion order (0 = oldest retained).
  Transition at(std::size_t i) const;

  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }
  // Total pushes over the buffer's lifetime.
  std::uint64_t total_pushed() const;

  // Binary snapshot for checkpoints.
  void save(std::ostream& out) const;
  static ReplayBuffer load(std::istream& in);

 private:
  const Transition& slot(std::size_t i) const;

  std::size_t capacity_;
  std::vector<Transition> ring_;
  std::size_t head_ = 0;  // index of the oldest entry once full
  std::uint64_t pushed_ = 0;
  mutable std::mutex mu_;
};

}  // namespace vsmbrl

#endif  // VSMBRL_CORE_REPLAY_BUFFER_H_
