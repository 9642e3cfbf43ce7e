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

#include "vsmbrl/core/replay_buffer.h"

#include <istream>
#include <ostream>

#include "vsmbrl/core/errors.h"
#include "vsmbrl/core/rng.h"

namespace vsmbrl {
namespace {

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ArgumentError("truncated replay buffer snapshot");
  return v;
}

void write_vector(std::ostream& out, const Vector& v) {
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(v.size()));
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(sizeof(double) * v.size()));
}

Vector read_vector(std::istream& in) {
  const auto n = read_pod<std::uint32_t>(in);
  Vector v(n);
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(sizeof(double) * n));
  if (!in) throw ArgumentError("truncated replay buffer snapshot");
  return v;
}

}  // namespace

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ArgumentError("replay capacity must be positive");
}

ReplayBuffer::ReplayBuffer(const ReplayBuffer& other)
    : capacity_(other.capacity_) {
  std::lock_guard lock(other.mu_);
  ring_ = other.ring_;
  head_ = other.head_;
  pushed_ = other.pushed_;
}

ReplayBuffer& ReplayBuffer::operator=(const ReplayBuffer& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  capacity_ = other.capacity_;
  ring_ = other.ring_;
  head_ = other.head_;
  pushed_ = other.pushed_;
  return *this;
}

void ReplayBuffer::push(Transition t) {
  std::lock_guard lock(mu_);
  if (ring_.size() < capacity_) {
    ring_.push_back(std::move(t));
  } else {
    ring_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
  }
  ++pushed_;
}

void ReplayBuffer::push_batch(std::span<const Transition> batch) {
  std::lock_guard lock(mu_);
  for (const Transition& t : batch) {
    if (ring_.size() < capacity_) {
      ring_.push_back(t);
    } else {
      ring_[head_] = t;
      head_ = (head_ + 1) % capacity_;
    }
    ++pushed_;
  }
}

const Transition& ReplayBuffer::slot(std::size_t i) const {
  return ring_[(head_ + i) % ring_.size()];
}

std::vector<std::size_t> ReplayBuffer::sample_indices(
    std::size_t n, std::uint64_t seed) const {
  std::lock_guard lock(mu_);
  if (ring_.empty()) throw StateError("sample from empty replay buffer");
  if (n > ring_.size()) {
    throw StateError("sample size " + std::to_string(n) +
                     " exceeds buffer size " + std::to_string(ring_.size()));
  }
  Rng rng(seed);
  std::vector<std::size_t> idx(n);
  for (auto& i : idx) i = static_cast<std::size_t>(rng.index(ring_.size()));
  return idx;
}

std::vector<Transition> ReplayBuffer::sample(std::size_t n,
                                             std::uint64_t seed) const {
  const auto idx = sample_indices(n, seed);
  std::lock_guard lock(mu_);
  std::vector<Transition> out;
  out.reserve(n);
  for (std::size_t i : idx) out.push_back(slot(i));
  return out;
}

Transition ReplayBuffer::at(std::size_t i) const {
  std::lock_guard lock(mu_);
  if (i >= ring_.size()) throw ArgumentError("replay index out of range");
  return slot(i);
}

std::size_t ReplayBuffer::size() const {
  std::lock_guard lock(mu_);
  return ring_.size();
}

std::uint64_t ReplayBuffer::total_pushed() const {
  std::lock_guard lock(mu_);
  return pushed_;
}

void ReplayBuffer::save(std::ostream& out) const {
  std::lock_guard lock(mu_);
  write_pod<std::uint64_t>(out, capacity_);
  write_pod<std::uint64_t>(out, pushed_);
  write_pod<std::uint64_t>(out, ring_.size());
  for (std::size_t i = 0; i < ring_.size(); ++i) {
    const Transition& t = slot(i);
    write_vector(out, t.state);
    write_vector(out, t.action);
    write_pod<double>(out, t.reward);
    write_vector(out, t.next_state);
    write_pod<std::uint8_t>(out, t.done ? 1 : 0);
    write_pod<std::uint8_t>(out, static_cast<std::uint8_t>(t.origin));
  }
}

ReplayBuffer ReplayBuffer::load(std::istream& in) {
  const auto capacity = read_pod<std::uint64_t>(in);
  const auto pushed = read_pod<std::uint64_t>(in);
  const auto n = read_pod<std::uint64_t>(in);
  if (n > capacity) throw ArgumentError("corrupt replay buffer snapshot");
  ReplayBuffer buf(capacity);
  buf.ring_.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Transition t;
    t.state = read_vector(in);
    t.action = read_vector(in);
    t.reward = read_pod<double>(in);
    t.next_state = read_vector(in);
    t.done = read_pod<std::uint8_t>(in) != 0;
    t.origin = static_cast<Origin>(read_pod<std::uint8_t>(in));
    buf.ring_.push_back(std::move(t));
  }
  buf.pushed_ = pushed;
  return buf;
}

}  // namespace vsmbrl
