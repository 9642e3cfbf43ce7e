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

#ifndef VSMBRL_CORE_RNG_H_
#define VSMBRL_CORE_RNG_H_

#include <cstdint>
#include <random>

namespace vsmbrl {

// Stream tags for derive_seed. Every stochastic decision in a run is keyed by
// (run seed, stream, counter), so no generator state has to be carried or
// checkpointed.
enum class Stream : std::uint64_t {
  kEnvReset = 1,
  kPlan = 2,
  kCriticBatch = 3,
  kCriticNoise = 4,
  kActorBatch = 5,
  kActorNoise = 6,
  kEvalReset = 7,
  kEvalPlan = 8,
  kInit = 9,
  kPolicyStep = 10,
};

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t base, Stream stream,
                          std::uint64_t counter);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter);

// SplitMix64 as a UniformRandomBitGenerator. Construction is a single word
// store, which matters because every policy sample seeds a fresh stream.
class SplitMixEngine {
 public:
  using result_type = std::uint64_t;
  explicit SplitMixEngine(std::uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  // Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }
  SplitMixEngine& engine() { return engine_; }

 private:
  SplitMixEngine engine_;
};

}  // namespace vsmbrl

#endif  // VSMBRL_CORE_RNG_H_
