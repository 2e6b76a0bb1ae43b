//  Copyright 2026 The modeest Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace modeest {

// SplitMix64 finalizer. Used for seed derivation only, never as a stream.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives the seed of trial `index` from a master seed. Depends only on the
/// pair, so serial, parallel and shuffled execution see the same streams.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed,
                                   std::uint64_t index) noexcept {
  return splitmix64(master_seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Derives an independent child seed (e.g. the noise source of a trial).
constexpr std::uint64_t child_seed(std::uint64_t seed,
                                   std::uint64_t salt) noexcept {
  return splitmix64(seed + splitmix64(salt ^ 0xd1b54a32d192ed03ULL));
}

/// mt19937_64 with hand-rolled uniform mappings so draws are identical across
/// standard libraries (std::uniform_*_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace modeest
