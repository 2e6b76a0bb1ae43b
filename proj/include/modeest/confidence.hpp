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
#include <limits>

namespace modeest {

/// Sufficient statistics of one indicator sequence Z_1..Z_t: `ones` hits out
/// of `t` observations, plus the union-bound parameters k and delta.
struct BinStatistics {
  std::uint64_t ones = 0;
  std::uint64_t t = 0;
  std::uint32_t k = 1;
  double delta = 0.1;

  double phat() const noexcept {
    return t == 0 ? 0.0 : static_cast<double>(ones) / static_cast<double>(t);
  }
};

/// Raw (unclipped) confidence interval. With an infinite radius the bounds are
/// -inf and +inf.
struct Interval {
  double lcb;
  double ucb;
};

/// Pairwise empirical variance of a binary sequence with s ones out of t,
/// i.e. s (t - s) / (t (t - 1)). Requires t >= 2.
double empirical_variance(std::uint64_t s, std::uint64_t t);

/// ln(4 k t^2 / delta), the log term shared by every bin at time t.
double log_term(std::uint64_t t, std::uint32_t k, double delta);

/// Empirical-Bernstein radius
///   sqrt(2 V_t L / t) + 7 L / (3 (t - 1)),  L = ln(4 k t^2 / delta),
/// or +inf for t < 2.
double beta(std::uint64_t s, std::uint64_t t, std::uint32_t k, double delta);

/// Same radius with a precomputed log term.
double beta_with_log(std::uint64_t s, std::uint64_t t, double log_term);

/// p̂ ± beta, unclipped. Stop and elimination rules compare these.
Interval raw_interval(std::uint64_t s, std::uint64_t t, std::uint32_t k, double delta);
Interval raw_interval_with_log(std::uint64_t s, std::uint64_t t, double log_term);

/// p̂ ± beta clipped to [0, 1], for reporting. t < 2 gives (0, 1).
Interval confidence_interval(std::uint64_t s, std::uint64_t t, std::uint32_t k, double delta);

/// Deviation bound sqrt(2 ln(1/delta) / (t - 1)) on |sqrt(p(1-p)) - sqrt(V_t)|.
/// Requires t >= 2 and delta in (0, 1].
double variance_deviation_bound(std::uint64_t t, double delta);

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

}  // namespace modeest
