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

#include "modeest/confidence.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "modeest/errors.hpp"

namespace modeest {

double empirical_variance(std::uint64_t s, std::uint64_t t) {
  if (t < 2) throw ConfigError(fmt::format("empirical variance needs t >= 2, got {}", t));
  if (s > t) throw ConfigError(fmt::format("hit count {} exceeds t = {}", s, t));
  const double ds = static_cast<double>(s);
  const double dt = static_cast<double>(t);
  return ds * (dt - ds) / (dt * (dt - 1.0));
}

double log_term(std::uint64_t t, std::uint32_t k, double delta) {
  const double dt = static_cast<double>(t);
  return std::log(4.0 * static_cast<double>(k) * dt * dt / delta);
}

double beta_with_log(std::uint64_t s, std::uint64_t t, double log_term) {
  if (t < 2) return kInfiniteRadius;
  const double dt = static_cast<double>(t);
  const double v = empirical_variance(s, t);
  return std::sqrt(2.0 * v * log_term / dt) + 7.0 * log_term / (3.0 * (dt - 1.0));
}

double beta(std::uint64_t s, std::uint64_t t, std::uint32_t k, double delta) {
  if (t < 2) return kInfiniteRadius;
  return beta_with_log(s, t, log_term(t, k, delta));
}

Interval raw_interval_with_log(std::uint64_t s, std::uint64_t t, double log_term) {
  if (t < 2) return {-kInfiniteRadius, kInfiniteRadius};
  const double phat = static_cast<double>(s) / static_cast<double>(t);
  const double b = beta_with_log(s, t, log_term);
  return {phat - b, phat + b};
}

Interval raw_interval(std::uint64_t s, std::uint64_t t, std::uint32_t k, double delta) {
  if (t < 2) return {-kInfiniteRadius, kInfiniteRadius};
  return raw_interval_with_log(s, t, log_term(t, k, delta));
}

Interval confidence_interval(std::uint64_t s, std::uint64_t t, std::uint32_t k, double delta) {
  const Interval raw = raw_interval(s, t, k, delta);
  return {std::max(0.0, raw.lcb), std::min(1.0, raw.ucb)};
}

double variance_deviation_bound(std::uint64_t t, double delta) {
  if (t < 2) throw ConfigError(fmt::format("variance deviation bound needs t >= 2, got {}", t));
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw ConfigError(fmt::format("delta {} is outside (0, 1]", delta));
  }
  return std::sqrt(2.0 * std::log(1.0 / delta) / (static_cast<double>(t) - 1.0));
}

}  // namespace modeest
