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
#include <span>
#include <string>
#include <vector>

#include "modeest/rng.hpp"

namespace modeest {

/// Support element, 1-based: valid values are 1..k.
using Element = std::uint32_t;

/// Absolute tolerance on the total mass of a distribution.
inline constexpr double kMassTolerance = 1e-9;

/// An immutable probability mass function over {1, ..., k}.
///
/// Zero masses are allowed and ties at the maximum are representable; the
/// estimators deal with non-unique modes by capping.
class DiscreteDistribution {
 public:
  /// Validates and takes ownership of `masses`. Throws ConfigError when the
  /// list is empty, any mass is outside [0, 1] or not finite, or the masses
  /// do not sum to 1 within kMassTolerance.
  explicit DiscreteDistribution(std::vector<double> masses);

  std::uint32_t support_size() const noexcept {
    return static_cast<std::uint32_t>(masses_.size());
  }
  std::span<const double> masses() const noexcept { return masses_; }
  double mass(Element i) const { return masses_.at(i - 1); }

  /// All elements attaining the maximal mass, ascending.
  std::vector<Element> mode_set() const;

  /// Elements sorted by descending mass, ties broken by index.
  std::vector<Element> by_mass_desc() const;

  /// Inverse-CDF lookup for u in [0, 1).
  Element quantile(double u) const;

 private:
  std::vector<double> masses_;
  std::vector<double> cdf_;
};

/// (p1, p2, c, ..., c) with c = (1 - p1 - p2) / (k - 2).
DiscreteDistribution uniform_tail(std::uint32_t k, double p1, double p2);

/// (p1, p2, p2 r, ..., p2 r^(k-2)) with the ratio r in (0, 1] chosen so the
/// tail sums to 1 - p1. r is found by bisection to 1e-12.
DiscreteDistribution geometric_tail(std::uint32_t k, double p1, double p2);

/// Ratio used by geometric_tail; exposed for tests.
double geometric_ratio(std::uint32_t k, double p1, double p2);

/// Buildable description of a distribution, as read from JSON or flags.
struct DistributionSpec {
  enum class Family { kMasses, kUniform, kGeometric };

  Family family = Family::kMasses;
  std::vector<double> masses;  // kMasses only
  std::uint32_t k = 0;         // families only
  double p1 = 0.0;
  double p2 = 0.0;

  static DistributionSpec from_masses(std::vector<double> masses);
  static DistributionSpec uniform(std::uint32_t k, double p1, double p2);
  static DistributionSpec geometric(std::uint32_t k, double p1, double p2);

  DiscreteDistribution build() const;
  std::string family_name() const;
};

/// An i.i.d. sample sequence X_1, X_2, ... drawn from a distribution.
/// Equal (distribution, seed) pairs produce identical sequences.
class SampleStream {
 public:
  SampleStream(DiscreteDistribution distribution, std::uint64_t seed)
      : distribution_(std::move(distribution)), seed_(seed), rng_(seed) {}

  Element draw() {
    ++drawn_;
    return distribution_.quantile(rng_.uniform());
  }

  const DiscreteDistribution& distribution() const noexcept {
    return distribution_;
  }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t drawn() const noexcept { return drawn_; }

 private:
  DiscreteDistribution distribution_;
  std::uint64_t seed_;
  Rng rng_;
  std::uint64_t drawn_ = 0;
};

}  // namespace modeest
