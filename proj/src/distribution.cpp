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

#include "modeest/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "modeest/errors.hpp"

namespace modeest {

DiscreteDistribution::DiscreteDistribution(std::vector<double> masses)
    : masses_(std::move(masses)) {
  if (masses_.empty()) throw ConfigError("distribution needs at least one mass");
  double total = 0.0;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    const double p = masses_[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw ConfigError(fmt::format("mass {} of element {} is outside [0, 1]", p, i + 1));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw ConfigError(fmt::format("masses sum to {}, expected 1", total));
  }
  cdf_.resize(masses_.size());
  std::partial_sum(masses_.begin(), masses_.end(), cdf_.begin());
}

std::vector<Element> DiscreteDistribution::mode_set() const {
  const double top = *std::max_element(masses_.begin(), masses_.end());
  std::vector<Element> modes;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (masses_[i] == top) modes.push_back(static_cast<Element>(i + 1));
  }
  return modes;
}

std::vector<Element> DiscreteDistribution::by_mass_desc() const {
  std::vector<Element> order(masses_.size());
  std::iota(order.begin(), order.end(), Element{1});
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    return masses_[a - 1] > masses_[b - 1];
  });
  return order;
}

Element DiscreteDistribution::quantile(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) {
    // Rounding left the last cumulative value below u; take the last element
    // that carries mass.
    std::size_t i = masses_.size();
    while (i > 1 && masses_[i - 1] == 0.0) --i;
    return static_cast<Element>(i);
  }
  return static_cast<Element>(it - cdf_.begin() + 1);
}

DiscreteDistribution uniform_tail(std::uint32_t k, double p1, double p2) {
  if (k < 3) throw ConfigError("uniform tail needs k >= 3");
  if (!(p1 > p2) || !(p2 >= 0.0) || !(p1 + p2 < 1.0)) {
    throw ConfigError(fmt::format("uniform tail needs p1 > p2 >= 0 and p1 + p2 < 1 (p1={}, p2={})", p1, p2));
  }
  const double c = (1.0 - p1 - p2) / static_cast<double>(k - 2);
  if (c > p2) {
    throw ConfigError(fmt::format("uniform tail mass {} exceeds p2={} for k={}", c, p2, k));
  }
  std::vector<double> masses(k, c);
  masses[0] = p1;
  masses[1] = p2;
  return DiscreteDistribution(std::move(masses));
}

namespace {

void check_geometric(std::uint32_t k, double p1, double p2) {
  if (k < 2) throw ConfigError("geometric tail needs k >= 2");
  if (!(p1 > p2) || !(p2 > 0.0) || !(p1 < 1.0)) {
    throw ConfigError(fmt::format("geometric tail needs 1 > p1 > p2 > 0 (p1={}, p2={})", p1, p2));
  }
  const double rest = 1.0 - p1;
  if (k == 2) {
    if (std::abs(p2 - rest) > kMassTolerance) {
      throw ConfigError(fmt::format("with k=2, p2 must equal 1 - p1 = {}", rest));
    }
    return;
  }
  if (!(p2 < rest) || rest > static_cast<double>(k - 1) * p2 + kMassTolerance) {
    throw ConfigError(fmt::format(
        "no geometric ratio in (0, 1] makes the tail from p2={} sum to {} over k={}", p2, rest, k));
  }
}

// p2 * (1 + r + ... + r^(k-2)), increasing in r.
double geometric_tail_sum(std::uint32_t k, double p2, double r) {
  double term = p2, sum = 0.0;
  for (std::uint32_t j = 0; j + 1 < k; ++j) {
    sum += term;
    term *= r;
  }
  return sum;
}

}  // namespace

double geometric_ratio(std::uint32_t k, double p1, double p2) {
  check_geometric(k, p1, p2);
  if (k == 2) return 1.0;
  const double target = 1.0 - p1;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (geometric_tail_sum(k, p2, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

DiscreteDistribution geometric_tail(std::uint32_t k, double p1, double p2) {
  const double r = geometric_ratio(k, p1, p2);
  std::vector<double> masses(k);
  masses[0] = p1;
  masses[1] = k == 2 ? 1.0 - p1 : p2;
  if (k > 2) {
    double term = p2, tail = 0.0;
    for (std::uint32_t i = 2; i < k; ++i) {
      term *= r;
      masses[i] = term;
      tail += term;
    }
    // Elements 3..k must sum to 1 - p1 - p2 exactly, not just to 1e-12.
    const double scale = (1.0 - p1 - p2) / tail;
    for (std::uint32_t i = 2; i < k; ++i) masses[i] *= scale;
  }
  return DiscreteDistribution(std::move(masses));
}

DistributionSpec DistributionSpec::from_masses(std::vector<double> masses) {
  DistributionSpec spec;
  spec.family = Family::kMasses;
  spec.masses = std::move(masses);
  spec.k = static_cast<std::uint32_t>(spec.masses.size());
  return spec;
}

DistributionSpec DistributionSpec::uniform(std::uint32_t k, double p1, double p2) {
  DistributionSpec spec;
  spec.family = Family::kUniform;
  spec.k = k;
  spec.p1 = p1;
  spec.p2 = p2;
  return spec;
}

DistributionSpec DistributionSpec::geometric(std::uint32_t k, double p1, double p2) {
  DistributionSpec spec = uniform(k, p1, p2);
  spec.family = Family::kGeometric;
  return spec;
}

DiscreteDistribution DistributionSpec::build() const {
  switch (family) {
    case Family::kMasses:
      return DiscreteDistribution(masses);
    case Family::kUniform:
      return uniform_tail(k, p1, p2);
    case Family::kGeometric:
      return geometric_tail(k, p1, p2);
  }
  throw ConfigError("unknown distribution family");
}

std::string DistributionSpec::family_name() const {
  switch (family) {
    case Family::kMasses:
      return "masses";
    case Family::kUniform:
      return "uniform";
    case Family::kGeometric:
      return "geometric";
  }
  return "unknown";
}

}  // namespace modeest
