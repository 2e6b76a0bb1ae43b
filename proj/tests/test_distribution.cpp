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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "modeest/distribution.hpp"
#include "modeest/errors.hpp"

using namespace modeest;

namespace {

double total(const DiscreteDistribution& d) {
  const auto& m = d.masses();
  return std::accumulate(m.begin(), m.end(), 0.0);
}

}  // namespace

TEST(Distribution, RejectsBadMasses) {
  EXPECT_THROW(DiscreteDistribution({}), ConfigError);
  EXPECT_THROW(DiscreteDistribution({0.5, 0.6}), ConfigError);
  EXPECT_THROW(DiscreteDistribution({1.2, -0.2}), ConfigError);
  EXPECT_THROW(DiscreteDistribution({0.5, NAN, 0.5}), ConfigError);
  EXPECT_NO_THROW(DiscreteDistribution({0.5, 0.5 + 1e-12}));
}

TEST(Distribution, ModeSetAndOrder) {
  DiscreteDistribution d({0.2, 0.5, 0.3});
  EXPECT_EQ(d.support_size(), 3u);
  EXPECT_EQ(d.mode_set(), std::vector<Element>{2});
  EXPECT_EQ(d.by_mass_desc(), (std::vector<Element>{2, 3, 1}));
  DiscreteDistribution tie({0.4, 0.4, 0.2});
  EXPECT_EQ(tie.mode_set(), (std::vector<Element>{1, 2}));
}

TEST(Distribution, QuantileMapsIntervals) {
  DiscreteDistribution d({0.5, 0.3, 0.2});
  EXPECT_EQ(d.quantile(0.0), 1u);
  EXPECT_EQ(d.quantile(0.4999), 1u);
  EXPECT_EQ(d.quantile(0.5), 2u);
  EXPECT_EQ(d.quantile(0.7999), 2u);
  EXPECT_EQ(d.quantile(0.81), 3u);
  EXPECT_EQ(d.quantile(std::nextafter(1.0, 0.0)), 3u);
  // A zero-mass last element is never returned.
  DiscreteDistribution z({0.5, 0.5, 0.0});
  EXPECT_EQ(z.quantile(std::nextafter(1.0, 0.0)), 2u);
}

TEST(Distribution, UniformTail) {
  auto d = uniform_tail(5120, 0.5, 0.292);
  EXPECT_EQ(d.support_size(), 5120u);
  EXPECT_NEAR(d.mass(3), 0.208 / 5118, 1e-15);
  EXPECT_NEAR(d.mass(5120), 4.064087534193044e-05, 1e-15);
  EXPECT_NEAR(total(d), 1.0, 1e-9);
  EXPECT_EQ(d.mode_set(), std::vector<Element>{1});

  EXPECT_THROW(uniform_tail(2, 0.5, 0.3), ConfigError);
  EXPECT_THROW(uniform_tail(10, 0.3, 0.3), ConfigError);
  EXPECT_THROW(uniform_tail(10, 0.6, 0.45), ConfigError);
  // Tail mass per element may not exceed p2.
  EXPECT_THROW(uniform_tail(3, 0.4, 0.1), ConfigError);
}

TEST(Distribution, GeometricTailRatioK3) {
  EXPECT_NEAR(geometric_ratio(3, 0.5, 0.292), 0.7123287671232877, 1e-10);
  auto d = geometric_tail(3, 0.5, 0.292);
  EXPECT_NEAR(d.mass(3), 0.208, 1e-12);
}

TEST(Distribution, GeometricTailSumsAndDecreases) {
  for (std::uint32_t k : {3u, 10u, 64u, 1000u}) {
    for (double p1 : {0.3, 0.45, 0.6}) {
      const double p2 = p1 - 0.208;
      if (1.0 - p1 - p2 > (k - 2) * p2) continue;
      auto d = geometric_tail(k, p1, p2);
      EXPECT_NEAR(total(d), 1.0, 1e-12) << k << " " << p1;
      EXPECT_DOUBLE_EQ(d.mass(1), p1);
      EXPECT_DOUBLE_EQ(d.mass(2), p2);
      for (Element i = 3; i <= k; ++i) EXPECT_LE(d.mass(i), d.mass(i - 1) * (1 + 1e-12));
    }
  }
}

TEST(Distribution, GeometricTailInfeasible) {
  EXPECT_THROW(geometric_tail(64, 0.65, 0.442), ConfigError);
  EXPECT_THROW(geometric_tail(2, 0.5, 0.3), ConfigError);
  EXPECT_NO_THROW(geometric_tail(2, 0.6, 0.4));
}

TEST(Distribution, SpecBuildsFamilies) {
  EXPECT_EQ(DistributionSpec::uniform(64, 0.5, 0.292).build().support_size(), 64u);
  EXPECT_EQ(DistributionSpec::geometric(64, 0.5, 0.292).family_name(), "geometric");
  EXPECT_EQ(DistributionSpec::from_masses({0.5, 0.5}).family_name(), "masses");
}

TEST(SampleStream, SameSeedSameSequence) {
  DiscreteDistribution d({0.5, 0.3, 0.2});
  SampleStream a(d, 42), b(d, 42), c(d, 43);
  std::vector<Element> xa, xb, xc;
  for (int i = 0; i < 200; ++i) {
    xa.push_back(a.draw());
    xb.push_back(b.draw());
    xc.push_back(c.draw());
  }
  EXPECT_EQ(xa, xb);
  EXPECT_NE(xa, xc);
  EXPECT_EQ(a.drawn(), 200u);
}

TEST(SampleStream, EmpiricalFrequenciesMatchMasses) {
  DiscreteDistribution d({0.5, 0.3, 0.2});
  SampleStream s(d, 7);
  std::vector<int> counts(4, 0);
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++counts[s.draw()];
  for (Element e = 1; e <= 3; ++e) {
    const double p = d.mass(e);
    EXPECT_NEAR(counts[e] / double(n), p, 4 * std::sqrt(p * (1 - p) / n));
  }
}

TEST(SampleStream, PointMassIsConstant) {
  SampleStream s(DiscreteDistribution({1.0, 0.0}), 3);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(s.draw(), 1u);
}
