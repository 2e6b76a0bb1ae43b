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
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "modeest/errors.hpp"
#include "modeest/oracle.hpp"

using namespace modeest;

namespace {

const DiscreteDistribution kP({0.5, 0.3, 0.2});

}  // namespace

TEST(Qm1Oracle, RevealsStreamInOrder) {
  SampleStream reference(kP, 11);
  Qm1Oracle oracle(SampleStream(kP, 11));
  for (std::uint64_t t = 1; t <= 50; ++t) EXPECT_EQ(oracle.reveal(t), reference.draw());
  EXPECT_EQ(oracle.query_count(), 50u);
  EXPECT_EQ(oracle.revealed().size(), 50u);
}

TEST(Qm1Oracle, RejectsOutOfOrder) {
  Qm1Oracle oracle(SampleStream(kP, 1));
  EXPECT_THROW(oracle.reveal(2), std::logic_error);
  oracle.reveal(1);
  EXPECT_THROW(oracle.reveal(1), std::logic_error);
  EXPECT_EQ(oracle.query_count(), 1u);
}

TEST(Qm1Oracle, NoiseZeroMatchesNoiseless) {
  Qm1Oracle a(SampleStream(kP, 5));
  Qm1Oracle b(SampleStream(kP, 5), 0.0, 99);
  for (std::uint64_t t = 1; t <= 100; ++t) EXPECT_EQ(a.reveal(t), b.reveal(t));
}

TEST(Qm1Oracle, NoiseOneIsUniform) {
  Qm1Oracle oracle(SampleStream(DiscreteDistribution({0.7, 0.1, 0.1, 0.1}), 5), 1.0, 17);
  std::vector<int> counts(5, 0);
  const int n = 100000;
  for (int t = 1; t <= n; ++t) ++counts[oracle.reveal(t)];
  for (Element e = 1; e <= 4; ++e) EXPECT_NEAR(counts[e] / double(n), 0.25, 0.01);
}

TEST(Qm1Oracle, NoiseOnBalancedPairKeepsHalf) {
  Qm1Oracle oracle(SampleStream(DiscreteDistribution({0.5, 0.5}), 2), 0.2, 3);
  int ones = 0;
  const int n = 100000;
  for (int t = 1; t <= n; ++t) ones += oracle.reveal(t) == 1;
  EXPECT_NEAR(ones / double(n), 0.5, 0.01);
}

TEST(Qm1Oracle, NoisyMarginalMatchesFormula) {
  const double pe = 0.3;
  auto marginal = noisy_marginal(kP, pe);
  EXPECT_NEAR(marginal.mass(1), 0.7 * 0.5 + 0.1, 1e-15);
  EXPECT_NEAR(marginal.mass(2), 0.7 * 0.3 + 0.1, 1e-15);
  EXPECT_NEAR(marginal.mass(3), 0.7 * 0.2 + 0.1, 1e-15);

  Qm1Oracle oracle(SampleStream(kP, 8), pe, 9);
  std::vector<int> counts(4, 0);
  const int n = 1000000;
  for (int t = 1; t <= n; ++t) ++counts[oracle.reveal(t)];
  for (Element e = 1; e <= 3; ++e) {
    const double p = marginal.mass(e);
    EXPECT_LT(std::abs(counts[e] / double(n) - p), 5 * std::sqrt(p * (1 - p) / n));
  }
}

TEST(Qm1Oracle, RejectsBadNoise) {
  EXPECT_THROW(Qm1Oracle(SampleStream(kP, 1), -0.1), ConfigError);
  EXPECT_THROW(Qm1Oracle(SampleStream(kP, 1), 1.1), ConfigError);
  EXPECT_NO_THROW(Qm1Oracle(SampleStream(kP, 1), 1.0));
}

TEST(Qm2Oracle, AnswersEqualityOfHiddenValues) {
  SampleStream reference(kP, 21);
  std::vector<Element> x;
  for (int i = 0; i < 30; ++i) x.push_back(reference.draw());
  Qm2Oracle oracle(SampleStream(kP, 21));
  for (std::uint64_t i = 1; i <= 30; ++i) {
    for (std::uint64_t j = 1; j <= 30; ++j) {
      if (i == j) continue;
      const Answer expected = x[i - 1] == x[j - 1] ? Answer::kSame : Answer::kDifferent;
      ASSERT_EQ(oracle.same(i, j), expected);
    }
  }
  EXPECT_EQ(oracle.query_count(), 30u * 29u);
}

TEST(Qm2Oracle, SymmetricAndTransitive) {
  Qm2Oracle oracle(SampleStream(DiscreteDistribution({0.4, 0.3, 0.2, 0.1}), 3));
  const std::uint64_t n = 25;
  for (std::uint64_t i = 1; i <= n; ++i) {
    for (std::uint64_t j = 1; j <= n; ++j) {
      if (i == j) continue;
      ASSERT_EQ(oracle.same(i, j), oracle.same(j, i));
      for (std::uint64_t l = 1; l <= n; ++l) {
        if (l == i || l == j) continue;
        if (oracle.same(i, j) == Answer::kSame && oracle.same(j, l) == Answer::kSame) {
          ASSERT_EQ(oracle.same(i, l), Answer::kSame);
        }
      }
    }
  }
}

TEST(Qm2Oracle, ValuesIndependentOfQueryOrder) {
  // Asking about a late index first still sees the same realization.
  Qm2Oracle forward(SampleStream(kP, 4));
  Qm2Oracle backward(SampleStream(kP, 4));
  std::vector<Answer> f, b;
  for (std::uint64_t i = 2; i <= 40; ++i) f.push_back(forward.same(1, i));
  for (std::uint64_t i = 40; i >= 2; --i) b.push_back(backward.same(i, 1));
  std::reverse(b.begin(), b.end());
  EXPECT_EQ(f, b);
}

TEST(Qm2Oracle, RejectsSelfAndZero) {
  Qm2Oracle oracle(SampleStream(kP, 1));
  EXPECT_THROW(oracle.same(3, 3), std::logic_error);
  EXPECT_THROW(oracle.same(0, 1), std::logic_error);
  EXPECT_EQ(oracle.query_count(), 0u);
}

TEST(Qm2Oracle, PeekIsNotMetered) {
  Qm2Oracle oracle(SampleStream(kP, 1));
  oracle.peek(10);
  EXPECT_EQ(oracle.query_count(), 0u);
  EXPECT_EQ(oracle.materialized(), 10u);
}

TEST(Qm2Oracle, SamplerConstructor) {
  int calls = 0;
  Qm2Oracle oracle([&calls]() -> Element { return static_cast<Element>(++calls % 2 + 1); });
  EXPECT_EQ(oracle.same(1, 3), Answer::kSame);
  EXPECT_EQ(oracle.same(1, 2), Answer::kDifferent);
  EXPECT_EQ(calls, 3);
}

TEST(QueryLog, RecordsEveryMeteredCall) {
  QueryLog log;
  Qm2Oracle oracle(SampleStream(kP, 1));
  oracle.attach_log(&log);
  oracle.same(1, 2);
  oracle.same(2, 3);
  oracle.peek(5);
  ASSERT_EQ(log.records.size(), 2u);
  EXPECT_EQ(log.records[1].step, 2u);
  EXPECT_EQ(log.records[1].type, "same");
  EXPECT_EQ(log.records[1].args, "2;3");

  const std::string path = ::testing::TempDir() + "qlog.csv";
  write_query_log_csv(log, 7, path);
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "trial_id,step,query_type,args,response");
  EXPECT_EQ(row.rfind("7,1,same,1;2,", 0), 0u);
  std::remove(path.c_str());
}

TEST(QueryLog, UnwritablePathIsIoError) {
  QueryLog log;
  EXPECT_THROW(write_query_log_csv(log, 0, "/nonexistent-dir/q.csv"), IoError);
}
