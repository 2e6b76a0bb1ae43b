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

#include "modeest/oracle.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "modeest/errors.hpp"

namespace modeest {

void write_query_log_csv(const QueryLog& log, std::uint64_t trial_id,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  out << "trial_id,step,query_type,args,response\n";
  for (const auto& r : log.records) {
    out << fmt::format("{},{},{},{},{}\n", trial_id, r.step, r.type, r.args, r.response);
  }
  if (!out) throw IoError(fmt::format("write to '{}' failed", path));
}

Qm1Oracle::Qm1Oracle(SampleStream stream, double noise_pe, std::uint64_t noise_seed)
    : stream_(std::move(stream)), noise_pe_(noise_pe), noise_(noise_seed) {
  if (!(noise_pe >= 0.0 && noise_pe <= 1.0)) {
    throw ConfigError(fmt::format("noise probability {} is outside [0, 1]", noise_pe));
  }
}

Element Qm1Oracle::reveal(std::uint64_t t) {
  if (t != query_count_ + 1) {
    throw ConfigError(fmt::format("reveal({}) out of order, next index is {}", t, query_count_ + 1));
  }
  Element x = stream_.draw();
  if (noise_pe_ > 0.0 && noise_.uniform() < noise_pe_) {
    x = static_cast<Element>(noise_.below(support_size()) + 1);
  }
  ++query_count_;
  revealed_.push_back(x);
  if (log_) log_->records.push_back({query_count_, "reveal", std::to_string(t), static_cast<int>(x)});
  return x;
}

Qm2Oracle::Qm2Oracle(SampleStream stream)
    : Qm2Oracle(Sampler([s = std::move(stream)]() mutable { return s.draw(); })) {}

Qm2Oracle::Qm2Oracle(Sampler sampler) : sampler_(std::move(sampler)) {}

Element Qm2Oracle::value(std::uint64_t i) {
  while (values_.size() < i) values_.push_back(sampler_());
  return values_[i - 1];
}

Answer Qm2Oracle::same(std::uint64_t i, std::uint64_t j) {
  if (i == 0 || j == 0) throw ConfigError("sample indices are 1-based");
  if (i == j) throw ConfigError(fmt::format("same({0}, {0}) compares a sample with itself", i));
  const Answer a = value(i) == value(j) ? Answer::kSame : Answer::kDifferent;
  ++query_count_;
  if (log_) {
    log_->records.push_back({query_count_, "same", fmt::format("{};{}", i, j), static_cast<int>(a)});
  }
  return a;
}

Element Qm2Oracle::peek(std::uint64_t i) {
  if (i == 0) throw ConfigError("sample indices are 1-based");
  return value(i);
}

DiscreteDistribution noisy_marginal(const DiscreteDistribution& d, double noise_pe) {
  const double k = d.support_size();
  std::vector<double> masses;
  masses.reserve(d.support_size());
  for (double p : d.masses()) masses.push_back((1.0 - noise_pe) * p + noise_pe / k);
  return DiscreteDistribution(std::move(masses));
}

}  // namespace modeest
