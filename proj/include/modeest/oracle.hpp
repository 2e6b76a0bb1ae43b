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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modeest/distribution.hpp"
#include "modeest/rng.hpp"

namespace modeest {

/// Answer of a pairwise query: +1 when the two samples are equal, -1 otherwise.
enum class Answer : int { kSame = 1, kDifferent = -1 };

/// One metered oracle call, for CSV export.
struct QueryRecord {
  std::uint64_t step;   // 1-based ordinal of the call on its oracle
  std::string type;     // "reveal" or "same"
  std::string args;     // "t" or "i;j"
  int response;         // revealed element, or +1/-1
};

/// Append-only query log; attach one to an oracle to record its calls.
struct QueryLog {
  std::vector<QueryRecord> records;
};

/// Writes rows `trial_id,step,query_type,args,response`. Throws IoError.
void write_query_log_csv(const QueryLog& log, std::uint64_t trial_id,
                         const std::string& path);

/// Value-reveal oracle: the t-th query reveals X_t.
///
/// With noise_pe > 0 each revealed value is replaced, with probability p_e, by
/// an element drawn uniformly from all k support elements (the true value
/// included). The noise source is seeded independently of the stream, so the
/// underlying X_t are the same as in a noiseless run with the same stream.
class Qm1Oracle {
 public:
  explicit Qm1Oracle(SampleStream stream, double noise_pe = 0.0,
                     std::uint64_t noise_seed = 0);

  /// Reveals sample t. Queries are sequential: t must be queries-so-far + 1.
  Element reveal(std::uint64_t t);

  std::uint64_t query_count() const noexcept { return query_count_; }
  std::span<const Element> revealed() const noexcept { return revealed_; }
  std::uint32_t support_size() const noexcept {
    return stream_.distribution().support_size();
  }
  double noise_pe() const noexcept { return noise_pe_; }

  void attach_log(QueryLog* log) noexcept { log_ = log; }

 private:
  SampleStream stream_;
  double noise_pe_;
  Rng noise_;
  std::vector<Element> revealed_;
  std::uint64_t query_count_ = 0;
  QueryLog* log_ = nullptr;
};

/// Pairwise-similarity oracle over a fixed realized sample sequence.
///
/// Sample values are materialized lazily in index order, so X_i is the i-th
/// draw of the underlying source no matter which pairs are asked first, and
/// repeated or mirrored queries always agree.
class Qm2Oracle {
 public:
  /// Any source of i.i.d. support elements, called once per materialized index.
  using Sampler = std::function<Element()>;

  explicit Qm2Oracle(SampleStream stream);
  explicit Qm2Oracle(Sampler sampler);

  /// Metered query: are X_i and X_j equal? Requires i != j and i, j >= 1.
  Answer same(std::uint64_t i, std::uint64_t j);

  /// Simulator-side value of X_i. Not a query; used for diagnostics and for
  /// scoring results against the ground truth.
  Element peek(std::uint64_t i);

  std::uint64_t query_count() const noexcept { return query_count_; }
  std::uint64_t materialized() const noexcept { return values_.size(); }

  void attach_log(QueryLog* log) noexcept { log_ = log; }

 private:
  Element value(std::uint64_t i);

  Sampler sampler_;
  std::vector<Element> values_;  // values_[i - 1] = X_i
  std::uint64_t query_count_ = 0;
  QueryLog* log_ = nullptr;
};

/// Marginal of a noisy reveal: (1 - p_e) p_i + p_e / k.
DiscreteDistribution noisy_marginal(const DiscreteDistribution& d, double noise_pe);

}  // namespace modeest
