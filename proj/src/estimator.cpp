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

#include "modeest/estimator.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "modeest/errors.hpp"

namespace modeest {

void EstimatorConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError(fmt::format("delta {} is outside (0, 1)", delta));
  if (max_rounds < 2) throw ConfigError("max_rounds must be at least 2");
  if (m < 1 || m >= k) throw ConfigError(fmt::format("need 1 <= m < k, got m={} k={}", m, k));
}

std::optional<std::vector<std::size_t>> dominant_set(std::span<const Interval> intervals,
                                                     std::size_t contenders,
                                                     std::uint32_t m) {
  if (m == 0 || intervals.size() <= m) return std::nullopt;
  std::vector<std::size_t> order(intervals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto by_lcb = [&](std::size_t a, std::size_t b) {
    return intervals[a].lcb > intervals[b].lcb || (intervals[a].lcb == intervals[b].lcb && a < b);
  };
  std::nth_element(order.begin(), order.begin() + (m - 1), order.end(), by_lcb);
  // order[0..m) now holds the m largest lower bounds.
  double weakest = intervals[order[0]].lcb;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (order[i] >= contenders) return std::nullopt;
    weakest = std::min(weakest, intervals[order[i]].lcb);
  }
  for (std::size_t i = m; i < order.size(); ++i) {
    if (!(weakest > intervals[order[i]].ucb)) return std::nullopt;
  }
  std::vector<std::size_t> winners(order.begin(), order.begin() + m);
  std::sort(winners.begin(), winners.end());
  return winners;
}

std::vector<std::size_t> surviving_set(std::span<const Interval> intervals) {
  // For each i the strongest competitor is the best lcb among the others.
  std::size_t best = 0;
  double top = -kInfiniteRadius, second = -kInfiniteRadius;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const double l = intervals[i].lcb;
    if (l > top) {
      second = top;
      top = l;
      best = i;
    } else if (l > second) {
      second = l;
    }
  }
  std::vector<std::size_t> alive;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const double rival = i == best ? second : top;
    if (!(rival > intervals[i].ucb)) alive.push_back(i);
  }
  return alive;
}

std::optional<std::vector<Element>> qm1_stop_check(std::span<const std::uint64_t> ones,
                                                   std::uint64_t t,
                                                   const EstimatorConfig& config) {
  if (t < 2) return std::nullopt;
  const double log_t = log_term(t, config.k, config.delta);
  std::vector<Interval> intervals;
  intervals.reserve(ones.size());
  for (std::uint64_t s : ones) intervals.push_back(raw_interval_with_log(s, t, log_t));
  auto winners = dominant_set(intervals, intervals.size(), config.m);
  if (!winners) return std::nullopt;
  std::vector<Element> elements;
  for (std::size_t i : *winners) elements.push_back(static_cast<Element>(i + 1));
  return elements;
}

TrialResult qm1_run(Qm1Oracle& oracle, const EstimatorConfig& config) {
  config.validate();
  TrialResult result;
  std::vector<std::uint64_t> ones(config.k, 0);
  for (std::uint64_t t = 1; t <= config.max_rounds; ++t) {
    const Element x = oracle.reveal(t);
    if (x > config.k) {
      throw ConfigError(fmt::format("revealed element {} exceeds the support parameter k={}", x, config.k));
    }
    ++ones[x - 1];
    ++result.total_queries;
    result.rounds = t;
    result.per_round_queries.push_back(1);
    if (auto stop = qm1_stop_check(ones, t, config)) {
      result.estimate = *stop;
      result.estimate_values = *stop;
      return result;
    }
  }
  result.capped = true;
  return result;
}

std::vector<std::uint32_t> qm2_candidate_set(std::span<const std::uint64_t> bin_ones,
                                             std::uint64_t t,
                                             const EstimatorConfig& config) {
  std::vector<Interval> intervals;
  intervals.reserve(bin_ones.size() + 1);
  const double log_t = t >= 2 ? log_term(t, config.k, config.delta) : 0.0;
  intervals.push_back(raw_interval_with_log(0, t, log_t));
  for (std::uint64_t s : bin_ones) intervals.push_back(raw_interval_with_log(s, t, log_t));
  std::vector<std::uint32_t> ids;
  for (std::size_t i : surviving_set(intervals)) ids.push_back(static_cast<std::uint32_t>(i));
  return ids;
}

namespace {

struct Bin {
  std::uint64_t representative;  // lowest sample index in the bin
  std::uint64_t ones;
  Element value;                 // simulator-side, never used for decisions
  bool excluded_once = false;
};

// Intervals depend only on (ones, t); bins created late share small counts, so
// memoize per count within a round.
class IntervalCache {
 public:
  void reset(std::uint64_t t, const EstimatorConfig& config) {
    t_ = t;
    log_t_ = t >= 2 ? log_term(t, config.k, config.delta) : 0.0;
    ++epoch_;
  }
  Interval at(std::uint64_t ones) {
    if (ones >= stamp_.size()) {
      stamp_.resize(ones + 1, 0);
      values_.resize(ones + 1);
    }
    if (stamp_[ones] != epoch_) {
      values_[ones] = raw_interval_with_log(ones, t_, log_t_);
      stamp_[ones] = epoch_;
    }
    return values_[ones];
  }

 private:
  std::uint64_t t_ = 0;
  double log_t_ = 0.0;
  std::uint64_t epoch_ = 0;
  std::vector<std::uint64_t> stamp_;
  std::vector<Interval> values_;
};

TrialResult run_pairwise(Qm2Oracle& oracle, const EstimatorConfig& config, bool eliminate) {
  config.validate();
  TrialResult result;
  std::vector<Bin> bins;
  std::vector<std::uint32_t> candidates;  // 0-based real bins to query next round
  std::vector<Interval> intervals;
  std::set<Element> excluded_values;
  IntervalCache cache;

  for (std::uint64_t t = 1; t <= config.max_rounds; ++t) {
    if (config.candidate_order == CandidateOrder::kByPhatDesc) {
      std::stable_sort(candidates.begin(), candidates.end(), [&](std::uint32_t a, std::uint32_t b) {
        return bins[a].ones > bins[b].ones;
      });
    }
    std::uint32_t queries = 0;
    bool placed = false;
    for (std::uint32_t b : candidates) {
      ++queries;
      if (oracle.same(t, bins[b].representative) == Answer::kSame) {
        ++bins[b].ones;
        placed = true;
        break;
      }
    }
    if (!placed) bins.push_back({t, 1, oracle.peek(t)});
    result.total_queries += queries;
    result.rounds = t;
    result.per_round_queries.push_back(queries);

    // Real bins first, the virtual unseen bin last.
    cache.reset(t, config);
    intervals.clear();
    for (const Bin& bin : bins) intervals.push_back(cache.at(bin.ones));
    intervals.push_back(cache.at(0));

    candidates.clear();
    if (eliminate) {
      for (std::size_t i : surviving_set(intervals)) {
        if (i < bins.size()) candidates.push_back(static_cast<std::uint32_t>(i));
      }
      std::size_t next = 0;
      for (std::uint32_t b = 0; b < bins.size(); ++b) {
        if (next < candidates.size() && candidates[next] == b) {
          ++next;
        } else if (!bins[b].excluded_once) {
          bins[b].excluded_once = true;
          excluded_values.insert(bins[b].value);
        }
      }
    } else {
      candidates.resize(bins.size());
      std::iota(candidates.begin(), candidates.end(), std::uint32_t{0});
    }
    result.per_round_active.push_back(static_cast<std::uint32_t>(candidates.size()));

    // Checking against every bin is equivalent to checking against the fresh
    // candidate set: the best-lcb bin always survives and dominates whatever
    // was eliminated.
    auto winners = dominant_set(intervals, bins.size(), config.m);
    if (winners) {
      for (std::size_t i : *winners) {
        result.estimate.push_back(static_cast<Element>(i + 1));
        result.estimate_values.push_back(bins[i].value);
      }
      break;
    }
  }
  result.capped = result.estimate.empty();
  result.ever_excluded.assign(excluded_values.begin(), excluded_values.end());
  return result;
}

}  // namespace

TrialResult qm2_run(Qm2Oracle& oracle, const EstimatorConfig& config) {
  return run_pairwise(oracle, config, true);
}

TrialResult naive_qm2_run(Qm2Oracle& oracle, const EstimatorConfig& config) {
  EstimatorConfig naive = config;
  naive.candidate_order = CandidateOrder::kCreationOrder;
  return run_pairwise(oracle, naive, false);
}

std::string trial_csv_header() {
  return "trial,seed,model,estimate,correct,total_queries,rounds,capped";
}

std::string trial_csv_row(std::uint64_t trial, const std::string& model, const TrialResult& r) {
  std::vector<Element> values = r.estimate_values;
  std::sort(values.begin(), values.end());
  return fmt::format("{},{},{},{},{},{},{},{}", trial, r.seed, model, fmt::join(values, ";"),
                     r.correct ? 1 : 0, r.total_queries, r.rounds, r.capped ? 1 : 0);
}

}  // namespace modeest
