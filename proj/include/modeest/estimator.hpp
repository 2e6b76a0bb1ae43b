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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modeest/confidence.hpp"
#include "modeest/distribution.hpp"
#include "modeest/oracle.hpp"

namespace modeest {

/// Order in which a pairwise round walks the candidate bins.
enum class CandidateOrder {
  kByPhatDesc,     // most populated bin first, ties by creation
  kCreationOrder,  // oldest bin first
};

struct EstimatorConfig {
  double delta = 0.1;
  std::uint32_t k = 2;  // support-size parameter of the union bound
  std::uint32_t m = 1;  // size of the returned set (top-m)
  std::uint64_t max_rounds = 10'000'000;
  CandidateOrder candidate_order = CandidateOrder::kByPhatDesc;

  /// Throws ConfigError unless delta in (0,1), max_rounds >= 2, 1 <= m < k.
  void validate() const;
};

/// Outcome of one estimator run.
struct TrialResult {
  /// QM1: support elements. QM2: bin ids (1-based, in creation order).
  std::vector<Element> estimate;
  /// Support elements behind `estimate` (simulator-side for QM2).
  std::vector<Element> estimate_values;
  bool correct = false;  // filled in by the caller, who knows the truth
  std::uint64_t total_queries = 0;
  std::uint64_t rounds = 0;
  std::vector<std::uint32_t> per_round_queries;
  /// QM2 only: real bins still in the candidate set after each round.
  std::vector<std::uint32_t> per_round_active;
  bool capped = false;
  std::uint64_t seed = 0;
  /// QM2 only: support elements of every bin that was ever left out of the
  /// candidate set, ascending and without duplicates.
  std::vector<Element> ever_excluded;
};

/// Finds the m entries whose lower bounds all strictly exceed the upper bound
/// of every other entry. Only entries [0, contenders) may be returned; the
/// rest still constrain the winners. Result indices are sorted ascending.
///
/// If such a set exists it is the top m by lower bound, because every
/// non-member's lower bound is below its own upper bound.
std::optional<std::vector<std::size_t>> dominant_set(std::span<const Interval> intervals,
                                                     std::size_t contenders,
                                                     std::uint32_t m);

/// Indices i for which no entry l has lcb_l > ucb_i.
std::vector<std::size_t> surviving_set(std::span<const Interval> intervals);

/// Stopping rule over all k tracked elements: `ones[i]` is the hit count of
/// element i + 1 after t reveals. Returns the elements to stop with, if any.
std::optional<std::vector<Element>> qm1_stop_check(std::span<const std::uint64_t> ones,
                                                   std::uint64_t t,
                                                   const EstimatorConfig& config);

/// Value-reveal estimator: one reveal per round, all k elements tracked from
/// the start, stop when the dominance rule fires or max_rounds is reached.
/// Works unchanged over a noisy oracle.
TrialResult qm1_run(Qm1Oracle& oracle, const EstimatorConfig& config);

/// Candidate set over real bins plus the virtual unseen bin. `bin_ones[b]` is
/// the size of real bin b + 1; the virtual bin has id 0 and no hits. Returns
/// surviving ids, virtual first if it survives, then real bins ascending.
std::vector<std::uint32_t> qm2_candidate_set(std::span<const std::uint64_t> bin_ones,
                                             std::uint64_t t,
                                             const EstimatorConfig& config);

/// Pairwise estimator with candidate-set elimination.
TrialResult qm2_run(Qm2Oracle& oracle, const EstimatorConfig& config);

/// Pairwise baseline: every sample is compared with every bin, oldest first.
TrialResult naive_qm2_run(Qm2Oracle& oracle, const EstimatorConfig& config);

/// Per-trial CSV header and row: trial,seed,model,estimate,correct,
/// total_queries,rounds,capped. `estimate` lists support elements joined by ';'.
std::string trial_csv_header();
std::string trial_csv_row(std::uint64_t trial, const std::string& model, const TrialResult& r);

}  // namespace modeest
