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
#include <string>
#include <vector>

#include "modeest/distribution.hpp"
#include "modeest/estimator.hpp"

namespace modeest {

struct LabeledItem {
  std::string id;
  std::string label;
};

/// A finite set of items with opaque cluster labels. Labels are numbered
/// 1..L in order of first appearance; that number is the support element a
/// sampled item maps to.
class LabeledDataset {
 public:
  /// Throws ConfigError when empty or when an item id repeats.
  explicit LabeledDataset(std::vector<LabeledItem> items);

  std::size_t size() const noexcept { return items_.size(); }
  const std::vector<LabeledItem>& items() const noexcept { return items_; }
  std::uint32_t num_labels() const noexcept { return static_cast<std::uint32_t>(labels_.size()); }
  const std::string& label_name(Element label) const { return labels_.at(label - 1); }
  /// Label number of every item, in item order.
  const std::vector<Element>& item_labels() const noexcept { return item_labels_; }
  /// Item count per label number (index label - 1).
  const std::vector<std::uint64_t>& label_counts() const noexcept { return counts_; }

  /// Label distribution induced by drawing items uniformly: count / N.
  DiscreteDistribution induced_distribution() const;
  /// Label numbers of the largest clusters.
  std::vector<Element> largest_labels() const;

 private:
  std::vector<LabeledItem> items_;
  std::vector<std::string> labels_;
  std::vector<Element> item_labels_;
  std::vector<std::uint64_t> counts_;
};

/// Reads `item_id,label` lines; a first line `item_id,label` is taken as a
/// header. Blank lines are skipped. Throws IoError if unreadable and
/// ConfigError (with the line number) on malformed input.
LabeledDataset load_labels(const std::string& path);

/// Synthetic dataset with `labels` clusters of size round(largest / r^exponent)
/// for rank r = 1..labels (at least one item each). Labels are "c001", ...
LabeledDataset zipf_dataset(std::uint32_t labels, std::uint64_t largest, double exponent);

struct ClusterOptions {
  double delta = 0.05;
  std::uint64_t seed = 1;
  std::uint64_t max_rounds = 10'000'000;
  /// Support-size bound for the confidence radius; defaults to the number of
  /// distinct labels.
  std::optional<std::uint32_t> k_bound;
  bool naive = false;
};

struct ClusterResult {
  TrialResult trial;
  std::string label;  // empty when capped
};

/// Samples items uniformly with replacement, answers same-label queries, and
/// runs the pairwise estimator (or its naive variant). A tie for the largest
/// cluster cannot be separated, so such runs end capped at max_rounds.
ClusterResult find_largest_cluster(const LabeledDataset& data, const ClusterOptions& options);

}  // namespace modeest
