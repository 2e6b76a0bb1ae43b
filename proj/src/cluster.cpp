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

#include "modeest/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "modeest/errors.hpp"
#include "modeest/oracle.hpp"
#include "modeest/rng.hpp"

namespace modeest {

LabeledDataset::LabeledDataset(std::vector<LabeledItem> items) : items_(std::move(items)) {
  if (items_.empty()) throw ConfigError("dataset has no items");
  std::unordered_set<std::string> ids;
  std::unordered_map<std::string, Element> label_ids;
  item_labels_.reserve(items_.size());
  for (const auto& item : items_) {
    if (!ids.insert(item.id).second) throw ConfigError(fmt::format("duplicate item id '{}'", item.id));
    auto [it, fresh] = label_ids.try_emplace(item.label, static_cast<Element>(labels_.size() + 1));
    if (fresh) {
      labels_.push_back(item.label);
      counts_.push_back(0);
    }
    item_labels_.push_back(it->second);
    ++counts_[it->second - 1];
  }
}

DiscreteDistribution LabeledDataset::induced_distribution() const {
  const double n = static_cast<double>(items_.size());
  std::vector<double> masses;
  masses.reserve(counts_.size());
  for (std::uint64_t c : counts_) masses.push_back(static_cast<double>(c) / n);
  return DiscreteDistribution(std::move(masses));
}

std::vector<Element> LabeledDataset::largest_labels() const {
  const std::uint64_t top = *std::max_element(counts_.begin(), counts_.end());
  std::vector<Element> out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] == top) out.push_back(static_cast<Element>(i + 1));
  }
  return out;
}

LabeledDataset load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open dataset '{}'", path));
  std::vector<LabeledItem> items;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (n == 1 && line == "item_id,label") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos || comma == 0 ||
        comma + 1 == line.size()) {
      throw ConfigError(fmt::format("{}:{}: expected 'item_id,label', got '{}'", path, n, line));
    }
    items.push_back({line.substr(0, comma), line.substr(comma + 1)});
  }
  if (items.empty()) throw ConfigError(fmt::format("{}: no items", path));
  return LabeledDataset(std::move(items));
}

LabeledDataset zipf_dataset(std::uint32_t labels, std::uint64_t largest, double exponent) {
  if (labels < 1 || largest < 1) throw ConfigError("zipf dataset needs at least one label and one item");
  std::vector<LabeledItem> items;
  std::uint64_t next_id = 0;
  for (std::uint32_t r = 1; r <= labels; ++r) {
    const auto size = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(static_cast<double>(largest) / std::pow(r, exponent))));
    const std::string label = fmt::format("c{:03}", r);
    for (std::uint64_t i = 0; i < size; ++i) items.push_back({fmt::format("item{:07}", next_id++), label});
  }
  return LabeledDataset(std::move(items));
}

ClusterResult find_largest_cluster(const LabeledDataset& data, const ClusterOptions& options) {
  auto labels = std::make_shared<const std::vector<Element>>(data.item_labels());
  Qm2Oracle oracle([labels, rng = Rng(options.seed)]() mutable {
    return (*labels)[rng.below(labels->size())];
  });
  EstimatorConfig config;
  config.delta = options.delta;
  config.k = options.k_bound.value_or(data.num_labels());
  // A single label still needs k >= 2 for the m < k invariant.
  config.k = std::max<std::uint32_t>(config.k, 2);
  config.max_rounds = options.max_rounds;

  ClusterResult result;
  result.trial = options.naive ? naive_qm2_run(oracle, config) : qm2_run(oracle, config);
  result.trial.seed = options.seed;
  if (!result.trial.capped) {
    const Element winner = result.trial.estimate_values.front();
    result.label = data.label_name(winner);
    const auto largest = data.largest_labels();
    result.trial.correct = std::find(largest.begin(), largest.end(), winner) != largest.end();
  }
  return result;
}

}  // namespace modeest
