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

#include <string>

#include "json.hpp"
#include "modeest/cluster.hpp"
#include "modeest/complexity.hpp"
#include "modeest/distribution.hpp"
#include "modeest/estimator.hpp"
#include "modeest/harness.hpp"

namespace modeest {

using Json = nlohmann::ordered_json;

// Distribution: {"masses": [...]} or {"family": "uniform"|"geometric", "k", "p1", "p2"}.
Json to_json(const DistributionSpec& spec);
DistributionSpec distribution_from_json(const Json& j);

Json to_json(const TrialResult& r);
Json to_json(const BoundReport& r);
/// {"label", "total_queries", "rounds", "capped"}; label is null when capped.
Json to_json(const ClusterResult& r);
/// Sweep-row fields plus mean_rounds and mode_excluded_trials; no per-trial data.
Json to_json(const AggregateResult& r);

/// ExperimentConfig field names map one-to-one onto JSON keys. Missing keys
/// keep their defaults; unknown keys are rejected.
Json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::string& path);

std::string to_string(CandidateOrder order);
CandidateOrder parse_candidate_order(const std::string& name);

}  // namespace modeest
