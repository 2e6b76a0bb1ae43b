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

#include "modeest/serialize.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "modeest/errors.hpp"

namespace modeest {
namespace {

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <typename T>
T get_field(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("config field '{}': {}", key, e.what()));
  }
}

void reject_unknown(const Json& j, const std::set<std::string>& known, const char* where) {
  if (!j.is_object()) throw ConfigError(fmt::format("{} must be a JSON object", where));
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError(fmt::format("unknown {} field '{}'", where, key));
  }
}

}  // namespace

std::string to_string(CandidateOrder order) {
  return order == CandidateOrder::kByPhatDesc ? "by_phat_desc" : "creation_order";
}

CandidateOrder parse_candidate_order(const std::string& name) {
  if (name == "by_phat_desc") return CandidateOrder::kByPhatDesc;
  if (name == "creation_order") return CandidateOrder::kCreationOrder;
  throw ConfigError(fmt::format("unknown candidate order '{}'", name));
}

Json to_json(const DistributionSpec& spec) {
  if (spec.family == DistributionSpec::Family::kMasses) return Json{{"masses", spec.masses}};
  return Json{{"family", spec.family_name()}, {"k", spec.k}, {"p1", spec.p1}, {"p2", spec.p2}};
}

DistributionSpec distribution_from_json(const Json& j) {
  if (j.is_object() && j.contains("masses")) {
    reject_unknown(j, {"masses"}, "distribution");
    return DistributionSpec::from_masses(get_field<std::vector<double>>(j, "masses"));
  }
  reject_unknown(j, {"family", "k", "p1", "p2"}, "distribution");
  const auto family = get_field<std::string>(j, "family");
  const auto k = get_field<std::uint32_t>(j, "k");
  const auto p1 = get_field<double>(j, "p1");
  const auto p2 = get_field<double>(j, "p2");
  if (family == "uniform") return DistributionSpec::uniform(k, p1, p2);
  if (family == "geometric") return DistributionSpec::geometric(k, p1, p2);
  throw ConfigError(fmt::format("unknown distribution family '{}'", family));
}

Json to_json(const TrialResult& r) {
  return Json{{"estimate", r.estimate},
              {"estimate_values", r.estimate_values},
              {"correct", r.correct},
              {"total_queries", r.total_queries},
              {"rounds", r.rounds},
              {"capped", r.capped},
              {"seed", r.seed},
              {"per_round_queries", r.per_round_queries}};
}

Json to_json(const BoundReport& r) {
  return Json{{"model", to_string(r.model)},
              {"upper", optional_number(r.upper)},
              {"lower", optional_number(r.lower)},
              {"masses", r.masses},
              {"k", r.k},
              {"delta", r.delta},
              {"m", r.m},
              {"valid", r.valid},
              {"reason", r.reason}};
}

Json to_json(const ClusterResult& r) {
  return Json{{"label", r.trial.capped ? Json(nullptr) : Json(r.label)},
              {"total_queries", r.trial.total_queries},
              {"rounds", r.trial.rounds},
              {"capped", r.trial.capped}};
}

Json to_json(const AggregateResult& r) {
  return Json{{"model", r.model},
              {"k", r.k},
              {"p1", r.p1},
              {"p2", r.p2},
              {"delta", r.delta},
              {"trials", r.trials},
              {"mean_queries", finite_or_null(r.mean_queries)},
              {"std_queries", r.std_queries},
              {"success_rate", r.success_rate},
              {"capped_trials", r.capped_trials},
              {"upper_bound", optional_number(r.upper_bound)},
              {"lower_bound", optional_number(r.lower_bound)},
              {"frac_exceeding_upper", optional_number(r.frac_exceeding_upper)},
              {"mean_rounds", r.mean_rounds},
              {"mode_excluded_trials", r.mode_excluded_trials}};
}

Json to_json(const ExperimentConfig& c) {
  Json j{{"model", to_string(c.model)},
         {"distribution", to_json(c.distribution)},
         {"delta", c.delta},
         {"trials", c.trials},
         {"master_seed", c.master_seed}};
  j["k_param"] = c.k_param ? Json(*c.k_param) : Json(nullptr);
  if (c.sweep) {
    j["sweep"] = Json{{"start", c.sweep->start}, {"stop", c.sweep->stop}, {"step", c.sweep->step}, {"gap", c.sweep->gap}};
  } else {
    j["sweep"] = nullptr;
  }
  j["p_e"] = c.p_e;
  j["m"] = c.m;
  j["max_rounds"] = c.max_rounds;
  j["candidate_order"] = to_string(c.candidate_order);
  j["jobs"] = c.jobs;
  j["output"] = c.output;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  reject_unknown(j,
                 {"model", "distribution", "delta", "trials", "master_seed", "k_param", "sweep", "p_e", "m",
                  "max_rounds", "candidate_order", "jobs", "output"},
                 "config");
  ExperimentConfig c;
  if (j.contains("model")) c.model = parse_model(get_field<std::string>(j, "model"));
  if (j.contains("distribution")) c.distribution = distribution_from_json(j.at("distribution"));
  if (j.contains("delta")) c.delta = get_field<double>(j, "delta");
  if (j.contains("trials")) c.trials = get_field<std::uint64_t>(j, "trials");
  if (j.contains("master_seed")) c.master_seed = get_field<std::uint64_t>(j, "master_seed");
  if (j.contains("k_param") && !j.at("k_param").is_null()) c.k_param = get_field<std::uint32_t>(j, "k_param");
  if (j.contains("sweep") && !j.at("sweep").is_null()) {
    const Json& s = j.at("sweep");
    reject_unknown(s, {"start", "stop", "step", "gap"}, "sweep");
    SweepGrid g;
    if (s.contains("start")) g.start = get_field<double>(s, "start");
    if (s.contains("stop")) g.stop = get_field<double>(s, "stop");
    if (s.contains("step")) g.step = get_field<double>(s, "step");
    if (s.contains("gap")) g.gap = get_field<double>(s, "gap");
    c.sweep = g;
  }
  if (j.contains("p_e")) c.p_e = get_field<double>(j, "p_e");
  if (j.contains("m")) c.m = get_field<std::uint32_t>(j, "m");
  if (j.contains("max_rounds")) c.max_rounds = get_field<std::uint64_t>(j, "max_rounds");
  if (j.contains("candidate_order")) {
    c.candidate_order = parse_candidate_order(get_field<std::string>(j, "candidate_order"));
  }
  if (j.contains("jobs")) c.jobs = get_field<int>(j, "jobs");
  if (j.contains("output")) c.output = get_field<std::string>(j, "output");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path));
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
  return config_from_json(j);
}

}  // namespace modeest
