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

#include "modeest/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>
#include <omp.h>

#include "modeest/errors.hpp"
#include "modeest/oracle.hpp"
#include "modeest/rng.hpp"

namespace modeest {

std::string to_string(Model model) {
  switch (model) {
    case Model::kQm1:
      return "qm1";
    case Model::kQm2:
      return "qm2";
    case Model::kQm2Naive:
      return "qm2_naive";
    case Model::kQm1Noisy:
      return "qm1_noisy";
    case Model::kTopM:
      return "topm";
  }
  return "unknown";
}

Model parse_model(const std::string& name) {
  if (name == "qm1") return Model::kQm1;
  if (name == "qm2") return Model::kQm2;
  if (name == "qm2_naive") return Model::kQm2Naive;
  if (name == "qm1_noisy") return Model::kQm1Noisy;
  if (name == "topm") return Model::kTopM;
  throw ConfigError(fmt::format("unknown model '{}' (expected qm1, qm2, qm2_naive, qm1_noisy, topm)", name));
}

std::vector<double> SweepGrid::points() const {
  if (!(step > 0.0)) throw ConfigError(fmt::format("sweep step {} must be positive", step));
  if (stop < start) throw ConfigError("sweep stop is below start");
  std::vector<double> out;
  for (std::uint64_t i = 0;; ++i) {
    // Snap to 1e-12 so 0.3 + 3 * 0.05 prints as 0.45.
    const double p1 = std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12;
    if (p1 > stop + 1e-12) break;
    out.push_back(p1);
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError(fmt::format("delta {} is outside (0, 1)", delta));
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (!(p_e >= 0.0 && p_e < 1.0)) throw ConfigError(fmt::format("p_e {} is outside [0, 1)", p_e));
  if (model != Model::kQm1Noisy && p_e != 0.0) throw ConfigError("p_e applies to the qm1_noisy model only");
  if (model != Model::kTopM && m != 1) throw ConfigError("m applies to the topm model only");
  if (jobs < 0) throw ConfigError("jobs must be non-negative");
  if (sweep) {
    sweep->points();
    if (distribution.family == DistributionSpec::Family::kMasses) {
      throw ConfigError("a p1 sweep needs the uniform or geometric family");
    }
  }
}

EstimatorConfig ExperimentConfig::estimator_config(const DiscreteDistribution& d) const {
  EstimatorConfig c;
  c.delta = delta;
  c.k = k_param.value_or(d.support_size());
  c.m = m;
  c.max_rounds = max_rounds;
  c.candidate_order = candidate_order;
  return c;
}

namespace {

// Correct iff every returned element is at least as heavy as every element
// left out, i.e. the estimate is a valid top-m (mode for m = 1) set.
bool is_correct(const DiscreteDistribution& d, const std::vector<Element>& values, std::uint32_t m) {
  if (values.size() != m) return false;
  double lightest_in = std::numeric_limits<double>::infinity();
  for (Element v : values) {
    if (v < 1 || v > d.support_size()) return false;
    lightest_in = std::min(lightest_in, d.mass(v));
  }
  for (Element e = 1; e <= d.support_size(); ++e) {
    if (std::find(values.begin(), values.end(), e) == values.end() && d.mass(e) > lightest_in) return false;
  }
  return true;
}

std::pair<double, double> top_two(std::span<const double> masses) {
  std::vector<double> v(masses.begin(), masses.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return {v[0], v.size() > 1 ? v[1] : 0.0};
}

BoundReport bounds_for(const ExperimentConfig& config, const DiscreteDistribution& d, std::uint32_t k) {
  switch (config.model) {
    case Model::kQm1:
      return evaluate_bounds(BoundModel::kQm1, d.masses(), k, config.delta);
    case Model::kQm1Noisy: {
      const auto effective = noisy_marginal(d, config.p_e);
      return evaluate_bounds(BoundModel::kQm1, effective.masses(), k, config.delta);
    }
    case Model::kTopM:
      return evaluate_bounds(BoundModel::kTopM, d.masses(), k, config.delta, config.m);
    case Model::kQm2:
    case Model::kQm2Naive:
      return evaluate_bounds(BoundModel::kQm2, d.masses(), k, config.delta);
  }
  return {};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  return fmt::format("{}", x);
}

std::string format_optional(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError(fmt::format("write to '{}' failed", path));
}

}  // namespace

TrialResult run_trial(const ExperimentConfig& config, const DiscreteDistribution& distribution,
                      std::uint64_t index) {
  const std::uint64_t seed = trial_seed(config.master_seed, index);
  const EstimatorConfig ec = config.estimator_config(distribution);
  TrialResult result;
  switch (config.model) {
    case Model::kQm1:
    case Model::kTopM:
    case Model::kQm1Noisy: {
      Qm1Oracle oracle(SampleStream(distribution, seed), config.p_e, child_seed(seed, 1));
      result = qm1_run(oracle, ec);
      break;
    }
    case Model::kQm2: {
      Qm2Oracle oracle(SampleStream(distribution, seed));
      result = qm2_run(oracle, ec);
      break;
    }
    case Model::kQm2Naive: {
      Qm2Oracle oracle(SampleStream(distribution, seed));
      result = naive_qm2_run(oracle, ec);
      break;
    }
  }
  result.seed = seed;
  result.correct = !result.capped && is_correct(distribution, result.estimate_values, config.m);
  return result;
}

AggregateResult aggregate(const ExperimentConfig& config, const DiscreteDistribution& distribution,
                          std::vector<TrialResult> results) {
  AggregateResult a;
  const std::uint32_t k = config.k_param.value_or(distribution.support_size());
  a.model = to_string(config.model);
  a.k = k;
  if (config.distribution.family == DistributionSpec::Family::kMasses) {
    std::tie(a.p1, a.p2) = top_two(distribution.masses());
  } else {
    a.p1 = config.distribution.p1;
    a.p2 = config.distribution.p2;
  }
  a.delta = config.delta;
  a.trials = results.size();

  const BoundReport bounds = bounds_for(config, distribution, k);
  a.upper_bound = bounds.upper;
  a.lower_bound = bounds.lower;

  const auto modes = distribution.mode_set();
  double sum = 0.0, rounds = 0.0;
  std::uint64_t uncapped = 0, successes = 0, exceeding = 0;
  for (const TrialResult& r : results) {
    rounds += static_cast<double>(r.rounds);
    if (r.correct) ++successes;
    if (r.capped) {
      ++a.capped_trials;
    } else {
      ++uncapped;
      sum += static_cast<double>(r.total_queries);
    }
    if (a.upper_bound && static_cast<double>(r.total_queries) > std::ceil(*a.upper_bound)) ++exceeding;
    for (Element mode : modes) {
      if (std::binary_search(r.ever_excluded.begin(), r.ever_excluded.end(), mode)) {
        ++a.mode_excluded_trials;
        break;
      }
    }
  }
  const double n = static_cast<double>(results.size());
  a.mean_queries = uncapped ? sum / static_cast<double>(uncapped) : std::numeric_limits<double>::quiet_NaN();
  double ss = 0.0;
  for (const TrialResult& r : results) {
    if (!r.capped) {
      const double d = static_cast<double>(r.total_queries) - a.mean_queries;
      ss += d * d;
    }
  }
  a.std_queries = uncapped > 1 ? std::sqrt(ss / static_cast<double>(uncapped - 1)) : 0.0;
  a.success_rate = static_cast<double>(successes) / n;
  a.mean_rounds = rounds / n;
  if (a.upper_bound) a.frac_exceeding_upper = static_cast<double>(exceeding) / n;
  a.trial_results = std::move(results);
  return a;
}

AggregateResult run_trials_serial(const ExperimentConfig& config) {
  config.validate();
  const DiscreteDistribution d = config.distribution.build();
  std::vector<TrialResult> results(config.trials);
  for (std::uint64_t i = 0; i < config.trials; ++i) results[i] = run_trial(config, d, i);
  return aggregate(config, d, std::move(results));
}

AggregateResult run_trials(const ExperimentConfig& config) {
  config.validate();
  const DiscreteDistribution d = config.distribution.build();
  const auto n = static_cast<std::int64_t>(config.trials);
  std::vector<TrialResult> results(config.trials);
  std::exception_ptr failure;
  const int threads = config.jobs > 0 ? config.jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      results[i] = run_trial(config, d, static_cast<std::uint64_t>(i));
    } catch (...) {
#pragma omp critical(modeest_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(config, d, std::move(results));
}

SweepTable sweep_p1(const ExperimentConfig& config) {
  config.validate();
  if (!config.sweep) throw ConfigError("sweep_p1 needs a sweep grid");
  SweepTable table;
  for (double p1 : config.sweep->points()) {
    ExperimentConfig point = config;
    point.sweep.reset();
    point.distribution.p1 = p1;
    point.distribution.p2 = std::round((p1 - config.sweep->gap) * 1e12) / 1e12;
    try {
      point.distribution.build();
    } catch (const ConfigError& e) {
      table.skipped.emplace_back(p1, e.what());
      continue;
    }
    table.rows.push_back(run_trials(point));
  }
  return table;
}

std::vector<ProfileRow> per_round_profile(const ExperimentConfig& config, std::uint64_t seed) {
  if (config.model != Model::kQm2 && config.model != Model::kQm2Naive) {
    throw ConfigError(fmt::format("per-round profiles exist for qm2 and qm2_naive, not {}", to_string(config.model)));
  }
  config.validate();
  const DiscreteDistribution d = config.distribution.build();
  Qm2Oracle oracle(SampleStream(d, seed));
  const EstimatorConfig ec = config.estimator_config(d);
  const TrialResult r = config.model == Model::kQm2 ? qm2_run(oracle, ec) : naive_qm2_run(oracle, ec);
  std::vector<ProfileRow> rows;
  rows.reserve(r.rounds);
  std::uint64_t cumulative = 0;
  for (std::size_t i = 0; i < r.per_round_queries.size(); ++i) {
    cumulative += r.per_round_queries[i];
    rows.push_back({i + 1, r.per_round_queries[i], cumulative, r.per_round_active[i]});
  }
  return rows;
}

QuartileMeans quartile_means(std::span<const ProfileRow> profile) {
  const std::size_t q = profile.size() / 4;
  if (q == 0) throw ConfigError("profile too short for quartiles");
  double first = 0.0, last = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    first += static_cast<double>(profile[i].queries_this_round);
    last += static_cast<double>(profile[profile.size() - q + i].queries_this_round);
  }
  return {first / static_cast<double>(q), last / static_cast<double>(q)};
}

std::string sweep_csv_row(const AggregateResult& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}", r.model, r.k, format_number(r.p1),
                     format_number(r.p2), format_number(r.delta), r.trials, format_number(r.mean_queries),
                     format_number(r.std_queries), format_number(r.success_rate), r.capped_trials,
                     format_optional(r.upper_bound), format_optional(r.lower_bound),
                     format_optional(r.frac_exceeding_upper));
}

void write_sweep_csv(std::span<const AggregateResult> rows, const std::string& path) {
  auto out = open_for_write(path);
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) out << sweep_csv_row(r) << '\n';
  finish_write(out, path);
}

void write_profile_csv(std::span<const ProfileRow> rows, const std::string& path) {
  auto out = open_for_write(path);
  out << kProfileCsvHeader << '\n';
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{}\n", r.round, r.queries_this_round, r.cumulative_queries, r.active_bins);
  }
  finish_write(out, path);
}

void write_trials_csv(const AggregateResult& result, const std::string& path) {
  auto out = open_for_write(path);
  out << trial_csv_header() << '\n';
  for (std::size_t i = 0; i < result.trial_results.size(); ++i) {
    out << trial_csv_row(i, result.model, result.trial_results[i]) << '\n';
  }
  finish_write(out, path);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, const std::string& path, std::size_t line) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(fmt::format("{}:{}: '{}' is not a number", path, line, s));
}

std::optional<double> parse_optional(const std::string& s, const std::string& path, std::size_t line) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, path, line);
}

std::uint64_t parse_count(const std::string& s, const std::string& path, std::size_t line) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(fmt::format("{}:{}: '{}' is not a count", path, line, s));
}

}  // namespace

std::vector<AggregateResult> read_sweep_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path));
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw ConfigError(fmt::format("{}: header does not match the sweep schema", path));
  }
  std::vector<AggregateResult> rows;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 13) throw ConfigError(fmt::format("{}:{}: expected 13 fields, got {}", path, n, f.size()));
    AggregateResult r;
    r.model = f[0];
    r.k = static_cast<std::uint32_t>(parse_count(f[1], path, n));
    r.p1 = parse_double(f[2], path, n);
    r.p2 = parse_double(f[3], path, n);
    r.delta = parse_double(f[4], path, n);
    r.trials = parse_count(f[5], path, n);
    r.mean_queries = parse_double(f[6], path, n);
    r.std_queries = parse_double(f[7], path, n);
    r.success_rate = parse_double(f[8], path, n);
    r.capped_trials = parse_count(f[9], path, n);
    r.upper_bound = parse_optional(f[10], path, n);
    r.lower_bound = parse_optional(f[11], path, n);
    r.frac_exceeding_upper = parse_optional(f[12], path, n);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace modeest
