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
#include <utility>
#include <vector>

#include "modeest/complexity.hpp"
#include "modeest/distribution.hpp"
#include "modeest/estimator.hpp"

namespace modeest {

enum class Model { kQm1, kQm2, kQm2Naive, kQm1Noisy, kTopM };

std::string to_string(Model model);
Model parse_model(const std::string& name);

/// p1 grid at a fixed gap p1 - p2; both ends inclusive.
struct SweepGrid {
  double start = 0.3;
  double stop = 0.7;
  double step = 0.05;
  double gap = 0.208;

  std::vector<double> points() const;
};

struct ExperimentConfig {
  Model model = Model::kQm1;
  DistributionSpec distribution;
  double delta = 0.1;
  std::uint64_t trials = 50;
  std::uint64_t master_seed = 1;
  /// Union-bound support size; defaults to the distribution's support size.
  std::optional<std::uint32_t> k_param;
  std::optional<SweepGrid> sweep;
  double p_e = 0.0;  // noisy model only
  std::uint32_t m = 1;
  std::uint64_t max_rounds = 10'000'000;
  CandidateOrder candidate_order = CandidateOrder::kByPhatDesc;
  int jobs = 0;  // OpenMP threads, 0 = runtime default
  std::string output;

  void validate() const;
  EstimatorConfig estimator_config(const DiscreteDistribution& d) const;
};

/// One sweep point. The first thirteen fields are the sweep CSV columns.
struct AggregateResult {
  std::string model;
  std::uint32_t k = 0;
  double p1 = 0.0;
  double p2 = 0.0;
  double delta = 0.0;
  std::uint64_t trials = 0;
  double mean_queries = 0.0;  // over uncapped trials; NaN if all capped
  double std_queries = 0.0;   // sample standard deviation over uncapped trials
  double success_rate = 0.0;
  std::uint64_t capped_trials = 0;
  std::optional<double> upper_bound;
  std::optional<double> lower_bound;
  std::optional<double> frac_exceeding_upper;

  double mean_rounds = 0.0;
  std::uint64_t mode_excluded_trials = 0;  // pairwise models only
  std::vector<TrialResult> trial_results;  // indexed by trial
};

/// Runs trial `index` of `config` on `distribution`; seeds come from
/// trial_seed(master_seed, index). The result is scored against the truth.
TrialResult run_trial(const ExperimentConfig& config, const DiscreteDistribution& distribution,
                      std::uint64_t index);

/// Reduces per-trial results (indexed by trial) into one sweep point.
AggregateResult aggregate(const ExperimentConfig& config, const DiscreteDistribution& distribution,
                          std::vector<TrialResult> results);

/// OpenMP-parallel Monte-Carlo run. Bit-identical to run_trials_serial.
AggregateResult run_trials(const ExperimentConfig& config);

/// Single-threaded reference for run_trials.
AggregateResult run_trials_serial(const ExperimentConfig& config);

struct SweepTable {
  std::vector<AggregateResult> rows;                  // ascending p1
  std::vector<std::pair<double, std::string>> skipped;  // infeasible p1 and why
};

/// Runs every feasible point of config.sweep with the distribution family of
/// config.distribution (uniform or geometric) and p2 = p1 - gap.
SweepTable sweep_p1(const ExperimentConfig& config);

struct ProfileRow {
  std::uint64_t round;
  std::uint64_t queries_this_round;
  std::uint64_t cumulative_queries;
  std::uint64_t active_bins;
};

/// Exact per-round trace of one pairwise run whose sample stream is seeded
/// with `seed`. Throws ConfigError for the value-reveal models.
std::vector<ProfileRow> per_round_profile(const ExperimentConfig& config, std::uint64_t seed);

/// Mean queries per round over the first and the last quarter of a trace.
struct QuartileMeans {
  double first;
  double last;
};
QuartileMeans quartile_means(std::span<const ProfileRow> profile);

inline constexpr const char* kSweepCsvHeader =
    "model,k,p1,p2,delta,trials,mean_queries,std_queries,success_rate,capped_trials,"
    "upper_bound,lower_bound,frac_exceeding_upper";
inline constexpr const char* kProfileCsvHeader = "round,queries_this_round,cumulative_queries,active_bins";

std::string sweep_csv_row(const AggregateResult& r);

/// Writers throw IoError with the path on failure.
void write_sweep_csv(std::span<const AggregateResult> rows, const std::string& path);
void write_profile_csv(std::span<const ProfileRow> rows, const std::string& path);
void write_trials_csv(const AggregateResult& result, const std::string& path);

/// Parses a sweep CSV back; trial_results and diagnostics are left empty.
std::vector<AggregateResult> read_sweep_csv(const std::string& path);

}  // namespace modeest
