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

namespace modeest {

/// Leading constant of every upper bound.
inline constexpr double kUpperConstant = 592.0 / 3.0;

/// Which constant sits under the square root inside the log of the pairwise
/// per-bin terms: sqrt(k/delta) (default) or the looser
/// sqrt(2k/delta).
enum class RootConstant { kSqrtK, kSqrt2K };

// Raw evaluators. They return real numbers (callers ceil when comparing with
// query counts) and throw ConfigError on invalid inputs: non-positive gap,
// delta outside its range, or a log argument <= 1 for the upper bounds.

/// (592/3) p1/(p1-p2)^2 ln((592/3) sqrt(k/delta) p1/(p1-p2)^2)
double qm1_upper(double p1, double p2, std::uint32_t k, double delta);

/// p1/(p1-p2)^2 ln(1/(2.4 delta)); requires delta < 1/2.4.
double qm1_lower(double p1, double p2, double delta);

/// t1* + sum_{i=2}^{T} t_i* with T = min(k, ceil(t1*)), masses sorted
/// descending. Requires a unique maximum.
double qm2_upper(std::span<const double> masses, std::uint32_t k, double delta,
                 RootConstant root = RootConstant::kSqrtK);

/// qm1_lower / 2.
double qm2_lower(double p1, double p2, double delta);

/// Max over i <= m < j of the per-pair upper term, masses sorted descending.
/// Requires p_m > p_{m+1}.
double topm_upper(std::span<const double> masses, std::uint32_t m, std::uint32_t k, double delta);

/// Max over i <= m < j of p_i/(p_i-p_j)^2 ln(1/(2.4 delta)).
double topm_lower(std::span<const double> masses, std::uint32_t m, double delta);

enum class BoundModel { kQm1, kQm2, kTopM, kMabRelaxed };

std::string to_string(BoundModel model);
BoundModel parse_bound_model(const std::string& name);

struct BoundReport {
  BoundModel model = BoundModel::kQm1;
  std::optional<double> upper;
  std::optional<double> lower;
  std::vector<double> masses;
  std::uint32_t k = 0;
  double delta = 0.0;
  std::uint32_t m = 1;
  bool valid = false;
  std::string reason;  // why a bound is absent, empty when both are present
};

/// sum_{i>=2} p_i/(2 (p1-p_i)^2) ln(1/(2.4 delta)) for arms whose means satisfy
/// 2 p1 + p2 + ... + p_k < 1. Masses need not sum to one. Reports valid=false
/// with a reason when the condition, the unique maximum or the delta range
/// fails.
BoundReport mab_relaxed_lower(std::span<const double> masses, double delta);

/// Evaluates both bounds of `model`. Invalid inputs produce valid=false with
/// the reason rather than an exception; a bound that cannot be evaluated is
/// left empty.
BoundReport evaluate_bounds(BoundModel model, std::span<const double> masses, std::uint32_t k,
                            double delta, std::uint32_t m = 1,
                            RootConstant root = RootConstant::kSqrtK);

}  // namespace modeest
