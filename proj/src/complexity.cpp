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

#include "modeest/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "modeest/errors.hpp"

namespace modeest {
namespace {

double lower_log(double delta) {
  if (!(delta > 0.0 && delta < 1.0 / 2.4)) {
    throw ConfigError(fmt::format("lower bounds need 0 < delta < 1/2.4, got {}", delta));
  }
  return std::log(1.0 / (2.4 * delta));
}

// (592/3) base ln((592/3) sqrt(root_k/delta) base) with base = p_i/(p_i-p_j)^2.
double upper_term(double pi, double pj, double root_k, double delta) {
  if (!(pi > pj)) throw ConfigError(fmt::format("gap {} - {} is not positive", pi, pj));
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError(fmt::format("delta {} is outside (0, 1)", delta));
  const double gap = pi - pj;
  const double scaled = kUpperConstant * pi / (gap * gap);
  const double arg = scaled * std::sqrt(root_k / delta);
  if (!(arg > 1.0)) throw ConfigError(fmt::format("log argument {} <= 1, upper bound undefined", arg));
  return scaled * std::log(arg);
}

std::vector<double> sorted_desc(std::span<const double> masses) {
  std::vector<double> v(masses.begin(), masses.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

void check_split(const std::vector<double>& p, std::uint32_t m) {
  if (m < 1 || m >= p.size()) throw ConfigError(fmt::format("need 1 <= m < {} for top-m bounds", p.size()));
  if (!(p[m - 1] > p[m])) {
    throw ConfigError(fmt::format("top-{} set is not unique: p_m = p_(m+1) = {}", m, p[m]));
  }
}

}  // namespace

double qm1_upper(double p1, double p2, std::uint32_t k, double delta) {
  if (k < 2) throw ConfigError("upper bound needs k >= 2");
  return upper_term(p1, p2, k, delta);
}

double qm1_lower(double p1, double p2, double delta) {
  if (!(p1 > p2)) throw ConfigError(fmt::format("gap {} - {} is not positive", p1, p2));
  const double gap = p1 - p2;
  return p1 / (gap * gap) * lower_log(delta);
}

double qm2_upper(std::span<const double> masses, std::uint32_t k, double delta, RootConstant root) {
  const auto p = sorted_desc(masses);
  if (p.size() < 2) throw ConfigError("pairwise upper bound needs at least two masses");
  if (!(p[0] > p[1])) throw ConfigError("pairwise upper bound needs a unique mode");
  const double root_k = root == RootConstant::kSqrtK ? k : 2.0 * k;
  const double t1 = upper_term(p[0], p[1], root_k, delta);
  const auto last = static_cast<std::size_t>(std::min<double>({static_cast<double>(k), std::ceil(t1),
                                                               static_cast<double>(p.size())}));
  double total = t1;
  for (std::size_t i = 1; i < last; ++i) total += upper_term(p[0], p[i], root_k, delta);
  return total;
}

double qm2_lower(double p1, double p2, double delta) { return qm1_lower(p1, p2, delta) / 2.0; }

double topm_upper(std::span<const double> masses, std::uint32_t m, std::uint32_t k, double delta) {
  const auto p = sorted_desc(masses);
  check_split(p, m);
  double best = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = m; j < p.size(); ++j) best = std::max(best, upper_term(p[i], p[j], k, delta));
  }
  return best;
}

double topm_lower(std::span<const double> masses, std::uint32_t m, double delta) {
  const auto p = sorted_desc(masses);
  check_split(p, m);
  const double log_part = lower_log(delta);
  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = m; j < p.size(); ++j) {
      const double gap = p[i] - p[j];
      best = std::max(best, p[i] / (gap * gap) * log_part);
    }
  }
  return best;
}

BoundReport mab_relaxed_lower(std::span<const double> masses, double delta) {
  BoundReport report;
  report.model = BoundModel::kMabRelaxed;
  report.masses.assign(masses.begin(), masses.end());
  report.k = static_cast<std::uint32_t>(masses.size());
  report.delta = delta;
  const auto p = sorted_desc(masses);
  if (p.size() < 2) {
    report.reason = "needs at least two arms";
    return report;
  }
  if (!(p[0] > p[1])) {
    report.reason = "best arm is not unique";
    return report;
  }
  double weight = p[0];
  for (double x : p) weight += x;
  if (!(weight < 1.0)) {
    report.reason = fmt::format("relaxation condition 2 p1 + p2 + ... + pk < 1 fails ({})", weight);
    return report;
  }
  if (!(delta > 0.0 && delta < 1.0 / 2.4)) {
    report.reason = fmt::format("needs 0 < delta < 1/2.4, got {}", delta);
    return report;
  }
  const double log_part = std::log(1.0 / (2.4 * delta));
  double sum = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double gap = p[0] - p[i];
    sum += p[i] / (2.0 * gap * gap);
  }
  report.lower = sum * log_part;
  report.valid = true;
  return report;
}

std::string to_string(BoundModel model) {
  switch (model) {
    case BoundModel::kQm1:
      return "qm1";
    case BoundModel::kQm2:
      return "qm2";
    case BoundModel::kTopM:
      return "topm";
    case BoundModel::kMabRelaxed:
      return "mab_relaxed";
  }
  return "unknown";
}

BoundModel parse_bound_model(const std::string& name) {
  if (name == "qm1") return BoundModel::kQm1;
  if (name == "qm2") return BoundModel::kQm2;
  if (name == "topm") return BoundModel::kTopM;
  if (name == "mab_relaxed") return BoundModel::kMabRelaxed;
  throw ConfigError(fmt::format("unknown bound model '{}'", name));
}

BoundReport evaluate_bounds(BoundModel model, std::span<const double> masses, std::uint32_t k,
                            double delta, std::uint32_t m, RootConstant root) {
  if (model == BoundModel::kMabRelaxed) return mab_relaxed_lower(masses, delta);
  BoundReport report;
  report.model = model;
  report.masses.assign(masses.begin(), masses.end());
  report.k = k;
  report.delta = delta;
  report.m = m;
  const auto p = sorted_desc(masses);
  std::vector<std::string> reasons;
  auto attempt = [&](std::optional<double>& slot, auto&& fn) {
    try {
      slot = fn();
    } catch (const ConfigError& e) {
      reasons.emplace_back(e.what());
    }
  };
  if (p.size() < 2) {
    report.reason = "needs at least two masses";
    return report;
  }
  switch (model) {
    case BoundModel::kQm1:
      attempt(report.upper, [&] { return qm1_upper(p[0], p[1], k, delta); });
      attempt(report.lower, [&] { return qm1_lower(p[0], p[1], delta); });
      break;
    case BoundModel::kQm2:
      attempt(report.upper, [&] { return qm2_upper(p, k, delta, root); });
      attempt(report.lower, [&] { return qm2_lower(p[0], p[1], delta); });
      break;
    case BoundModel::kTopM:
      attempt(report.upper, [&] { return topm_upper(p, m, k, delta); });
      attempt(report.lower, [&] { return topm_lower(p, m, delta); });
      break;
    case BoundModel::kMabRelaxed:
      break;
  }
  report.valid = report.upper.has_value() && report.lower.has_value();
  report.reason = fmt::format("{}", fmt::join(reasons, "; "));
  return report;
}

}  // namespace modeest
