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

// Acceptance suite: one PASS/FAIL line per end-to-end criterion. Exits
// nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "modeest/cluster.hpp"
#include "modeest/complexity.hpp"
#include "modeest/confidence.hpp"
#include "modeest/estimator.hpp"
#include "modeest/harness.hpp"
#include "modeest/rng.hpp"

using namespace modeest;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

double slack(double p, double n) { return 3.0 * std::sqrt(p * (1.0 - p) / n); }

ExperimentConfig masses_config(Model model, std::uint64_t trials) {
  ExperimentConfig c;
  c.model = model;
  c.distribution = DistributionSpec::from_masses({0.5, 0.3, 0.2});
  c.delta = 0.1;
  c.trials = trials;
  if (model == Model::kQm1Noisy) c.p_e = 0.3;
  return c;
}

Verdict delta_true() {
  const double threshold = 0.9 - slack(0.9, 400);
  std::string detail;
  bool pass = true;
  for (auto model : {Model::kQm1, Model::kQm2, Model::kQm2Naive, Model::kQm1Noisy}) {
    const auto r = run_trials(masses_config(model, 400));
    pass &= r.success_rate >= threshold && r.capped_trials == 0;
    detail += fmt::format("{}={:.4f} ", to_string(model), r.success_rate);
  }
  return {pass, detail + fmt::format("(need >= {:.4f})", threshold)};
}

Verdict degenerate_trace() {
  const DiscreteDistribution d({1.0, 0.0});
  EstimatorConfig c;
  c.k = 2;
  c.delta = 0.1;
  Qm1Oracle o1(SampleStream(d, 1));
  const auto r1 = qm1_run(o1, c);
  Qm2Oracle o2(SampleStream(d, 1));
  const auto r2 = qm2_run(o2, c);
  const bool pass = r1.rounds == 60 && r1.total_queries == 60 && r2.total_queries == 59 &&
                    r1.estimate == std::vector<Element>{1} && r2.estimate_values == std::vector<Element>{1};
  return {pass, fmt::format("qm1 t={} queries={}, qm2 queries={}", r1.rounds, r1.total_queries, r2.total_queries)};
}

Verdict bound_compliance() {
  const double threshold = 0.1 + slack(0.1, 400);
  const auto q1 = run_trials(masses_config(Model::kQm1, 400));
  const auto q2 = run_trials(masses_config(Model::kQm2, 400));
  const double f1 = q1.frac_exceeding_upper.value_or(1.0);
  const double f2 = q2.frac_exceeding_upper.value_or(1.0);
  return {f1 <= threshold && f2 <= threshold,
          fmt::format("qm1 {} of 400 above ceil({:.1f}), qm2 {} above ceil({:.1f}) (need <= {:.4f})", f1,
                      q1.upper_bound.value_or(NAN), f2, q2.upper_bound.value_or(NAN), threshold)};
}

Verdict coverage() {
  const double delta = 0.1;
  const std::uint32_t k = 4;
  const int streams = 2000;
  const double beta_limit = delta + slack(delta, streams);
  const double var_limit = delta / 2 + slack(delta / 2, streams);
  bool pass = true;
  std::string detail;
  for (double p : {0.1, 0.5, 0.9}) {
    int beta_bad = 0, var_bad = 0;
    const double sd = std::sqrt(p * (1 - p));
    for (int r = 0; r < streams; ++r) {
      Rng rng(trial_seed(static_cast<std::uint64_t>(p * 1000), r));
      std::uint64_t s = 0;
      bool beta_hit = false, var_hit = false;
      for (std::uint64_t t = 1; t <= 200; ++t) {
        s += rng.uniform() < p ? 1 : 0;
        if (t < 2) continue;
        const double phat = static_cast<double>(s) / static_cast<double>(t);
        beta_hit |= std::abs(p - phat) > beta(s, t, k, delta);
        const double dt = delta / (2.0 * k * static_cast<double>(t) * static_cast<double>(t));
        var_hit |= std::abs(sd - std::sqrt(empirical_variance(s, t))) > variance_deviation_bound(t, dt);
      }
      beta_bad += beta_hit;
      var_bad += var_hit;
    }
    const double fb = beta_bad / double(streams), fv = var_bad / double(streams);
    pass &= fb <= beta_limit && fv <= var_limit;
    detail += fmt::format("p={}: beta {:.4f} var {:.4f}; ", p, fb, fv);
  }
  return {pass, detail + fmt::format("(need <= {:.4f} / {:.4f})", beta_limit, var_limit)};
}

Verdict variance_equivalence() {
  double worst = 0.0;
  for (std::uint64_t t = 2; t <= 12; ++t) {
    for (std::uint64_t s = 0; s <= t; ++s) {
      double sum = 0.0;
      for (std::uint64_t i = 0; i < t; ++i) {
        for (std::uint64_t j = i + 1; j < t; ++j) {
          const double d = (i < s ? 1.0 : 0.0) - (j < s ? 1.0 : 0.0);
          sum += d * d;
        }
      }
      // Unordered pairs: sum (Z_i - Z_j)^2 / (t (t - 1)).
      const double brute = sum / static_cast<double>(t * (t - 1));
      worst = std::max(worst, std::abs(brute - empirical_variance(s, t)));
    }
  }
  return {worst < 1e-12, fmt::format("max |diff| = {:.3g}", worst)};
}

Verdict fig1_trend() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (auto family : {DistributionSpec::uniform(64, 0.5, 0.292), DistributionSpec::geometric(64, 0.5, 0.292)}) {
    ExperimentConfig c;
    c.model = Model::kQm1;
    c.distribution = family;
    c.delta = 0.1;
    c.trials = 50;
    c.sweep = SweepGrid{0.30, 0.70, 0.05, 0.208};
    const auto table = sweep_p1(c);
    detail += family.family_name() + " [";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      if (i > 0 && !(table.rows[i].mean_queries > table.rows[i - 1].mean_queries)) pass = false;
      detail += fmt::format("{}{:.0f}", i ? " " : "", table.rows[i].mean_queries);
    }
    detail += fmt::format("] skipped {}; ", table.skipped.size());
    pass &= table.rows.size() >= 2;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  pass &= secs < 120;
  return {pass, detail + fmt::format("{:.1f}s", secs)};
}

Verdict fig23_behaviour() {
  ExperimentConfig c;
  c.distribution = DistributionSpec::geometric(64, 0.3, 0.092);
  c.delta = 0.1;
  c.trials = 50;
  c.model = Model::kQm2;
  const auto alg2 = run_trials(c);
  c.model = Model::kQm2Naive;
  const auto naive = run_trials(c);

  auto mean_quartiles = [](const AggregateResult& r) {
    double first = 0, last = 0;
    for (const auto& t : r.trial_results) {
      std::vector<ProfileRow> rows;
      std::uint64_t cum = 0;
      for (std::size_t i = 0; i < t.per_round_queries.size(); ++i) {
        cum += t.per_round_queries[i];
        rows.push_back({i + 1, t.per_round_queries[i], cum, t.per_round_active[i]});
      }
      const auto q = quartile_means(rows);
      first += q.first;
      last += q.last;
    }
    const double n = static_cast<double>(r.trial_results.size());
    return QuartileMeans{first / n, last / n};
  };
  const auto qa = mean_quartiles(alg2);
  const auto qn = mean_quartiles(naive);
  const double ratio = naive.mean_queries / alg2.mean_queries;
  const bool pass = ratio > 1.3 && qa.last < qa.first && qn.last > qn.first;
  return {pass, fmt::format("alg2 {:.0f} naive {:.0f} ratio {:.3f}; quartiles alg2 {:.2f}->{:.2f} naive {:.2f}->{:.2f}",
                            alg2.mean_queries, naive.mean_queries, ratio, qa.first, qa.last, qn.first, qn.last)};
}

bool within(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

Verdict bound_evaluators() {
  // Independent re-derivation with long double arithmetic.
  const long double c = 592.0L / 3.0L;
  const long double b = c * 0.5L / (0.208L * 0.208L);
  const long double up_ref = b * std::log(b * std::sqrt(5120.0L / 0.01L));
  const long double lo_ref = 0.5L / (0.208L * 0.208L) * std::log(1.0L / (2.4L * 0.01L));
  const long double mab_ref = 2 * (0.1L / (2 * 0.01L)) * std::log(1.0L / (2.4L * 0.01L));

  const double up = qm1_upper(0.5, 0.292, 5120, 0.01);
  const double lo = qm1_lower(0.5, 0.292, 0.01);
  const double lo2 = qm2_lower(0.5, 0.292, 0.01);
  const std::vector<double> arms{0.2, 0.1, 0.1};
  const auto mab = mab_relaxed_lower(arms, 0.01);
  bool pass = within(up, static_cast<double>(up_ref), 0.005) && within(up, 3.262e4, 0.005) &&
              within(lo, static_cast<double>(lo_ref), 0.005) && within(lo, 43.11, 0.005) &&
              within(lo2, lo / 2, 1e-15) && mab.lower && within(*mab.lower, static_cast<double>(mab_ref), 0.005) &&
              within(*mab.lower, 37.30, 0.005);

  double worst = 0.0;
  const std::vector<std::vector<double>> cases{{0.5, 0.292, 0.208}, {0.4, 0.3, 0.2, 0.1}, {0.6, 0.2, 0.1, 0.1}};
  for (const auto& p : cases) {
    const auto k = static_cast<std::uint32_t>(p.size());
    for (double delta : {0.01, 0.1}) {
      worst = std::max(worst, std::abs(topm_upper(p, 1, k, delta) / qm1_upper(p[0], p[1], k, delta) - 1));
      worst = std::max(worst, std::abs(topm_lower(p, 1, delta) / qm1_lower(p[0], p[1], delta) - 1));
    }
  }
  pass &= worst <= 1e-12;
  return {pass, fmt::format("qm1_upper {:.2f} qm1_lower {:.4f} qm2_lower {:.4f} mab {:.4f} topm(m=1) rel {:.2g}", up,
                            lo, lo2, mab.lower.value_or(NAN), worst)};
}

Verdict cluster_application() {
  const LabeledDataset data = zipf_dataset(100, 400, 1.0);
  const int trials = 200;
  int correct = 0, capped = 0;
  double alg2 = 0, naive = 0;
  std::vector<ClusterResult> a(trials), n(trials);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < trials; ++i) {
    ClusterOptions o;
    o.delta = 0.05;
    o.seed = trial_seed(1, static_cast<std::uint64_t>(i));
    a[i] = find_largest_cluster(data, o);
    o.naive = true;
    n[i] = find_largest_cluster(data, o);
  }
  for (int i = 0; i < trials; ++i) {
    correct += a[i].trial.correct;
    capped += a[i].trial.capped;
    alg2 += static_cast<double>(a[i].trial.total_queries);
    naive += static_cast<double>(n[i].trial.total_queries);
  }
  const double rate = correct / double(trials);
  const double threshold = 0.95 - slack(0.95, trials);
  const bool pass = rate >= threshold && alg2 < naive && capped == 0;
  return {pass, fmt::format("{} items, p1={:.4f}; correct {:.3f} (need >= {:.4f}); mean queries alg2 {:.0f} naive {:.0f} "
                            "ratio {:.2f}",
                            data.size(), data.induced_distribution().mass(1), rate, threshold, alg2 / trials,
                            naive / trials, naive / alg2)};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict reproducibility() {
  const auto dir = std::filesystem::temp_directory_path() / fmt::format("modeest_accept_{}", ::getpid());
  std::filesystem::create_directories(dir);
  std::vector<std::string> outputs;
  bool ok = true;
  for (int i = 0; i < 2; ++i) {
    const auto out = dir / fmt::format("run{}.csv", i);
    const auto trials = dir / fmt::format("trials{}.csv", i);
    const std::string cmd =
        fmt::format("{} run --model qm2 --dist geometric --k 64 --p1 0.5 --gap 0.208 --delta 0.1 --trials 50 --seed 7 "
                    "--out {} --trials-out {} > /dev/null",
                    MODEEST_CLI_PATH, out.string(), trials.string());
    const int status = std::system(cmd.c_str());
    ok &= WIFEXITED(status) && WEXITSTATUS(status) == 0;
    outputs.push_back(slurp(out) + slurp(trials));
  }
  std::filesystem::remove_all(dir);
  const bool pass = ok && !outputs[0].empty() && outputs[0] == outputs[1];
  return {pass, fmt::format("{} bytes per invocation, identical={}", outputs[0].size(), outputs[0] == outputs[1])};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"delta-true success rate", delta_true},
      {"degenerate trace 60/59", degenerate_trace},
      {"upper-bound compliance", bound_compliance},
      {"confidence coverage", coverage},
      {"variance closed form vs brute force", variance_equivalence},
      {"qm1 sweep trend (uniform, geometric)", fig1_trend},
      {"pairwise vs naive profile", fig23_behaviour},
      {"bound evaluators", bound_evaluators},
      {"largest cluster", cluster_application},
      {"cli reproducibility", reproducibility},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, fmt::format("exception: {}", e.what())};
    }
    failed += !v.pass;
    fmt::print("{} {}: {}\n", v.pass ? "PASS" : "FAIL", name, v.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
