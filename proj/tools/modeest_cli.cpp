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

// modeest: command-line front end for the estimators, bounds and harness.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "modeest/cluster.hpp"
#include "modeest/complexity.hpp"
#include "modeest/errors.hpp"
#include "modeest/harness.hpp"
#include "modeest/serialize.hpp"

namespace {

using namespace modeest;

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct DistFlags {
  std::string dist = "uniform";
  std::vector<double> p;
  std::uint32_t k = 64;
  double p1 = 0.5;
  double gap = 0.208;
  double p2 = 0.0;
  std::vector<CLI::Option*> opts;
  CLI::Option* gap_opt = nullptr;
  CLI::Option* p2_opt = nullptr;

  bool given() const {
    for (auto* o : opts) {
      if (o->count() > 0) return true;
    }
    return false;
  }

  DistributionSpec spec() const {
    if (dist == "masses") {
      if (p.empty()) throw ConfigError("--dist masses needs --p");
      return DistributionSpec::from_masses(p);
    }
    if (!p.empty()) throw ConfigError("--p requires --dist masses");
    const double second = p2_opt->count() > 0 ? p2 : std::round((p1 - gap) * 1e12) / 1e12;
    if (dist == "uniform") return DistributionSpec::uniform(k, p1, second);
    if (dist == "geometric") return DistributionSpec::geometric(k, p1, second);
    throw ConfigError(fmt::format("unknown --dist '{}'", dist));
  }
};

void add_dist_flags(CLI::App* app, DistFlags& f, bool with_masses) {
  f.opts.push_back(app->add_option("--dist", f.dist, with_masses ? "uniform, geometric or masses" : "uniform or geometric"));
  if (with_masses) f.opts.push_back(app->add_option("--p", f.p, "explicit masses, comma separated")->delimiter(','));
  f.opts.push_back(app->add_option("--k", f.k, "support size of the family"));
  f.opts.push_back(app->add_option("--p1", f.p1, "largest mass"));
  f.gap_opt = app->add_option("--gap", f.gap, "p1 - p2");
  f.p2_opt = app->add_option("--p2", f.p2, "second mass (instead of --gap)")->default_str("p1 - gap");
  f.p2_opt->excludes(f.gap_opt);
  f.opts.push_back(f.gap_opt);
  f.opts.push_back(f.p2_opt);
}

struct ExperimentFlags {
  DistFlags dist;
  std::string config_path;
  std::string model = "qm1";
  double delta = 0.1;
  std::uint64_t trials = 50;
  std::uint64_t seed = 1;
  double pe = 0.0;
  std::uint32_t m = 1;
  std::uint64_t max_rounds = 10'000'000;
  std::uint32_t k_param = 0;
  std::string order = "by_phat_desc";
  int jobs = 0;
  std::string out;
  std::string trials_out;
  double p1_start = 0.3;
  double p1_stop = 0.7;
  double p1_step = 0.05;

  CLI::Option* config_opt = nullptr;
  CLI::Option* model_opt = nullptr;
  CLI::Option* delta_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* pe_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* max_rounds_opt = nullptr;
  CLI::Option* k_param_opt = nullptr;
  CLI::Option* order_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* start_opt = nullptr;
  CLI::Option* stop_opt = nullptr;
  CLI::Option* step_opt = nullptr;
};

enum class Kind { kRun, kSweep, kProfile };

void add_experiment_flags(CLI::App* app, ExperimentFlags& f, Kind kind) {
  add_dist_flags(app, f.dist, kind != Kind::kSweep);
  f.config_opt = app->add_option("--config", f.config_path, "ExperimentConfig JSON; flags override it");
  if (kind == Kind::kProfile) f.model = "qm2";
  f.model_opt = app->add_option("--model", f.model,
                                kind == Kind::kProfile ? "qm2 or qm2_naive" : "qm1, qm2, qm2_naive, qm1_noisy or topm");
  f.delta_opt = app->add_option("--delta", f.delta, "error probability (required unless --config)");
  f.seed_opt = app->add_option("--seed", f.seed, "master seed");
  f.max_rounds_opt = app->add_option("--max-rounds", f.max_rounds, "round cap per trial");
  f.k_param_opt = app->add_option("--k-param", f.k_param, "union-bound k, 0 = support size");
  f.order_opt = app->add_option("--candidate-order", f.order, "by_phat_desc or creation_order");
  f.out_opt = app->add_option("--out", f.out, "CSV output path (stdout if empty)");
  if (kind == Kind::kProfile) return;
  f.trials_opt = app->add_option("--trials", f.trials, "trials per point");
  f.pe_opt = app->add_option("--pe", f.pe, "noise probability (qm1_noisy)");
  f.m_opt = app->add_option("--m", f.m, "set size (topm)");
  f.jobs_opt = app->add_option("--jobs", f.jobs, "worker threads, 0 = OpenMP default");
  if (kind == Kind::kRun) {
    app->add_option("--trials-out", f.trials_out, "per-trial CSV output path");
    return;
  }
  f.start_opt = app->add_option("--p1-start", f.p1_start, "first p1");
  f.stop_opt = app->add_option("--p1-stop", f.p1_stop, "last p1 (inclusive)");
  f.step_opt = app->add_option("--p1-step", f.p1_step, "p1 increment");
}

bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

ExperimentConfig resolve(const ExperimentFlags& f, Kind kind) {
  const bool from_file = given(f.config_opt);
  ExperimentConfig c = from_file ? load_config(f.config_path) : ExperimentConfig{};
  if (!from_file && !given(f.delta_opt)) throw ConfigError("missing --delta");
  if (f.dist.given() || !from_file) c.distribution = f.dist.spec();
  if (given(f.model_opt) || !from_file) c.model = parse_model(f.model);
  if (given(f.delta_opt)) c.delta = f.delta;
  if (given(f.trials_opt)) c.trials = f.trials;
  if (given(f.seed_opt)) c.master_seed = f.seed;
  if (given(f.pe_opt)) c.p_e = f.pe;
  if (given(f.m_opt)) c.m = f.m;
  if (given(f.max_rounds_opt)) c.max_rounds = f.max_rounds;
  if (given(f.k_param_opt)) c.k_param = f.k_param == 0 ? std::nullopt : std::optional<std::uint32_t>(f.k_param);
  if (given(f.order_opt)) c.candidate_order = parse_candidate_order(f.order);
  if (given(f.jobs_opt)) c.jobs = f.jobs;
  if (given(f.out_opt)) c.output = f.out;
  if (kind == Kind::kSweep) {
    SweepGrid g = c.sweep.value_or(SweepGrid{});
    if (given(f.start_opt) || !c.sweep) g.start = f.p1_start;
    if (given(f.stop_opt) || !c.sweep) g.stop = f.p1_stop;
    if (given(f.step_opt) || !c.sweep) g.step = f.p1_step;
    if (f.dist.p2_opt->count() > 0) throw ConfigError("sweep takes --gap, not --p2");
    if (given(f.dist.gap_opt) || !c.sweep) g.gap = f.dist.gap;
    c.sweep = g;
  } else {
    c.sweep.reset();
  }
  if (kind == Kind::kProfile && c.model != Model::kQm2 && c.model != Model::kQm2Naive) {
    throw ConfigError("profile supports --model qm2 or qm2_naive");
  }
  c.validate();
  return c;
}

void print_config(const Json& j) { fmt::print("resolved config: {}\n", j.dump()); }

template <typename Writer>
void write_or_print(const std::string& path, Writer&& write_file, const std::string& text) {
  if (path.empty()) {
    fmt::print("{}", text);
  } else {
    write_file(path);
  }
}

int cmd_run(const ExperimentFlags& f) {
  const ExperimentConfig c = resolve(f, Kind::kRun);
  print_config(to_json(c));
  const AggregateResult r = run_trials(c);
  const std::vector<AggregateResult> rows{r};
  write_or_print(
      c.output, [&](const std::string& p) { write_sweep_csv(rows, p); },
      fmt::format("{}\n{}\n", kSweepCsvHeader, sweep_csv_row(r)));
  if (!f.trials_out.empty()) write_trials_csv(r, f.trials_out);
  fmt::print("summary: {}\n", to_json(r).dump());
  return 0;
}

int cmd_sweep(const ExperimentFlags& f) {
  const ExperimentConfig c = resolve(f, Kind::kSweep);
  print_config(to_json(c));
  const SweepTable t = sweep_p1(c);
  for (const auto& [p1, why] : t.skipped) fmt::print(stderr, "skipped p1={}: {}\n", p1, why);
  std::string text = fmt::format("{}\n", kSweepCsvHeader);
  for (const auto& r : t.rows) text += sweep_csv_row(r) + "\n";
  write_or_print(c.output, [&](const std::string& p) { write_sweep_csv(t.rows, p); }, text);
  return 0;
}

int cmd_profile(const ExperimentFlags& f) {
  const ExperimentConfig c = resolve(f, Kind::kProfile);
  print_config(to_json(c));
  const auto rows = per_round_profile(c, c.master_seed);
  std::string text = fmt::format("{}\n", kProfileCsvHeader);
  for (const auto& r : rows) {
    text += fmt::format("{},{},{},{}\n", r.round, r.queries_this_round, r.cumulative_queries, r.active_bins);
  }
  write_or_print(c.output, [&](const std::string& p) { write_profile_csv(rows, p); }, text);
  const auto q = quartile_means(rows);
  fmt::print("summary: {}\n", Json{{"rounds", rows.size()},
                                   {"total_queries", rows.empty() ? 0 : rows.back().cumulative_queries},
                                   {"first_quartile_mean", q.first},
                                   {"last_quartile_mean", q.last}}
                                  .dump());
  return 0;
}

struct BoundsFlags {
  std::vector<double> p;
  double delta = 0.1;
  std::uint32_t k = 0;
  std::uint32_t m = 1;
  std::string model = "qm1";
  bool proof_constant = false;
  CLI::Option* delta_opt = nullptr;
};

int cmd_bounds(const BoundsFlags& f) {
  if (f.delta_opt->count() == 0) throw ConfigError("missing --delta");
  if (f.p.empty()) throw ConfigError("missing --p");
  const BoundModel model = parse_bound_model(f.model);
  const std::uint32_t k = f.k == 0 ? static_cast<std::uint32_t>(f.p.size()) : f.k;
  print_config(Json{{"model", f.model}, {"masses", f.p}, {"k", k}, {"delta", f.delta}, {"m", f.m},
                    {"proof_constant", f.proof_constant}});
  const BoundReport r = evaluate_bounds(model, f.p, k, f.delta, f.m,
                                        f.proof_constant ? RootConstant::kSqrt2K : RootConstant::kSqrtK);
  fmt::print("{}\n", to_json(r).dump());
  return 0;
}

struct ClusterFlags {
  std::string data;
  double delta = 0.05;
  std::uint64_t seed = 1;
  std::uint64_t max_rounds = 10'000'000;
  std::uint32_t k_bound = 0;
  bool naive = false;
  std::string out;
  CLI::Option* delta_opt = nullptr;
};

int cmd_cluster(const ClusterFlags& f) {
  if (f.delta_opt->count() == 0) throw ConfigError("missing --delta");
  ClusterOptions o;
  o.delta = f.delta;
  o.seed = f.seed;
  o.max_rounds = f.max_rounds;
  if (f.k_bound > 0) o.k_bound = f.k_bound;
  o.naive = f.naive;
  print_config(Json{{"data", f.data}, {"delta", o.delta}, {"seed", o.seed}, {"max_rounds", o.max_rounds},
                    {"k_bound", f.k_bound == 0 ? Json(nullptr) : Json(f.k_bound)}, {"naive", o.naive}});
  const LabeledDataset data = load_labels(f.data);
  const ClusterResult r = find_largest_cluster(data, o);
  const std::string model = o.naive ? "qm2_naive" : "qm2";
  const std::string csv = fmt::format("{}\n{}\n", trial_csv_header(), trial_csv_row(0, model, r.trial));
  if (f.out.empty()) {
    fmt::print("{}", csv);
  } else {
    std::ofstream os(f.out, std::ios::binary);
    if (!(os << csv)) throw IoError(fmt::format("cannot write '{}'", f.out));
  }
  fmt::print("{}\n", to_json(r).dump());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential mode estimation simulator"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  ExperimentFlags run_flags;
  ExperimentFlags sweep_flags;
  ExperimentFlags profile_flags;
  BoundsFlags bounds_flags;
  ClusterFlags cluster_flags;

  auto* run = app.add_subcommand("run", "Monte-Carlo trials at one distribution; one sweep CSV row");
  add_experiment_flags(run, run_flags, Kind::kRun);
  auto* sweep = app.add_subcommand("sweep", "Trials over a p1 grid at fixed gap");
  add_experiment_flags(sweep, sweep_flags, Kind::kSweep);
  auto* profile = app.add_subcommand("profile", "Per-round query trace of one pairwise run");
  add_experiment_flags(profile, profile_flags, Kind::kProfile);

  auto* bounds = app.add_subcommand("bounds", "Query-complexity bounds for given masses");
  bounds->add_option("--p", bounds_flags.p, "masses, comma separated")->delimiter(',');
  bounds_flags.delta_opt = bounds->add_option("--delta", bounds_flags.delta, "error probability (required)");
  bounds->add_option("--k", bounds_flags.k, "union-bound k, 0 = number of masses");
  bounds->add_option("--m", bounds_flags.m, "set size (topm)");
  bounds->add_option("--model", bounds_flags.model, "qm1, qm2, topm or mab_relaxed");
  bounds->add_flag("--proof-constant", bounds_flags.proof_constant, "use sqrt(2k/delta) in the log term");

  auto* cluster = app.add_subcommand("cluster", "Largest cluster of a labeled dataset");
  cluster->add_option("--data", cluster_flags.data, "CSV of item_id,label")->required();
  cluster_flags.delta_opt = cluster->add_option("--delta", cluster_flags.delta, "error probability (required)");
  cluster->add_option("--seed", cluster_flags.seed, "sampling seed");
  cluster->add_option("--max-rounds", cluster_flags.max_rounds, "round cap");
  cluster->add_option("--k-bound", cluster_flags.k_bound, "union-bound k, 0 = number of labels");
  cluster->add_flag("--naive", cluster_flags.naive, "compare against every bin");
  cluster->add_option("--out", cluster_flags.out, "trial CSV output path (stdout if empty)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
    return kExitConfig;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == run) return cmd_run(run_flags);
    if (active == sweep) return cmd_sweep(sweep_flags);
    if (active == profile) return cmd_profile(profile_flags);
    if (active == bounds) return cmd_bounds(bounds_flags);
    return cmd_cluster(cluster_flags);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active->help() << std::flush;
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
