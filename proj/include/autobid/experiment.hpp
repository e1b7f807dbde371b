// Copyright 2026 The Autobid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "autobid/generators.hpp"
#include "autobid/lp_baseline.hpp"
#include "autobid/market.hpp"
#include "autobid/mechanism.hpp"
#include "autobid/sequential.hpp"

namespace autobid {

// Multi-trial comparison of the truthful auction against the best-response
// baselines and the LP revenue bound on synthetic markets. Trials are
// independent (per-trial derived seeds) and may run in parallel; rows are
// always aggregated in trial order so output bytes never depend on
// scheduling.

enum class MechanismKind { kDsic, kFpaBr, kSpaBr, kLpOpt };

inline const char* mechanism_name(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kDsic: return "dsic";
    case MechanismKind::kFpaBr: return "fpa-br";
    case MechanismKind::kSpaBr: return "spa-br";
    case MechanismKind::kLpOpt: return "lp-opt";
  }
  throw std::invalid_argument("mechanism_name: unknown kind");
}

inline std::optional<MechanismKind> mechanism_from_name(const std::string& name) {
  if (name == "dsic") return MechanismKind::kDsic;
  if (name == "fpa-br") return MechanismKind::kFpaBr;
  if (name == "spa-br") return MechanismKind::kSpaBr;
  if (name == "lp-opt") return MechanismKind::kLpOpt;
  return std::nullopt;
}

struct ExperimentConfig {
  GeneratorSpec generator;
  RankScoreSpec ranks;
  std::vector<MechanismKind> mechanisms;
  std::size_t trials = 50;
  std::size_t max_rounds = 100;

  void validate() const {
    generator.validate();
    ranks.validate();
    if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
    if (mechanisms.empty())
      throw std::invalid_argument("ExperimentConfig: mechanism selection is empty");
    if (max_rounds < 1) throw std::invalid_argument("ExperimentConfig: max_rounds must be >= 1");
  }
};

struct TrialRow {
  std::string mechanism;
  std::size_t trial = 0;
  std::size_t n_bidders = 0;
  std::size_t n_items = 0;
  double beta = 0.0;  // rank-score parameter, carried for sweep grouping
  double revenue = 0.0;
  double liquid_welfare = 0.0;
  double fairness = 0.0;
  bool converged = true;
};

using ExperimentTable = std::vector<TrialRow>;

namespace detail {
inline constexpr std::uint64_t kStreamTrialGen = 0x7472696cULL;
inline constexpr std::uint64_t kStreamTrialRanks = 0x72616e6bULL;

inline std::vector<TrialRow> run_single_trial(const ExperimentConfig& config,
                                              std::size_t trial) {
  GeneratorSpec gen = config.generator;
  gen.seed = derive_seed(config.generator.seed, kStreamTrialGen, trial);
  RankScoreSpec ranks = config.ranks;
  ranks.seed = derive_seed(config.ranks.seed, kStreamTrialRanks, trial);

  const GeneratedMarket gm = generate_market(gen);
  const RankScoreFamily family =
      sample_rank_scores(ranks, gm.groups, gen.n_bidders, gen.n_items);

  std::vector<TrialRow> rows;
  rows.reserve(config.mechanisms.size());
  for (MechanismKind kind : config.mechanisms) {
    TrialRow row;
    row.mechanism = mechanism_name(kind);
    row.trial = trial;
    row.n_bidders = gen.n_bidders;
    row.n_items = gen.n_items;
    row.beta = config.ranks.beta;
    Outcome outcome;
    switch (kind) {
      case MechanismKind::kDsic:
        outcome = run_truthful_auction(gm.market, gm.types, family);
        break;
      case MechanismKind::kFpaBr:
      case MechanismKind::kSpaBr: {
        SequentialAuctionConfig seq;
        seq.form = kind == MechanismKind::kFpaBr ? AuctionForm::kFirstPrice
                                                 : AuctionForm::kSecondPrice;
        const DynamicsResult dyn =
            best_response_dynamics(gm.market, gm.types, seq, config.max_rounds);
        outcome = dyn.outcome;
        row.converged = dyn.converged;
        break;
      }
      case MechanismKind::kLpOpt:
        outcome = solve_optimal_lp(gm.market, gm.types).outcome;
        break;
    }
    const MetricsReport metrics = compute_metrics(gm.market, gm.types, outcome);
    row.revenue = metrics.revenue;
    row.liquid_welfare = metrics.liquid_welfare;
    row.fairness = metrics.fairness;
    rows.push_back(std::move(row));
  }
  return rows;
}
}  // namespace detail

inline ExperimentTable run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (std::find(config.mechanisms.begin(), config.mechanisms.end(), MechanismKind::kLpOpt) !=
      config.mechanisms.end()) {
    // Fail before spending time on trials when the LP would refuse anyway.
    if (config.generator.n_bidders * config.generator.n_items > kLpMaxVariables)
      throw std::invalid_argument(
          "run_experiment: lp-opt exceeds the dense-simplex size limit; "
          "reduce the number of items or drop lp-opt");
  }

  std::vector<std::vector<TrialRow>> per_trial(config.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t hw = std::thread::hardware_concurrency();
  const std::size_t workers = std::min<std::size_t>(config.trials, hw == 0 ? 1 : hw);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t; (t = next.fetch_add(1)) < config.trials;) {
        try {
          per_trial[t] = detail::run_single_trial(config, t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  ExperimentTable table;
  table.reserve(config.trials * config.mechanisms.size());
  for (std::vector<TrialRow>& rows : per_trial)
    for (TrialRow& row : rows) table.push_back(std::move(row));
  return table;
}

/// Shortest round-trip decimal representation; keeps CSV output byte-stable.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline void write_results_csv(const ExperimentTable& table, std::ostream& out) {
  out << "mechanism,trial,n_bidders,n_items,revenue,liquid_welfare,fairness,converged\n";
  for (const TrialRow& row : table) {
    out << row.mechanism << ',' << row.trial << ',' << row.n_bidders << ',' << row.n_items
        << ',' << format_double(row.revenue) << ',' << format_double(row.liquid_welfare)
        << ',' << format_double(row.fairness) << ',' << (row.converged ? 1 : 0) << '\n';
  }
}

struct MetricSummary {
  std::string mechanism;
  std::string metric;
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t n = 0;
};

namespace detail {
inline double row_metric(const TrialRow& row, const std::string& metric) {
  if (metric == "revenue") return row.revenue;
  if (metric == "liquid_welfare") return row.liquid_welfare;
  if (metric == "fairness") return row.fairness;
  throw std::invalid_argument("unknown metric: " + metric);
}

inline const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names{"revenue", "liquid_welfare", "fairness"};
  return names;
}

inline std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return {mean, sd / std::sqrt(static_cast<double>(xs.size()))};
}
}  // namespace detail

/// Per-mechanism mean and standard error of each metric.
inline std::vector<MetricSummary> summarize(const ExperimentTable& table) {
  if (table.empty()) throw std::invalid_argument("summarize: empty table");
  std::map<std::string, std::vector<const TrialRow*>> by_mechanism;
  for (const TrialRow& row : table) by_mechanism[row.mechanism].push_back(&row);
  std::vector<MetricSummary> out;
  for (const auto& [mech, rows] : by_mechanism) {
    for (const std::string& metric : detail::metric_names()) {
      std::vector<double> xs;
      xs.reserve(rows.size());
      for (const TrialRow* row : rows) xs.push_back(detail::row_metric(*row, metric));
      const auto [mean, se] = detail::mean_stderr(xs);
      out.push_back({mech, metric, mean, se, xs.size()});
    }
  }
  return out;
}

enum class SweepAxis { kBidders, kItems, kBeta };

inline std::optional<SweepAxis> axis_from_name(const std::string& name) {
  if (name == "bidders") return SweepAxis::kBidders;
  if (name == "items") return SweepAxis::kItems;
  if (name == "beta") return SweepAxis::kBeta;
  return std::nullopt;
}

/// Grouped mean/stderr series over the swept axis, one file per
/// (mechanism, metric): "<mechanism>_<metric>.csv" with header
/// "<axis>,mean,stderr". Rows are sorted by x; ordering is deterministic.
inline std::vector<std::filesystem::path> emit_plot_data(
    const ExperimentTable& table, SweepAxis axis, const std::filesystem::path& out_dir) {
  if (table.empty()) throw std::invalid_argument("emit_plot_data: empty table");
  const char* axis_name = axis == SweepAxis::kBidders ? "bidders"
                          : axis == SweepAxis::kItems ? "items"
                                                      : "beta";
  auto x_of = [&](const TrialRow& row) {
    switch (axis) {
      case SweepAxis::kBidders: return static_cast<double>(row.n_bidders);
      case SweepAxis::kItems: return static_cast<double>(row.n_items);
      case SweepAxis::kBeta: return row.beta;
    }
    throw std::invalid_argument("emit_plot_data: unknown axis");
  };

  std::filesystem::create_directories(out_dir);
  // mechanism -> x -> rows
  std::map<std::string, std::map<double, std::vector<const TrialRow*>>> grouped;
  for (const TrialRow& row : table) grouped[row.mechanism][x_of(row)].push_back(&row);

  std::vector<std::filesystem::path> written;
  for (const auto& [mech, series] : grouped) {
    for (const std::string& metric : detail::metric_names()) {
      const std::filesystem::path path = out_dir / (mech + "_" + metric + ".csv");
      std::ofstream out(path);
      if (!out) throw std::runtime_error("emit_plot_data: cannot open " + path.string());
      out << axis_name << ",mean,stderr\n";
      for (const auto& [x, rows] : series) {
        std::vector<double> xs;
        xs.reserve(rows.size());
        for (const TrialRow* row : rows) xs.push_back(detail::row_metric(*row, metric));
        const auto [mean, se] = detail::mean_stderr(xs);
        out << format_double(x) << ',' << format_double(mean) << ',' << format_double(se)
            << '\n';
      }
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace autobid
