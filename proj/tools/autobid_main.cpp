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

// Command-line front end: run the truthful auction, verify truthfulness
// structure on a grid, run the best-response baselines, solve the LP revenue
// bound, and drive multi-trial experiments.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "autobid/autobid.hpp"
#include "autobid/io.hpp"

namespace {

using namespace autobid;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json_file(out_path, j);
}

int cmd_run_auction(const std::string& market_path, const std::string& ranks_path,
                    const std::string& report_types_path, const std::string& out_path) {
  const MarketFile mf = market_from_json(read_json_file(market_path));
  const RankScoreFamily family =
      ranks_from_json(read_json_file(ranks_path), mf.market.n_bidders(), mf.market.n_items());
  std::vector<BidderType> reports = mf.types;
  if (!report_types_path.empty())
    reports = market_from_json(
                  json{{"values", read_json_file(market_path).at("values")},
                       {"types", read_json_file(report_types_path).at("types")}})
                  .types;
  const Outcome outcome = run_truthful_auction(mf.market, reports, family);
  const MetricsReport metrics = compute_metrics(mf.market, mf.types, outcome);
  json j = outcome_to_json(outcome);
  j["metrics"] = metrics_to_json(metrics);
  emit(j, out_path);
  return 0;
}

int cmd_verify(const std::string& market_path, const std::string& ranks_path,
               std::size_t bidder, const std::string& b_grid, const std::string& r_grid,
               const std::string& out_path) {
  const MarketFile mf = market_from_json(read_json_file(market_path));
  if (bidder >= mf.market.n_bidders()) throw CLI::ValidationError("--bidder out of range");
  const RankScoreFamily family =
      ranks_from_json(read_json_file(ranks_path), mf.market.n_bidders(), mf.market.n_items());
  const auto mechanism = [&](const std::vector<BidderType>& reports) {
    return run_truthful_auction(mf.market, reports, family);
  };
  const ValueGrid grid = sample_value_grid(mechanism, bidder, mf.types,
                                           parse_grid_spec(b_grid), parse_grid_spec(r_grid));
  const FeasibilityReport report = check_feasibility_conditions(grid);
  emit(feasibility_report_to_json(report), out_path);
  return report.passed ? 0 : 1;
}

int cmd_best_response(const std::string& market_path, const std::string& form,
                      std::size_t max_rounds, const std::string& out_path) {
  const MarketFile mf = market_from_json(read_json_file(market_path));
  SequentialAuctionConfig config;
  if (form == "fp")
    config.form = AuctionForm::kFirstPrice;
  else if (form == "sp")
    config.form = AuctionForm::kSecondPrice;
  else
    throw CLI::ValidationError("--form must be fp or sp");
  const DynamicsResult result = best_response_dynamics(mf.market, mf.types, config, max_rounds);
  json reports = json::array();
  for (const BidderType& t : result.final_reports)
    reports.push_back({{"budget", t.budget}, {"roi", t.roi}});
  json j = {{"reports", std::move(reports)},
            {"converged", result.converged},
            {"rounds", result.rounds},
            {"outcome", outcome_to_json(result.outcome)},
            {"metrics", metrics_to_json(compute_metrics(mf.market, mf.types, result.outcome))}};
  emit(j, out_path);
  return 0;
}

int cmd_lp_opt(const std::string& market_path, const std::string& out_path) {
  const MarketFile mf = market_from_json(read_json_file(market_path));
  const LpSolution sol = solve_optimal_lp(mf.market, mf.types);
  json allocation = json::array();
  for (std::size_t i = 0; i < mf.market.n_bidders(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < mf.market.n_items(); ++j)
      row.push_back(sol.outcome.alloc(i, j));
    allocation.push_back(std::move(row));
  }
  emit({{"allocation", std::move(allocation)},
        {"revenue", sol.revenue},
        {"payments", sol.outcome.payments}},
       out_path);
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_path) {
  const ExperimentConfig config = experiment_config_from_json(read_json_file(config_path));
  const ExperimentTable table = run_experiment(config);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  write_results_csv(table, out);
  for (const MetricSummary& s : summarize(table))
    std::cout << s.mechanism << ' ' << s.metric << ": mean " << format_double(s.mean)
              << " stderr " << format_double(s.stderr_mean) << " (n=" << s.n << ")\n";
  return 0;
}

ExperimentTable read_results_csv(const std::string& path, double beta) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) ||
      line != "mechanism,trial,n_bidders,n_items,revenue,liquid_welfare,fairness,converged")
    throw std::runtime_error(path + ": not a results csv");
  ExperimentTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    TrialRow r;
    std::string field;
    std::getline(row, r.mechanism, ',');
    std::getline(row, field, ',');
    r.trial = std::stoull(field);
    std::getline(row, field, ',');
    r.n_bidders = std::stoull(field);
    std::getline(row, field, ',');
    r.n_items = std::stoull(field);
    std::getline(row, field, ',');
    r.revenue = std::stod(field);
    std::getline(row, field, ',');
    r.liquid_welfare = std::stod(field);
    std::getline(row, field, ',');
    r.fairness = std::stod(field);
    std::getline(row, field, ',');
    r.converged = field == "1";
    r.beta = beta;
    table.push_back(std::move(r));
  }
  return table;
}

int cmd_plot_data(const std::vector<std::string>& in_paths, const std::vector<double>& betas,
                  const std::string& axis_name, const std::string& out_dir) {
  const auto axis = axis_from_name(axis_name);
  if (!axis) throw CLI::ValidationError("--axis must be bidders, items or beta");
  if (*axis == SweepAxis::kBeta && betas.size() != in_paths.size())
    throw CLI::ValidationError(
        "--axis beta needs one --beta per --in file (the results csv does not carry beta)");
  ExperimentTable table;
  for (std::size_t k = 0; k < in_paths.size(); ++k) {
    const double beta = k < betas.size() ? betas[k] : 0.0;
    const ExperimentTable part = read_results_csv(in_paths[k], beta);
    table.insert(table.end(), part.begin(), part.end());
  }
  const auto files = emit_plot_data(table, *axis, out_dir);
  for (const auto& f : files) std::cout << f.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truthful auto-bidding auctions: mechanism, verifiers, baselines, experiments"};
  app.require_subcommand(1);

  std::string market_path, ranks_path, report_types_path, out_path;
  std::string b_grid = "0:10:101", r_grid = "0.25:5:101";
  std::size_t bidder = 0;
  std::string form = "fp";
  std::size_t max_rounds = 100;
  std::string config_path;
  std::vector<std::string> in_paths;
  std::vector<double> betas;
  std::string axis_name = "items";

  auto* run = app.add_subcommand("run-auction", "Run the truthful rank-score auction");
  run->add_option("--market", market_path, "Market json")->required();
  run->add_option("--ranks", ranks_path, "Rank-score json")->required();
  run->add_option("--report-types", report_types_path,
                  "Optional json with reported types overriding the market file");
  run->add_option("--out", out_path, "Output json path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Grid-check truthfulness structure");
  verify->add_option("--market", market_path, "Market json")->required();
  verify->add_option("--ranks", ranks_path, "Rank-score json")->required();
  verify->add_option("--bidder", bidder, "Bidder index to probe")->required();
  verify->add_option("--b-grid", b_grid, "Budget grid lo:hi:count");
  verify->add_option("--r-grid", r_grid, "ROI grid lo:hi:count");
  verify->add_option("--out", out_path, "Output json path (default stdout)");

  auto* br = app.add_subcommand("best-response", "Best-response dynamics baseline");
  br->add_option("--market", market_path, "Market json")->required();
  br->add_option("--form", form, "fp or sp")->required();
  br->add_option("--max-rounds", max_rounds, "Round cap");
  br->add_option("--out", out_path, "Output json path (default stdout)");

  auto* lp = app.add_subcommand("lp-opt", "Offline optimal-revenue LP");
  lp->add_option("--market", market_path, "Market json")->required();
  lp->add_option("--out", out_path, "Output json path (default stdout)");

  auto* exp = app.add_subcommand("experiment", "Multi-trial mechanism comparison");
  exp->add_option("--config", config_path, "Experiment config json")->required();
  exp->add_option("--out", out_path, "Results csv path")->required();

  auto* plot = app.add_subcommand("plot-data", "Aggregate results into plot series");
  plot->add_option("--in", in_paths, "Results csv (repeatable)")->required();
  plot->add_option("--beta", betas, "Beta per --in file (only for --axis beta)");
  plot->add_option("--axis", axis_name, "bidders, items or beta");
  plot->add_option("--out", out_path, "Series output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run_auction(market_path, ranks_path, report_types_path, out_path);
    if (verify->parsed()) return cmd_verify(market_path, ranks_path, bidder, b_grid, r_grid, out_path);
    if (br->parsed()) return cmd_best_response(market_path, form, max_rounds, out_path);
    if (lp->parsed()) return cmd_lp_opt(market_path, out_path);
    if (exp->parsed()) return cmd_experiment(config_path, out_path);
    if (plot->parsed()) return cmd_plot_data(in_paths, betas, axis_name, out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
