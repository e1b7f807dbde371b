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

// One-off grid search for the committed rank-score presets: sweeps
// (beta, sigma) at mu = 1 for a given market size and reports mean truthful
// revenue (and the LP ratio when feasible). The winners are copied into
// data/presets.json by hand.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "autobid/experiment.hpp"

using namespace autobid;

int main(int argc, char** argv) {
  CLI::App app{"Grid-search rank-score parameters for a market setting"};
  std::size_t n_bidders = 10, n_items = 50, trials = 30;
  std::uint64_t seed = 20240501;
  bool mixed = false;
  bool with_lp = true;
  app.add_option("--bidders", n_bidders);
  app.add_option("--items", n_items);
  app.add_option("--trials", trials);
  app.add_option("--seed", seed);
  app.add_flag("--mixed", mixed, "Use the 8-group mixed generator");
  app.add_flag("--no-lp", [&](std::int64_t) { with_lp = false; }, "Skip the LP reference");
  CLI11_PARSE(app, argc, argv);

  const std::vector<double> betas{0.1,  0.15, 0.2, 0.25, 0.275, 0.3, 0.325,
                                  0.35, 0.4,  0.5, 0.75, 1.0,   1.5, 2.0,  3.0};
  const std::vector<double> sigmas{0.0, 0.1, 0.25, 0.5, 1.0};
  const std::size_t groups = mixed ? 8 : 1;

  double lp_mean = 0.0;
  if (with_lp) {
    ExperimentConfig lp_config;
    lp_config.generator = {mixed ? GeneratorKind::kMixed : GeneratorKind::kSymmetric,
                           n_bidders, n_items, seed};
    lp_config.ranks = {1.0, std::vector<double>(groups, 1.0),
                       std::vector<double>(groups, 0.0), seed + 1};
    lp_config.mechanisms = {MechanismKind::kLpOpt};
    lp_config.trials = trials;
    for (const MetricSummary& s : summarize(run_experiment(lp_config)))
      if (s.metric == "revenue") lp_mean = s.mean;
    std::cout << "lp-opt mean revenue: " << lp_mean << "\n";
  }

  double best_rev = -1.0, best_beta = 0.0, best_sigma = 0.0;
  for (double beta : betas) {
    for (double sigma : sigmas) {
      ExperimentConfig config;
      config.generator = {mixed ? GeneratorKind::kMixed : GeneratorKind::kSymmetric,
                          n_bidders, n_items, seed};
      config.ranks = {beta, std::vector<double>(groups, 1.0),
                      std::vector<double>(groups, sigma), seed + 1};
      config.mechanisms = {MechanismKind::kDsic};
      config.trials = trials;
      double rev = 0.0, fair = 0.0;
      for (const MetricSummary& s : summarize(run_experiment(config))) {
        if (s.metric == "revenue") rev = s.mean;
        if (s.metric == "fairness") fair = s.mean;
      }
      std::cout << "beta=" << beta << " sigma=" << sigma << " revenue=" << rev
                << " fairness=" << fair;
      if (with_lp && lp_mean > 0.0) std::cout << " lp-ratio=" << rev / lp_mean;
      std::cout << "\n";
      if (rev > best_rev) {
        best_rev = rev;
        best_beta = beta;
        best_sigma = sigma;
      }
    }
  }
  std::cout << "best: beta=" << best_beta << " sigma=" << best_sigma
            << " revenue=" << best_rev;
  if (with_lp && lp_mean > 0.0) std::cout << " lp-ratio=" << best_rev / lp_mean;
  std::cout << "\n";
  return 0;
}
