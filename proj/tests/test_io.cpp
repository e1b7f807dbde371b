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

#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "autobid/io.hpp"

using namespace autobid;

TEST_CASE("market json round trip") {
  const json j = {{"values", {{4.0, 4.0}, {1.0, 1.0}}},
                  {"types", {{{"budget", 3.0}, {"roi", 2.0}}, {{"budget", 6.0}, {"roi", 1.5}}}}};
  const MarketFile mf = market_from_json(j);
  CHECK(mf.market.n_bidders() == 2);
  CHECK(mf.market.value(0, 1) == 4.0);
  CHECK(mf.types[1].roi == 1.5);
  CHECK(market_to_json(mf.market, mf.types) == j);
}

TEST_CASE("market json validation") {
  CHECK_THROWS(market_from_json({{"values", {{4.0}, {1.0}}},
                                 {"types", {{{"budget", 3.0}, {"roi", 2.0}}}}}));
  CHECK_THROWS(market_from_json({{"values", {{4.0, 4.0}, {1.0}}},
                                 {"types",
                                  {{{"budget", 3.0}, {"roi", 2.0}},
                                   {{"budget", 6.0}, {"roi", 1.5}}}}}));
  CHECK_THROWS(market_from_json({{"values", {{4.0}}},
                                 {"types", {{{"budget", 3.0}, {"roi", -2.0}}}}}));
}

TEST_CASE("ranks json round trip") {
  const json j = {{"beta", 0.5}, {"alpha", {{1.0, 0.5}, {0.0, 2.0}}}};
  const RankScoreFamily family = ranks_from_json(j, 2, 2);
  CHECK(family.beta() == 0.5);
  CHECK(family.alpha(1, 1) == 2.0);
  CHECK(ranks_to_json(family) == j);
  CHECK_THROWS(ranks_from_json(j, 3, 2));
}

TEST_CASE("outcome and metrics json shapes") {
  Market market(1, 1, {4.0});
  Outcome o = Outcome::zeros(1, 1);
  o.alloc(0, 0) = 0.5;
  o.finalize(market);
  o.payments[0] = 1.0;
  const json jo = outcome_to_json(o);
  CHECK(jo.at("allocation")[0][0] == 0.5);
  CHECK(jo.at("payments")[0] == 1.0);
  CHECK(jo.at("values")[0] == 2.0);
  CHECK(jo.at("unsold_mass")[0] == 0.5);
  const MetricsReport metrics = compute_metrics(market, {{3.0, 2.0}}, o);
  const json jm = metrics_to_json(metrics);
  CHECK(jm.at("revenue") == 1.0);
  CHECK(jm.at("realized_roi")[0] == 2.0);
  // zero-payment sentinel serializes as a string
  Outcome free_outcome = Outcome::zeros(1, 1);
  free_outcome.finalize(market);
  const json jfree = metrics_to_json(compute_metrics(market, {{3.0, 2.0}}, free_outcome));
  CHECK(jfree.at("realized_roi")[0] == "inf");
}

TEST_CASE("feasibility report json") {
  FeasibilityReport report;
  report.grid_budgets = 5;
  report.grid_rois = 7;
  report.record({"DSIC", 3.0, 2.0, 3.0, 4.0, 4.0});
  const json j = feasibility_report_to_json(report);
  CHECK(j.at("passed") == false);
  CHECK(j.at("violations")[0].at("condition") == "DSIC");
  CHECK(j.at("violations")[0].at("misreport_roi") == 4.0);
  CHECK(j.at("grid").at("budgets") == 5);
}

TEST_CASE("experiment config json mirrors the struct") {
  const json j = {{"generator",
                   {{"kind", "symmetric"}, {"n_bidders", 10}, {"n_items", 50}, {"seed", 42}}},
                  {"ranks", {{"beta", 0.5}, {"mu", {1.0}}, {"sigma", {0.3}}, {"seed", 7}}},
                  {"mechanisms", {"dsic", "lp-opt"}},
                  {"trials", 20},
                  {"max_rounds", 80}};
  const ExperimentConfig config = experiment_config_from_json(j);
  CHECK(config.generator.n_items == 50);
  CHECK(config.ranks.beta == 0.5);
  REQUIRE(config.mechanisms.size() == 2);
  CHECK(config.mechanisms[1] == MechanismKind::kLpOpt);
  CHECK(config.trials == 20);
  json bad = j;
  bad["mechanisms"] = {"vcg"};
  CHECK_THROWS(experiment_config_from_json(bad));
}

TEST_CASE("metrics csv export") {
  Market market(1, 1, {4.0});
  Outcome o = Outcome::zeros(1, 1);
  o.alloc(0, 0) = 1.0;
  o.finalize(market);
  o.payments[0] = 2.0;
  const MetricsReport metrics = compute_metrics(market, {{3.0, 2.0}}, o);
  std::ostringstream out;
  write_metrics_csv({{"dsic", 0, metrics}}, out);
  CHECK(out.str() == "mechanism,run,revenue,liquid_welfare,fairness\ndsic,0,2,2,2\n");
}

TEST_CASE("grid spec parsing") {
  const auto grid = parse_grid_spec("0:10:101");
  REQUIRE(grid.size() == 101);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 10.0);
  CHECK(grid[50] == Catch::Approx(5.0).margin(1e-12));
  CHECK_THROWS(parse_grid_spec("5:1:10"));
  CHECK_THROWS(parse_grid_spec("1:5:1"));
  CHECK_THROWS(parse_grid_spec("nonsense"));
}
