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

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "autobid/experiment.hpp"
#include "autobid/feasibility.hpp"
#include "autobid/market.hpp"
#include "autobid/rank_score.hpp"
#include "autobid/sequential.hpp"

namespace autobid {

using json = nlohmann::json;

// File formats:
//   market: {"values": [[..],[..]], "types": [{"budget":.., "roi":..}, ..]}
//   ranks:  {"beta": .., "alpha": [[..],[..]]}
// plus outcome / report / experiment-config JSON and the metrics CSV
// ("mechanism,run,revenue,liquid_welfare,fairness").

struct MarketFile {
  Market market;
  std::vector<BidderType> types;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << '\n';
}

inline MarketFile market_from_json(const json& j) {
  const auto& values = j.at("values");
  if (!values.is_array() || values.empty())
    throw std::invalid_argument("market json: values must be a non-empty array of rows");
  const std::size_t n = values.size();
  const std::size_t m = values.at(0).size();
  std::vector<double> flat;
  flat.reserve(n * m);
  for (const auto& row : values) {
    if (row.size() != m) throw std::invalid_argument("market json: ragged value rows");
    for (const auto& v : row) flat.push_back(v.get<double>());
  }
  std::vector<BidderType> types;
  for (const auto& t : j.at("types"))
    types.push_back({t.at("budget").get<double>(), t.at("roi").get<double>()});
  if (types.size() != n)
    throw std::invalid_argument("market json: one type per bidder required");
  for (const BidderType& t : types) t.validate();
  return {Market(n, m, std::move(flat)), std::move(types)};
}

inline json market_to_json(const Market& market, const std::vector<BidderType>& types) {
  json values = json::array();
  for (std::size_t i = 0; i < market.n_bidders(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < market.n_items(); ++j) row.push_back(market.value(i, j));
    values.push_back(std::move(row));
  }
  json jtypes = json::array();
  for (const BidderType& t : types) jtypes.push_back({{"budget", t.budget}, {"roi", t.roi}});
  return {{"values", std::move(values)}, {"types", std::move(jtypes)}};
}

inline RankScoreFamily ranks_from_json(const json& j, std::size_t n_bidders,
                                       std::size_t n_items) {
  const double beta = j.at("beta").get<double>();
  const auto& alpha = j.at("alpha");
  if (alpha.size() != n_bidders)
    throw std::invalid_argument("ranks json: one alpha row per bidder required");
  std::vector<double> flat;
  flat.reserve(n_bidders * n_items);
  for (const auto& row : alpha) {
    if (row.size() != n_items) throw std::invalid_argument("ranks json: ragged alpha rows");
    for (const auto& a : row) flat.push_back(a.get<double>());
  }
  return RankScoreFamily(n_bidders, n_items, std::move(flat), beta);
}

inline json ranks_to_json(const RankScoreFamily& family) {
  json alpha = json::array();
  for (std::size_t i = 0; i < family.n_bidders(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < family.n_items(); ++j) row.push_back(family.alpha(i, j));
    alpha.push_back(std::move(row));
  }
  return {{"beta", family.beta()}, {"alpha", std::move(alpha)}};
}

inline json ext_real_to_json(const ExtReal& x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return x.value();
}

inline json outcome_to_json(const Outcome& outcome) {
  json allocation = json::array();
  for (std::size_t i = 0; i < outcome.n_bidders; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < outcome.n_items; ++j) row.push_back(outcome.alloc(i, j));
    allocation.push_back(std::move(row));
  }
  return {{"allocation", std::move(allocation)},
          {"payments", outcome.payments},
          {"values", outcome.values},
          {"unsold_mass", outcome.unsold_mass}};
}

inline json metrics_to_json(const MetricsReport& metrics) {
  json rois = json::array();
  json utils = json::array();
  for (const ExtReal& r : metrics.realized_roi) rois.push_back(ext_real_to_json(r));
  for (const ExtReal& u : metrics.utilities) utils.push_back(ext_real_to_json(u));
  return {{"revenue", metrics.revenue},
          {"liquid_welfare", metrics.liquid_welfare},
          {"fairness", metrics.fairness},
          {"realized_roi", std::move(rois)},
          {"utilities", std::move(utils)}};
}

inline json feasibility_report_to_json(const FeasibilityReport& report) {
  json violations = json::array();
  for (const Violation& v : report.violations) {
    json jv = {{"condition", v.condition},
               {"budget", v.budget},
               {"roi", v.roi},
               {"magnitude", v.magnitude},
               {"count", v.count}};
    if (!std::isnan(v.misreport_budget)) {
      jv["misreport_budget"] = v.misreport_budget;
      jv["misreport_roi"] = v.misreport_roi;
    }
    violations.push_back(std::move(jv));
  }
  return {{"passed", report.passed},
          {"violations", std::move(violations)},
          {"grid", {{"budgets", report.grid_budgets}, {"rois", report.grid_rois}}}};
}

inline GeneratorSpec generator_spec_from_json(const json& j) {
  GeneratorSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "symmetric")
    spec.kind = GeneratorKind::kSymmetric;
  else if (kind == "mixed")
    spec.kind = GeneratorKind::kMixed;
  else
    throw std::invalid_argument("generator kind must be symmetric or mixed");
  spec.n_bidders = j.at("n_bidders").get<std::size_t>();
  spec.n_items = j.at("n_items").get<std::size_t>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.validate();
  return spec;
}

inline RankScoreSpec rank_spec_from_json(const json& j) {
  RankScoreSpec spec;
  spec.beta = j.at("beta").get<double>();
  spec.mu = j.at("mu").get<std::vector<double>>();
  spec.sigma = j.at("sigma").get<std::vector<double>>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.validate();
  return spec;
}

inline ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig config;
  config.generator = generator_spec_from_json(j.at("generator"));
  config.ranks = rank_spec_from_json(j.at("ranks"));
  for (const auto& name : j.at("mechanisms")) {
    const auto kind = mechanism_from_name(name.get<std::string>());
    if (!kind) throw std::invalid_argument("unknown mechanism: " + name.get<std::string>());
    config.mechanisms.push_back(*kind);
  }
  if (j.contains("trials")) config.trials = j.at("trials").get<std::size_t>();
  if (j.contains("max_rounds")) config.max_rounds = j.at("max_rounds").get<std::size_t>();
  config.validate();
  return config;
}

/// MetricsReport export rows: one labeled run per line.
struct MetricsCsvRow {
  std::string mechanism;
  std::size_t run = 0;
  MetricsReport metrics;
};

inline void write_metrics_csv(const std::vector<MetricsCsvRow>& rows, std::ostream& out) {
  out << "mechanism,run,revenue,liquid_welfare,fairness\n";
  for (const MetricsCsvRow& row : rows) {
    out << row.mechanism << ',' << row.run << ',' << format_double(row.metrics.revenue) << ','
        << format_double(row.metrics.liquid_welfare) << ','
        << format_double(row.metrics.fairness) << '\n';
  }
}

/// Parses "lo:hi:count" into an inclusive linearly spaced grid.
inline std::vector<double> parse_grid_spec(const std::string& spec) {
  std::istringstream in(spec);
  double lo = 0.0, hi = 0.0;
  std::size_t count = 0;
  char c1 = 0, c2 = 0;
  if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 2 ||
      !(hi > lo))
    throw std::invalid_argument("grid spec must be lo:hi:count with hi > lo and count >= 2");
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k)
    grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
  return grid;
}

}  // namespace autobid
