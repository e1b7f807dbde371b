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
#include <cstddef>
#include <string>
#include <vector>

#include "autobid/market.hpp"
#include "autobid/simplex.hpp"

namespace autobid {

// Offline revenue upper bound: every bidder pays for item j at the rate
// v_{i,j} / R_i, total payment capped by her budget, one unit of each item.
// Any individually rational outcome maps into this polytope with at least
// its revenue as objective, so the optimum dominates every mechanism here.

/// Dense simplex keeps the full tableau in memory; this cap corresponds to
/// roughly 40 bidders x 400 items. Larger settings should scale the item
/// count down instead.
inline constexpr std::size_t kLpMaxVariables = 16000;

inline LinearProgram build_revenue_lp(const Market& market,
                                      const std::vector<BidderType>& types) {
  internal_check(types.size() == market.n_bidders(), "build_revenue_lp: dimension mismatch");
  const std::size_t n = market.n_bidders();
  const std::size_t m = market.n_items();
  if (n * m > kLpMaxVariables)
    throw std::invalid_argument(
        "build_revenue_lp: instance exceeds the dense-simplex size limit (" +
        std::to_string(kLpMaxVariables) + " variables); reduce the number of items");
  LinearProgram lp;
  lp.n_vars = n * m;
  lp.objective.resize(lp.n_vars);
  lp.var_upper.assign(lp.n_vars, 1.0);
  const std::size_t rows = m + n;
  lp.row_coeffs.assign(rows * lp.n_vars, 0.0);
  lp.row_upper.resize(rows);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      lp.objective[i * m + j] = market.value(i, j) / types[i].roi;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) lp.row_coeffs[j * lp.n_vars + i * m + j] = 1.0;
    lp.row_upper[j] = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t row = m + i;
    for (std::size_t j = 0; j < m; ++j)
      lp.row_coeffs[row * lp.n_vars + i * m + j] = lp.objective[i * m + j];
    lp.row_upper[row] = types[i].budget;
  }
  return lp;
}

/// Worst constraint violation of an allocation against the revenue LP
/// (bounds, item capacities, budgets). Zero-ish for a valid solution.
inline double lp_max_violation(const Market& market, const std::vector<BidderType>& types,
                               const std::vector<double>& allocation) {
  const std::size_t n = market.n_bidders();
  const std::size_t m = market.n_items();
  internal_check(allocation.size() == n * m, "lp_max_violation: dimension mismatch");
  double worst = 0.0;
  for (double a : allocation) worst = std::max({worst, -a, a - 1.0});
  for (std::size_t j = 0; j < m; ++j) {
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) mass += allocation[i * m + j];
    worst = std::max(worst, mass - 1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double spend = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      spend += market.value(i, j) / types[i].roi * allocation[i * m + j];
    worst = std::max(worst, spend - types[i].budget);
  }
  return worst;
}

struct LpSolution {
  Outcome outcome;
  double revenue = 0.0;
  std::size_t iterations = 0;
};

/// Solves the revenue LP under the true types. The outcome charges each
/// bidder exactly her LP payment, so revenue equals the objective value.
inline LpSolution solve_optimal_lp(const Market& market,
                                   const std::vector<BidderType>& types) {
  const LinearProgram lp = build_revenue_lp(market, types);
  const SimplexResult res = solve_simplex(lp);
  internal_check(lp_max_violation(market, types, res.x) <= 1e-9,
                 "solve_optimal_lp: solution violates constraints");
  LpSolution out;
  out.revenue = res.objective;
  out.iterations = res.iterations;
  out.outcome = Outcome::zeros(market.n_bidders(), market.n_items());
  out.outcome.allocation = res.x;
  out.outcome.finalize(market);
  for (std::size_t i = 0; i < market.n_bidders(); ++i)
    out.outcome.payments[i] = out.outcome.values[i] / types[i].roi;
  return out;
}

}  // namespace autobid
