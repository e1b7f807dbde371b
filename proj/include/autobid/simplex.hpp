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
#include <limits>
#include <stdexcept>
#include <vector>

#include "autobid/numeric.hpp"

namespace autobid {

/// maximize c.x  subject to  A x <= b,  0 <= x <= upper.
///
/// b must be non-negative so the all-slack basis is feasible; the auction
/// LPs built here always satisfy that.
struct LinearProgram {
  std::size_t n_vars = 0;
  std::vector<double> objective;   // n_vars
  std::vector<double> row_coeffs;  // n_rows x n_vars, row-major
  std::vector<double> row_upper;   // n_rows, each >= 0
  std::vector<double> var_upper;   // n_vars, +inf for unbounded

  std::size_t n_rows() const { return row_upper.size(); }

  void validate() const {
    if (objective.size() != n_vars || var_upper.size() != n_vars)
      throw std::invalid_argument("LinearProgram: vector sizes do not match n_vars");
    if (row_coeffs.size() != n_rows() * n_vars)
      throw std::invalid_argument("LinearProgram: row_coeffs dimensions do not match");
    for (double b : row_upper)
      if (!(b >= 0.0)) throw std::invalid_argument("LinearProgram: row bounds must be >= 0");
    for (double u : var_upper)
      if (!(u >= 0.0)) throw std::invalid_argument("LinearProgram: var bounds must be >= 0");
  }
};

struct SimplexResult {
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
};

/// Dense primal simplex with upper-bounded variables and Bland's smallest-
/// index anti-cycling rule. Exact for the scales used here; feasibility and
/// optimality are decided at `tol`.
inline SimplexResult solve_simplex(const LinearProgram& lp, double tol = 1e-9) {
  lp.validate();
  const std::size_t n = lp.n_vars;
  const std::size_t m = lp.n_rows();
  const std::size_t total = n + m;  // structural vars then one slack per row
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Row-reduced tableau over all variables; slack columns start as identity.
  std::vector<double> tab(m * total, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) tab[r * total + j] = lp.row_coeffs[r * n + j];
    tab[r * total + n + r] = 1.0;
  }
  std::vector<double> cost(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];

  auto upper = [&](std::size_t j) { return j < n ? lp.var_upper[j] : kInf; };

  enum class Status { kAtLower, kAtUpper, kBasic };
  std::vector<Status> status(total, Status::kAtLower);
  std::vector<std::size_t> basis(m);
  std::vector<double> basic_val(m);
  for (std::size_t r = 0; r < m; ++r) {
    basis[r] = n + r;
    status[n + r] = Status::kBasic;
    basic_val[r] = lp.row_upper[r];
  }

  const std::size_t max_iters = 1000 + 200 * total;
  SimplexResult result;
  for (;; ++result.iterations) {
    internal_check(result.iterations < max_iters, "solve_simplex: iteration limit hit");

    // Entering variable: Bland's rule, smallest index with a profitable
    // direction (increase from lower bound, decrease from upper bound).
    std::size_t enter = total;
    double dir = 0.0;
    for (std::size_t j = 0; j < total; ++j) {
      if (status[j] == Status::kBasic) continue;
      if (status[j] == Status::kAtLower && cost[j] > tol) {
        enter = j;
        dir = 1.0;
        break;
      }
      if (status[j] == Status::kAtUpper && cost[j] < -tol) {
        enter = j;
        dir = -1.0;
        break;
      }
    }
    if (enter == total) break;  // optimal

    // Ratio test: how far the entering variable can move before a basic
    // variable hits one of its bounds or the entering variable hits its own.
    double best_t = upper(enter);  // own-bound flip distance
    std::size_t leave_row = m;     // m means bound flip
    bool leave_at_upper = false;
    for (std::size_t r = 0; r < m; ++r) {
      const double rate = -tab[r * total + enter] * dir;  // d basic_val[r] / dt
      if (rate < -tol) {
        const double t = basic_val[r] / (-rate);
        if (t < best_t - tol ||
            (t < best_t + tol && (leave_row == m || basis[r] < basis[leave_row]))) {
          best_t = std::min(t, best_t);
          leave_row = r;
          leave_at_upper = false;
        }
      } else if (rate > tol && upper(basis[r]) < kInf) {
        const double t = (upper(basis[r]) - basic_val[r]) / rate;
        if (t < best_t - tol ||
            (t < best_t + tol && (leave_row == m || basis[r] < basis[leave_row]))) {
          best_t = std::min(t, best_t);
          leave_row = r;
          leave_at_upper = true;
        }
      }
    }
    internal_check(std::isfinite(best_t), "solve_simplex: unbounded direction");
    best_t = std::max(best_t, 0.0);

    for (std::size_t r = 0; r < m; ++r)
      basic_val[r] += -tab[r * total + enter] * dir * best_t;

    if (leave_row == m) {
      // Bound flip, no basis change.
      status[enter] = dir > 0.0 ? Status::kAtUpper : Status::kAtLower;
      continue;
    }

    const std::size_t leave = basis[leave_row];
    const double enter_start = status[enter] == Status::kAtUpper ? upper(enter) : 0.0;
    const double enter_val = enter_start + dir * best_t;

    // Pivot: entering column becomes the identity column of leave_row.
    const double pivot = tab[leave_row * total + enter];
    internal_check(std::fabs(pivot) > 1e-12, "solve_simplex: numerically singular pivot");
    for (std::size_t j = 0; j < total; ++j) tab[leave_row * total + j] /= pivot;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave_row) continue;
      const double factor = tab[r * total + enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < total; ++j)
        tab[r * total + j] -= factor * tab[leave_row * total + j];
    }
    const double cost_factor = cost[enter];
    if (cost_factor != 0.0)
      for (std::size_t j = 0; j < total; ++j)
        cost[j] -= cost_factor * tab[leave_row * total + j];

    status[leave] = leave_at_upper ? Status::kAtUpper : Status::kAtLower;
    status[enter] = Status::kBasic;
    basis[leave_row] = enter;
    basic_val[leave_row] = enter_val;
  }

  result.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    if (status[j] == Status::kAtUpper) result.x[j] = lp.var_upper[j];
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) result.x[basis[r]] = basic_val[r];
  for (std::size_t j = 0; j < n; ++j) {
    result.x[j] = std::clamp(result.x[j], 0.0, lp.var_upper[j]);
    result.objective += lp.objective[j] * result.x[j];
  }
  return result;
}

}  // namespace autobid
