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
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "autobid/market.hpp"
#include "autobid/numeric.hpp"

namespace autobid {

// Grid-based verifiers for the truthfulness structure of a black-box
// mechanism. The checks are discrete analogs of the exact conditions:
// one-sided limits are approximated by adjacent grid cells, so every verdict
// is sound up to the grid resolution, which the report carries alongside the
// results.

/// Cumulative values of one bidder sampled over a budget x ROI grid,
/// everything else held fixed.
struct ValueGrid {
  std::vector<double> budgets;  // ascending, >= 0
  std::vector<double> rois;     // ascending, > 0
  std::vector<double> values;   // budgets.size() x rois.size(), row-major

  double v(std::size_t b_idx, std::size_t r_idx) const {
    return values[b_idx * rois.size() + r_idx];
  }

  void validate() const {
    if (budgets.size() < 2 || rois.size() < 2)
      throw std::invalid_argument("ValueGrid: need at least 2 points per axis");
    if (values.size() != budgets.size() * rois.size())
      throw std::invalid_argument("ValueGrid: value matrix dimensions do not match");
    for (std::size_t k = 1; k < budgets.size(); ++k)
      if (!(budgets[k] > budgets[k - 1]))
        throw std::invalid_argument("ValueGrid: budgets must be strictly ascending");
    if (!(budgets.front() >= 0.0))
      throw std::invalid_argument("ValueGrid: budgets must be >= 0");
    if (!(rois.front() > 0.0))
      throw std::invalid_argument("ValueGrid: rois must be > 0");
    for (std::size_t l = 1; l < rois.size(); ++l)
      if (!(rois[l] > rois[l - 1]))
        throw std::invalid_argument("ValueGrid: rois must be strictly ascending");
    for (double x : values)
      if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("ValueGrid: values must be finite and >= 0");
  }
};

/// One verified-condition failure; for the deviation checks the witness also
/// carries the profitable misreport.
struct Violation {
  std::string condition;
  double budget = 0.0;
  double roi = 0.0;
  double misreport_budget = std::numeric_limits<double>::quiet_NaN();
  double misreport_roi = std::numeric_limits<double>::quiet_NaN();
  double magnitude = 0.0;
  std::size_t count = 1;  // occurrences aggregated into this condition entry
};

/// Verdict of a verifier pass: per condition, the worst witnessed violation.
struct FeasibilityReport {
  bool passed = true;
  std::vector<Violation> violations;  // one entry per condition id, sorted by id
  std::size_t grid_budgets = 0;
  std::size_t grid_rois = 0;

  void record(const Violation& v) {
    passed = false;
    for (Violation& existing : violations) {
      if (existing.condition != v.condition) continue;
      existing.count += 1;
      if (v.magnitude > existing.magnitude) {
        const std::size_t n = existing.count;
        existing = v;
        existing.count = n;
      }
      return;
    }
    violations.push_back(v);
    std::sort(violations.begin(), violations.end(),
              [](const Violation& a, const Violation& b) { return a.condition < b.condition; });
  }
};

namespace detail {
// Index of the largest grid ROI R with v(B, R) >= B * R (tolerance-aware),
// or nullopt when no grid point qualifies.
inline std::optional<std::size_t> threshold_index(const ValueGrid& grid, std::size_t b_idx,
                                                  double tol) {
  const double budget = grid.budgets[b_idx];
  std::optional<std::size_t> found;
  for (std::size_t l = 0; l < grid.rois.size(); ++l)
    if (grid.v(b_idx, l) >= budget * grid.rois[l] - tol) found = l;
  return found;
}
}  // namespace detail

/// Threshold ROI at a grid budget: sup over the ROI grid of
/// {R : v(B, R) >= B * R}; 0 when the set is empty, +inf when B == 0.
inline ExtReal threshold_from_values(const ValueGrid& grid, double budget,
                                     double tol = kMoneyTol) {
  grid.validate();
  if (budget == 0.0) return ExtReal::pos_inf();
  for (std::size_t k = 0; k < grid.budgets.size(); ++k) {
    if (!approx_eq(grid.budgets[k], budget, kExactTol)) continue;
    const auto idx = detail::threshold_index(grid, k, tol);
    return ExtReal::finite(idx ? grid.rois[*idx] : 0.0);
  }
  throw std::invalid_argument("threshold_from_values: budget not on the grid");
}

/// Checks the structural conditions any truthful rule's value grid must
/// satisfy. Condition ids:
///   T3.5-1B  non-decreasing in budget
///   T3.5-1R  non-increasing in ROI
///   T3.5-2   a budget increase of the value forces v >= B * R
///   T3.5-3   a ROI decrease of the value forces v <= B * R
///   T3.6     constancy at thr * B at and below the threshold ROI
///   T3.7     flatness in budget strictly above the threshold ROI
///   LemmaA1  diagonal grouping of equal values
inline FeasibilityReport check_feasibility_conditions(const ValueGrid& grid,
                                                      double tol = kMoneyTol) {
  grid.validate();
  FeasibilityReport report;
  report.grid_budgets = grid.budgets.size();
  report.grid_rois = grid.rois.size();
  const std::size_t nb = grid.budgets.size();
  const std::size_t nr = grid.rois.size();

  // Monotonicity on both axes.
  for (std::size_t l = 0; l < nr; ++l) {
    for (std::size_t k = 1; k < nb; ++k) {
      const double lo = grid.v(k - 1, l), hi = grid.v(k, l);
      if (hi < lo - tol)
        report.record({"T3.5-1B", grid.budgets[k], grid.rois[l], NAN, NAN, lo - hi});
    }
  }
  for (std::size_t k = 0; k < nb; ++k) {
    for (std::size_t l = 1; l < nr; ++l) {
      const double lo = grid.v(k, l - 1), hi = grid.v(k, l);
      if (hi > lo + tol)
        report.record({"T3.5-1R", grid.budgets[k], grid.rois[l], NAN, NAN, hi - lo});
    }
  }

  // Jump conditions. The exact statements constrain the value at the point
  // where it moves; on a grid the move may sit anywhere inside the cell, so
  // the bound uses the cell edge nearer the smaller value.
  for (std::size_t l = 0; l < nr; ++l) {
    for (std::size_t k = 1; k < nb; ++k) {
      if (grid.v(k, l) > grid.v(k - 1, l) + tol) {
        const double bound = grid.budgets[k - 1] * grid.rois[l];
        if (grid.v(k, l) < bound - tol)
          report.record({"T3.5-2", grid.budgets[k], grid.rois[l], NAN, NAN,
                         bound - grid.v(k, l)});
      }
    }
  }
  for (std::size_t k = 0; k < nb; ++k) {
    for (std::size_t l = 0; l + 1 < nr; ++l) {
      if (grid.v(k, l) > grid.v(k, l + 1) + tol) {
        const double bound = grid.budgets[k] * grid.rois[l + 1];
        if (grid.v(k, l) > bound + tol)
          report.record({"T3.5-3", grid.budgets[k], grid.rois[l], NAN, NAN,
                         grid.v(k, l) - bound});
      }
    }
  }

  // Threshold structure per budget column.
  std::vector<std::optional<std::size_t>> thr_idx(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    if (grid.budgets[k] == 0.0) continue;  // thr(0) = +inf by convention
    thr_idx[k] = detail::threshold_index(grid, k, tol);
    if (!thr_idx[k]) continue;
    const std::size_t t = *thr_idx[k];
    const double budget = grid.budgets[k];
    const double pinned = grid.v(k, t);
    for (std::size_t l = 0; l < t; ++l) {
      const double diff = std::fabs(grid.v(k, l) - pinned);
      if (diff > tol)
        report.record({"T3.6", budget, grid.rois[l], NAN, NAN, diff});
    }
    // The true threshold lies within one ROI step above the detected one.
    const double step =
        t + 1 < nr ? grid.rois[t + 1] - grid.rois[t] : grid.rois[t] - grid.rois[t - 1];
    const double err = std::fabs(pinned - budget * grid.rois[t]);
    if (err > budget * step + tol)
      report.record({"T3.6", budget, grid.rois[t], NAN, NAN, err - budget * step});
  }

  // Above both columns' thresholds the value may not depend on the budget.
  for (std::size_t k = 1; k < nb; ++k) {
    if (grid.budgets[k - 1] == 0.0) continue;
    const double thr_prev = thr_idx[k - 1] ? grid.rois[*thr_idx[k - 1]] : 0.0;
    const double thr_here = thr_idx[k] ? grid.rois[*thr_idx[k]] : 0.0;
    for (std::size_t l = 0; l < nr; ++l) {
      if (grid.rois[l] <= thr_prev || grid.rois[l] <= thr_here) continue;
      const double diff = std::fabs(grid.v(k, l) - grid.v(k - 1, l));
      if (diff > tol)
        report.record({"T3.7", grid.budgets[k], grid.rois[l], NAN, NAN, diff});
    }
  }

  // Diagonal grouping: equal values at (B', R) and (B, R') with B' > B,
  // R' < R force the same value at (B, R). Adjacent-cell analog.
  for (std::size_t k = 0; k + 1 < nb; ++k) {
    for (std::size_t l = 1; l < nr; ++l) {
      const double right = grid.v(k + 1, l);
      const double below = grid.v(k, l - 1);
      if (std::fabs(right - below) > tol) continue;
      const double c = 0.5 * (right + below);
      const double diff = std::fabs(grid.v(k, l) - c);
      if (diff > tol)
        report.record({"LemmaA1", grid.budgets[k], grid.rois[l], NAN, NAN, diff});
    }
  }
  return report;
}

/// A direct-revelation mechanism as a black box over full reported profiles.
using MechanismFn = std::function<Outcome(const std::vector<BidderType>&)>;

/// Rectangular type grid (cartesian product of the two axes).
struct TypeGrid {
  std::vector<double> budgets;
  std::vector<double> rois;
};

/// Samples one bidder's cumulative value over a type grid, holding the other
/// bidders' reports fixed.
inline ValueGrid sample_value_grid(const MechanismFn& mechanism, std::size_t bidder,
                                   std::vector<BidderType> profile, std::vector<double> budgets,
                                   std::vector<double> rois) {
  ValueGrid grid;
  grid.budgets = std::move(budgets);
  grid.rois = std::move(rois);
  grid.values.resize(grid.budgets.size() * grid.rois.size());
  for (std::size_t k = 0; k < grid.budgets.size(); ++k) {
    for (std::size_t l = 0; l < grid.rois.size(); ++l) {
      profile[bidder] = {grid.budgets[k], grid.rois[l]};
      grid.values[k * grid.rois.size() + l] = mechanism(profile).values[bidder];
    }
  }
  return grid;
}

/// Exhaustive deviation check for one bidder: every misreport on the grid
/// must leave her no better off than truth-telling (condition id DSIC), and
/// the truthful outcome must satisfy her constraints (condition id IR).
///
/// Outcomes depend only on the reported profile, so each distinct report is
/// evaluated once and reused across all true types.
inline FeasibilityReport brute_force_dsic_check(const MechanismFn& mechanism,
                                                const Market& market, std::size_t bidder,
                                                std::vector<BidderType> profile,
                                                const TypeGrid& true_grid,
                                                const TypeGrid& misreport_grid,
                                                double tol = kMoneyTol) {
  internal_check(bidder < market.n_bidders() && profile.size() == market.n_bidders(),
                 "brute_force_dsic_check: bad bidder or profile");
  FeasibilityReport report;
  report.grid_budgets = true_grid.budgets.size();
  report.grid_rois = true_grid.rois.size();

  struct ValuePayment {
    double value;
    double payment;
  };
  auto evaluate = [&](const TypeGrid& grid) {
    std::vector<ValuePayment> out;
    out.reserve(grid.budgets.size() * grid.rois.size());
    for (double b : grid.budgets) {
      for (double r : grid.rois) {
        profile[bidder] = {b, r};
        const Outcome o = mechanism(profile);
        out.push_back({o.values[bidder], o.payments[bidder]});
      }
    }
    return out;
  };
  const auto truthful = evaluate(true_grid);
  const auto deviated = evaluate(misreport_grid);

  std::size_t t = 0;
  for (double b : true_grid.budgets) {
    for (double r : true_grid.rois) {
      const BidderType type{b, r};
      const ValuePayment& honest = truthful[t++];
      const ExtReal u_honest = bidder_utility(type, honest.value, honest.payment, tol);
      if (!u_honest.is_finite()) {
        const double over_budget = honest.payment - b;
        const double roi_short = r * honest.payment - honest.value;
        report.record({"IR", b, r, NAN, NAN, std::max(over_budget, roi_short)});
        continue;
      }
      std::size_t d = 0;
      for (double mb : misreport_grid.budgets) {
        for (double mr : misreport_grid.rois) {
          const ValuePayment& dev = deviated[d++];
          const ExtReal u_dev = bidder_utility(type, dev.value, dev.payment, tol);
          if (u_dev.is_finite() && u_dev.value() > u_honest.value() + tol)
            report.record({"DSIC", b, r, mb, mr, u_dev.value() - u_honest.value()});
        }
      }
    }
  }
  return report;
}

}  // namespace autobid
