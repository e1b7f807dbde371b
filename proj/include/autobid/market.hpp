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
#include <limits>
#include <stdexcept>
#include <vector>

#include "autobid/numeric.hpp"

namespace autobid {

/// A bidder's private constraint pair: budget cap on total payment and a
/// lower bound on realized return-on-investment (value / payment).
struct BidderType {
  double budget = 0.0;  // >= 0
  double roi = 1.0;     // > 0

  void validate() const {
    if (!(budget >= 0.0)) throw std::invalid_argument("BidderType: budget must be >= 0");
    if (!(roi > 0.0)) throw std::invalid_argument("BidderType: roi must be > 0");
  }
};

/// Public valuation matrix: entry (i, j) is bidder i's value for item j.
/// All entries strictly positive.
class Market {
 public:
  Market(std::size_t n_bidders, std::size_t n_items, std::vector<double> values)
      : n_bidders_(n_bidders), n_items_(n_items), values_(std::move(values)) {
    if (n_bidders_ == 0 || n_items_ == 0)
      throw std::invalid_argument("Market: empty bidder or item set");
    if (values_.size() != n_bidders_ * n_items_)
      throw std::invalid_argument("Market: value matrix dimensions do not match");
    for (double v : values_)
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("Market: all values must be finite and > 0");
  }

  std::size_t n_bidders() const { return n_bidders_; }
  std::size_t n_items() const { return n_items_; }
  double value(std::size_t bidder, std::size_t item) const {
    return values_[bidder * n_items_ + item];
  }
  const std::vector<double>& raw_values() const { return values_; }

 private:
  std::size_t n_bidders_;
  std::size_t n_items_;
  std::vector<double> values_;  // row-major, bidder-major
};

/// Result of a mechanism run: fractional allocation, payments and cumulative
/// values per bidder, plus the unallocated mass per item.
struct Outcome {
  std::size_t n_bidders = 0;
  std::size_t n_items = 0;
  std::vector<double> allocation;   // row-major n_bidders x n_items, in [0,1]
  std::vector<double> payments;     // per bidder, >= 0
  std::vector<double> values;       // per bidder cumulative value
  std::vector<double> unsold_mass;  // per item, 1 - sum_i a_{i,j}

  double alloc(std::size_t bidder, std::size_t item) const {
    return allocation[bidder * n_items + item];
  }
  double& alloc(std::size_t bidder, std::size_t item) {
    return allocation[bidder * n_items + item];
  }

  static Outcome zeros(std::size_t n_bidders, std::size_t n_items) {
    Outcome o;
    o.n_bidders = n_bidders;
    o.n_items = n_items;
    o.allocation.assign(n_bidders * n_items, 0.0);
    o.payments.assign(n_bidders, 0.0);
    o.values.assign(n_bidders, 0.0);
    o.unsold_mass.assign(n_items, 1.0);
    return o;
  }

  // Recomputes values and unsold mass from the allocation, and checks the
  // per-item supply constraint. Every mechanism calls this before returning.
  void finalize(const Market& market) {
    values.assign(n_bidders, 0.0);
    unsold_mass.assign(n_items, 1.0);
    for (std::size_t i = 0; i < n_bidders; ++i) {
      for (std::size_t j = 0; j < n_items; ++j) {
        const double a = alloc(i, j);
        internal_check(a >= -kExactTol && a <= 1.0 + kExactTol,
                       "Outcome: allocation fraction outside [0,1]");
        values[i] += market.value(i, j) * a;
        unsold_mass[j] -= a;
      }
    }
    for (std::size_t j = 0; j < n_items; ++j) {
      internal_check(unsold_mass[j] >= -kMoneyTol, "Outcome: item over-allocated");
      if (unsold_mass[j] < 0.0) unsold_mass[j] = 0.0;
    }
    for (double p : payments) internal_check(p >= 0.0, "Outcome: negative payment");
  }
};

/// value / payment, with the zero-payment convention of +inf.
inline ExtReal realized_roi(double value, double payment) {
  internal_check(value >= 0.0 && payment >= 0.0, "realized_roi: negative input");
  if (payment == 0.0) return ExtReal::pos_inf();
  return ExtReal::finite(value / payment);
}

/// Utility of a constrained value maximizer: the cumulative value when both
/// financial constraints hold, -inf otherwise.
///
/// Comparisons are tolerance-aware (absolute, `tol`): mechanism payments sit
/// exactly on the constraint boundary, and rounding must not flip a feasible
/// outcome into a violation.
inline ExtReal bidder_utility(const BidderType& type, double value, double payment,
                              double tol = kMoneyTol) {
  internal_check(value >= 0.0 && payment >= 0.0, "bidder_utility: negative input");
  if (payment > type.budget + tol) return ExtReal::neg_inf();
  // ROI constraint value/payment >= roi, checked multiplicatively so that
  // payment == 0 (ROI = +inf) needs no special case.
  if (value + tol < type.roi * payment) return ExtReal::neg_inf();
  return ExtReal::finite(value);
}

inline double revenue(const Outcome& outcome) {
  double sum = 0.0;
  for (double p : outcome.payments) sum += p;
  return sum;
}

/// Liquid welfare: sum of min(v_i / R_i, B_i) over bidders whose utility is
/// finite (a violated bidder contributes nothing).
inline double liquid_welfare(const Market& market, const std::vector<BidderType>& types,
                             const Outcome& outcome) {
  internal_check(types.size() == market.n_bidders() && outcome.n_bidders == market.n_bidders(),
                 "liquid_welfare: dimension mismatch");
  double lw = 0.0;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const ExtReal u = bidder_utility(types[i], outcome.values[i], outcome.payments[i]);
    if (!u.is_finite()) continue;
    lw += std::min(outcome.values[i] / types[i].roi, types[i].budget);
  }
  return lw;
}

/// Fairness: the worst per-bidder liquid-welfare contribution.
inline double fairness(const Market& market, const std::vector<BidderType>& types,
                       const Outcome& outcome) {
  internal_check(types.size() == market.n_bidders() && types.size() >= 1,
                 "fairness: dimension mismatch");
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < types.size(); ++i) {
    worst = std::min(worst, std::min(outcome.values[i] / types[i].roi, types[i].budget));
  }
  return worst;
}

struct MetricsReport {
  double revenue = 0.0;
  double liquid_welfare = 0.0;
  double fairness = 0.0;
  std::vector<ExtReal> realized_roi;
  std::vector<ExtReal> utilities;

  bool all_utilities_finite() const {
    for (const ExtReal& u : utilities)
      if (!u.is_finite()) return false;
    return true;
  }
};

inline MetricsReport compute_metrics(const Market& market, const std::vector<BidderType>& types,
                                     const Outcome& outcome) {
  MetricsReport r;
  r.revenue = revenue(outcome);
  r.liquid_welfare = liquid_welfare(market, types, outcome);
  r.fairness = fairness(market, types, outcome);
  r.realized_roi.reserve(types.size());
  r.utilities.reserve(types.size());
  for (std::size_t i = 0; i < types.size(); ++i) {
    r.realized_roi.push_back(realized_roi(outcome.values[i], outcome.payments[i]));
    r.utilities.push_back(bidder_utility(types[i], outcome.values[i], outcome.payments[i]));
  }
  return r;
}

}  // namespace autobid
