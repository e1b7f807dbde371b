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
#include <numeric>
#include <stdexcept>
#include <vector>

#include "autobid/market.hpp"
#include "autobid/numeric.hpp"

namespace autobid {

// Repeated single-item auctions (first- or second-price) where bidder i bids
// v_{i,j} / R_i' per item, plus the best-response dynamics used to model
// misreporting in these non-truthful formats.

enum class AuctionForm { kFirstPrice, kSecondPrice };

struct SequentialAuctionConfig {
  AuctionForm form = AuctionForm::kFirstPrice;
  std::vector<std::size_t> item_order;  // empty means natural order

  std::vector<std::size_t> resolved_order(std::size_t n_items) const {
    if (item_order.empty()) {
      std::vector<std::size_t> order(n_items);
      std::iota(order.begin(), order.end(), 0);
      return order;
    }
    if (item_order.size() != n_items)
      throw std::invalid_argument("SequentialAuctionConfig: item_order size mismatch");
    std::vector<bool> seen(n_items, false);
    for (std::size_t j : item_order) {
      if (j >= n_items || seen[j])
        throw std::invalid_argument("SequentialAuctionConfig: item_order is not a permutation");
      seen[j] = true;
    }
    return item_order;
  }
};

/// Runs the repeated auction for a fixed profile of reports. Budgets are
/// enforced as hard caps on remaining spend.
///
/// First price: the item goes down the bid ranking to the first bidder whose
/// remaining budget covers her own bid, at her own bid.
/// Second price: walking down the ranking, a candidate pays the highest bid
/// among bidders other than herself that were not already skipped for this
/// item; whoever first affords that price wins. Nobody qualifying leaves the
/// item unsold.
inline Outcome sequential_auction(const Market& market, const std::vector<BidderType>& reported,
                                  const SequentialAuctionConfig& config) {
  internal_check(reported.size() == market.n_bidders(),
                 "sequential_auction: dimension mismatch");
  for (const BidderType& t : reported) t.validate();
  const std::size_t n = market.n_bidders();
  Outcome outcome = Outcome::zeros(n, market.n_items());
  std::vector<double> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = reported[i].budget;

  std::vector<std::size_t> ranking(n);
  for (std::size_t j : config.resolved_order(market.n_items())) {
    std::vector<double> bid(n);
    for (std::size_t i = 0; i < n; ++i) bid[i] = market.value(i, j) / reported[i].roi;
    std::iota(ranking.begin(), ranking.end(), 0);
    std::stable_sort(ranking.begin(), ranking.end(),
                     [&](std::size_t a, std::size_t b) { return bid[a] > bid[b]; });

    if (config.form == AuctionForm::kFirstPrice) {
      for (std::size_t i : ranking) {
        if (bid[i] > remaining[i] + kExactTol) continue;
        outcome.alloc(i, j) = 1.0;
        const double price = std::min(bid[i], remaining[i]);
        outcome.payments[i] += price;
        remaining[i] -= price;
        break;
      }
    } else {
      std::vector<bool> skipped(n, false);
      for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t i = ranking[pos];
        double price = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          if (k != i && !skipped[k]) price = std::max(price, bid[k]);
        if (price > remaining[i] + kExactTol) {
          skipped[i] = true;
          continue;
        }
        outcome.alloc(i, j) = 1.0;
        price = std::min(price, remaining[i]);
        outcome.payments[i] += price;
        remaining[i] -= price;
        break;
      }
    }
  }
  outcome.finalize(market);
  return outcome;
}

/// Search state of the dynamics; budgets are always reported truthfully in
/// these formats, only the ROI report moves.
struct DynamicsState {
  std::vector<double> reported_rois;
  std::size_t round = 0;
  Outcome history;
};

inline constexpr double kBestResponseEps = 1e-6;

namespace detail {

/// Pre-sorted competitor bids for one bidder's candidate search. The search
/// re-simulates the auction for thousands of candidate ROIs against the same
/// opponents; only the probe bidder's bids change, so the per-item descending
/// order of the others is computed once.
struct CompetitorView {
  std::size_t bidder = 0;
  std::vector<double> bids;                       // n x m, probe slots unused
  std::vector<std::vector<std::size_t>> order;    // per item: others, rank order
  std::vector<std::size_t> item_order;
  AuctionForm form = AuctionForm::kFirstPrice;
};

inline CompetitorView make_competitor_view(const Market& market,
                                           const std::vector<BidderType>& reports,
                                           std::size_t bidder,
                                           const SequentialAuctionConfig& config) {
  const std::size_t n = market.n_bidders();
  const std::size_t m = market.n_items();
  CompetitorView view;
  view.bidder = bidder;
  view.form = config.form;
  view.item_order = config.resolved_order(m);
  view.bids.assign(n * m, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == bidder) continue;
    for (std::size_t j = 0; j < m; ++j)
      view.bids[k * m + j] = market.value(k, j) / reports[k].roi;
  }
  view.order.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    auto& order = view.order[j];
    order.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k)
      if (k != bidder) order.push_back(k);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return view.bids[a * m + j] > view.bids[b * m + j];
    });
  }
  return view;
}

/// Value and payment of the probe bidder when she reports `roi`. Mirrors
/// sequential_auction exactly (ranking ties to the lowest index, affordability
/// tolerances, the second-price skip cascade); the equivalence is covered by
/// a randomized test against the reference implementation.
inline std::pair<double, double> simulate_candidate(const Market& market,
                                                    const std::vector<BidderType>& reports,
                                                    const CompetitorView& view, double roi) {
  const std::size_t n = market.n_bidders();
  const std::size_t m = market.n_items();
  const std::size_t self = view.bidder;
  thread_local std::vector<double> remaining;
  remaining.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    remaining[k] = k == self ? reports[self].budget : reports[k].budget;
  double value = 0.0;
  double payment = 0.0;
  for (std::size_t j : view.item_order) {
    const auto& order = view.order[j];
    const double self_bid = market.value(self, j) / roi;
    // rank position of the probe bidder among the pre-sorted others
    const auto pos_it = std::partition_point(
        order.begin(), order.end(), [&](std::size_t k) {
          const double b = view.bids[k * m + j];
          return b > self_bid || (b == self_bid && k < self);
        });
    const std::size_t pos = static_cast<std::size_t>(pos_it - order.begin());
    const std::size_t total = order.size() + 1;
    auto entry = [&](std::size_t rank) {
      return rank < pos ? order[rank] : (rank == pos ? self : order[rank - 1]);
    };
    auto bid_of = [&](std::size_t k) { return k == self ? self_bid : view.bids[k * m + j]; };

    if (view.form == AuctionForm::kFirstPrice) {
      for (std::size_t rank = 0; rank < total; ++rank) {
        const std::size_t k = entry(rank);
        const double bid = bid_of(k);
        if (bid > remaining[k] + kExactTol) continue;
        const double price = std::min(bid, remaining[k]);
        remaining[k] -= price;
        if (k == self) {
          value += market.value(self, j);
          payment += price;
        }
        break;
      }
    } else {
      // walking down the ranking, everyone above the current candidate has
      // been skipped, so the competing price is the next entry's bid
      for (std::size_t rank = 0; rank < total; ++rank) {
        const std::size_t k = entry(rank);
        double price = rank + 1 < total ? bid_of(entry(rank + 1)) : 0.0;
        if (price > remaining[k] + kExactTol) continue;
        price = std::min(price, remaining[k]);
        remaining[k] -= price;
        if (k == self) {
          value += market.value(self, j);
          payment += price;
        }
        break;
      }
    }
  }
  return {value, payment};
}

}  // namespace detail

/// Best-response ROI for one bidder against the others' current reports.
///
/// Winning sets change only where the bidder's per-item bid crosses a
/// competing bid, so it is enough to try the threshold ROIs v_{i,j} / b
/// (nudged by +-eps to land on either side of the tie) plus the true ROI.
/// Among candidates whose simulated outcome satisfies the TRUE constraints,
/// the one with the highest cumulative value wins; ties go to the smallest
/// candidate ROI. With no feasible candidate the bidder reports truthfully.
inline double best_response_roi(std::size_t bidder, const Market& market,
                                const std::vector<BidderType>& current_reports,
                                const BidderType& true_type,
                                const SequentialAuctionConfig& config) {
  internal_check(bidder < market.n_bidders(), "best_response_roi: bad bidder index");
  std::vector<double> candidates{true_type.roi};
  for (std::size_t j = 0; j < market.n_items(); ++j) {
    for (std::size_t k = 0; k < market.n_bidders(); ++k) {
      if (k == bidder) continue;
      const double competing = market.value(k, j) / current_reports[k].roi;
      if (!(competing > 0.0)) continue;
      const double threshold = market.value(bidder, j) / competing;
      for (double cand :
           {threshold - kBestResponseEps, threshold, threshold + kBestResponseEps})
        if (cand > 0.0) candidates.push_back(cand);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<BidderType> reports = current_reports;
  reports[bidder].budget = true_type.budget;
  const detail::CompetitorView view =
      detail::make_competitor_view(market, reports, bidder, config);
  double best_roi = true_type.roi;
  double best_value = -1.0;
  for (double cand : candidates) {
    const auto [value, payment] = detail::simulate_candidate(market, reports, view, cand);
    const ExtReal u = bidder_utility(true_type, value, payment);
    if (!u.is_finite()) continue;
    if (u.value() > best_value + kMoneyTol) {
      best_value = u.value();
      best_roi = cand;
    }
    // candidates are ascending, so the first hit at a value level is the
    // smallest ROI achieving it
  }
  return best_value >= 0.0 ? best_roi : true_type.roi;
}

struct DynamicsResult {
  std::vector<BidderType> final_reports;
  Outcome outcome;
  bool converged = false;
  std::size_t rounds = 0;
};

/// Round-robin best-response dynamics from the truthful profile. Stops once a
/// full round moves no report by more than 1e-6, or at max_rounds. The final
/// outcome is re-simulated under the final reports; metrics are the caller's
/// to evaluate under the true types.
///
/// A bidder adopts the search result only when it strictly improves her
/// utility against the current profile. Without that inertia, reports drift
/// by the tie-breaking epsilon between equal-value candidates round after
/// round, and a bidder certified feasible mid-round can end up violating her
/// true constraints once later movers shift the prices. At any profile the
/// dynamics terminates on, every bidder's outcome satisfies her true
/// constraints (truth-telling is always a feasible response in these
/// formats).
inline DynamicsResult best_response_dynamics(const Market& market,
                                             const std::vector<BidderType>& true_types,
                                             const SequentialAuctionConfig& config,
                                             std::size_t max_rounds = 100) {
  if (max_rounds < 1) throw std::invalid_argument("best_response_dynamics: max_rounds >= 1");
  DynamicsResult result;
  result.final_reports = true_types;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    double max_change = 0.0;
    for (std::size_t i = 0; i < market.n_bidders(); ++i) {
      const double updated =
          best_response_roi(i, market, result.final_reports, true_types[i], config);
      if (updated == result.final_reports[i].roi) continue;
      const detail::CompetitorView view =
          detail::make_competitor_view(market, result.final_reports, i, config);
      const auto [cur_value, cur_payment] = detail::simulate_candidate(
          market, result.final_reports, view, result.final_reports[i].roi);
      const auto [new_value, new_payment] =
          detail::simulate_candidate(market, result.final_reports, view, updated);
      const ExtReal u_current = bidder_utility(true_types[i], cur_value, cur_payment);
      const ExtReal u_switched = bidder_utility(true_types[i], new_value, new_payment);
      const bool improves =
          u_switched.is_finite() &&
          (!u_current.is_finite() || u_switched.value() > u_current.value() + kMoneyTol);
      if (!improves) continue;
      max_change = std::max(max_change, std::fabs(updated - result.final_reports[i].roi));
      result.final_reports[i].roi = updated;
    }
    result.rounds = round + 1;
    // With inertia, any adopted move is a real improvement; a clean round
    // means the profile reproduced itself exactly and every bidder's current
    // outcome was certified against this very profile.
    if (max_change == 0.0) {
      result.converged = true;
      break;
    }
  }
  result.outcome = sequential_auction(market, result.final_reports, config);
  return result;
}

}  // namespace autobid
