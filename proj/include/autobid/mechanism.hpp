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
#include <span>
#include <utility>
#include <vector>

#include "autobid/market.hpp"
#include "autobid/numeric.hpp"
#include "autobid/rank_score.hpp"

namespace autobid {

// The truthful auction. Allocation ranks bidders per item by virtual bid
// v_{i,j} * f_{i,j}(R_i); each provisional winner is then trimmed down to the
// largest item set her budget can pay for at her critical ROI, and charged
// the maximum payment compatible with her reported constraints.

/// Provisional per-item winners together with the prices that determine how
/// high a ROI each winner could have reported and still ranked first.
struct WinThresholds {
  std::vector<std::vector<std::size_t>> candidate_sets;  // per bidder, ascending item ids
  std::vector<double> second_price;  // per item: highest competing virtual bid
  std::vector<ExtReal> win_roi;      // n x m; -inf where the bidder is not the winner

  std::size_t n_bidders = 0;
  std::size_t n_items = 0;

  ExtReal roi(std::size_t bidder, std::size_t item) const {
    return win_roi[bidder * n_items + item];
  }
};

/// One provisionally won item as seen by a single bidder.
struct CandidateItem {
  std::size_t item;
  double value;           // v_{i,item}
  ExtReal win_threshold;  // largest ROI that still wins the item
};

/// Largest ROI at which the bidder's budget still covers every item she wins,
/// plus the slack between affordable spend and the budget at that ROI.
struct CriticalRoi {
  ExtReal roi;
  double slack = 0.0;  // zero whenever the budget lands on a flat segment
};

inline std::vector<double> compute_virtual_bids(const Market& market,
                                                const std::vector<BidderType>& reported,
                                                const RankScoreFamily& family) {
  internal_check(reported.size() == market.n_bidders() &&
                     family.n_bidders() == market.n_bidders() &&
                     family.n_items() == market.n_items(),
                 "compute_virtual_bids: dimension mismatch");
  std::vector<double> bids(market.n_bidders() * market.n_items());
  for (std::size_t i = 0; i < market.n_bidders(); ++i)
    for (std::size_t j = 0; j < market.n_items(); ++j)
      bids[i * market.n_items() + j] = market.value(i, j) * family.eval(i, j, reported[i].roi);
  return bids;
}

/// Assigns each item to its highest virtual bid (ties to the lowest bidder
/// index) and records the highest competing bid. An item whose best bid is
/// zero stays unsold: a zero score means the bidder never ranks first.
inline WinThresholds provisional_allocation(const std::vector<double>& virtual_bids,
                                            std::size_t n_bidders, std::size_t n_items) {
  internal_check(virtual_bids.size() == n_bidders * n_items && n_bidders >= 1,
                 "provisional_allocation: dimension mismatch");
  WinThresholds wt;
  wt.n_bidders = n_bidders;
  wt.n_items = n_items;
  wt.candidate_sets.resize(n_bidders);
  wt.second_price.assign(n_items, 0.0);
  wt.win_roi.assign(n_bidders * n_items, ExtReal::neg_inf());
  for (std::size_t j = 0; j < n_items; ++j) {
    std::size_t winner = 0;
    double best = virtual_bids[j];
    for (std::size_t i = 1; i < n_bidders; ++i) {
      const double b = virtual_bids[i * n_items + j];
      if (b > best) {
        best = b;
        winner = i;
      }
    }
    double second = 0.0;
    for (std::size_t i = 0; i < n_bidders; ++i) {
      if (i == winner) continue;
      second = std::max(second, virtual_bids[i * n_items + j]);
    }
    wt.second_price[j] = second;
    if (best > 0.0) wt.candidate_sets[winner].push_back(j);
  }
  return wt;
}

/// Win-threshold ROIs r_{i,j} = f_{i,j}^{-1}(c_j / v_{i,j}) for every
/// provisionally won item. c_j = 0 yields +inf (the win is uncontested).
inline std::vector<ExtReal> win_threshold_rois(const WinThresholds& wt, const Market& market,
                                               const RankScoreFamily& family) {
  std::vector<ExtReal> rois(wt.n_bidders * wt.n_items, ExtReal::neg_inf());
  for (std::size_t i = 0; i < wt.n_bidders; ++i) {
    for (std::size_t j : wt.candidate_sets[i]) {
      const double score_needed = wt.second_price[j] / market.value(i, j);
      const ExtReal r = family.inverse(i, j, score_needed);
      internal_check(!r.is_neg_inf() && (!r.is_finite() || r.value() >= -kExactTol),
                     "win_threshold_rois: candidate could not have won its item");
      rois[i * wt.n_items + j] = r;
    }
  }
  return rois;
}

namespace detail {
// Distinct thresholds in strictly decreasing order with tied values merged.
inline std::vector<std::pair<ExtReal, double>> merge_by_threshold(
    std::span<const CandidateItem> items) {
  std::vector<std::pair<ExtReal, double>> merged;
  std::vector<CandidateItem> sorted(items.begin(), items.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CandidateItem& a, const CandidateItem& b) {
                     return b.win_threshold < a.win_threshold;
                   });
  for (const CandidateItem& it : sorted) {
    internal_check(it.value > 0.0, "critical_roi: item value must be > 0");
    if (!merged.empty() && merged.back().first == it.win_threshold)
      merged.back().second += it.value;
    else
      merged.emplace_back(it.win_threshold, it.value);
  }
  return merged;
}
}  // namespace detail

/// Largest ROI r_c such that the items winnable at r_c cost at least the
/// budget when paid for at rate value / r_c, together with the slack d.
///
/// Piecewise in the budget: with thresholds r^1 > r^2 > ... and prefix values
/// V_p, the solution alternates between threshold levels (slack > 0) and flat
/// segments r_c = V_p / B (slack = 0), saturating at V_m / B once the whole
/// candidate set is affordable. An empty candidate set yields +inf.
inline CriticalRoi critical_roi(double budget, std::span<const CandidateItem> items) {
  internal_check(budget >= 0.0, "critical_roi: negative budget");
  if (items.empty()) return {ExtReal::pos_inf(), 0.0};
  const auto merged = detail::merge_by_threshold(items);

  const ExtReal r1 = merged[0].first;
  double prefix = merged[0].second;
  const double first_knee = r1.is_pos_inf() ? 0.0 : prefix / r1.value();
  if (budget < first_knee) return {r1, first_knee - budget};
  if (budget == 0.0) return {ExtReal::pos_inf(), 0.0};  // only when r^1 is +inf

  ExtReal level = r1;
  for (std::size_t p = 1; p < merged.size(); ++p) {
    const double r_next = merged[p].first.value();  // finite below the top level
    if (budget < prefix / r_next) {
      // Flat segment between levels; clamp so rounding cannot push r_c above
      // the level whose items it must still include.
      double rc = prefix / budget;
      if (level.is_finite()) rc = std::min(rc, level.value());
      if (rc > r_next) return {ExtReal::finite(rc), 0.0};
    }
    const double next_prefix = prefix + merged[p].second;
    if (budget < next_prefix / r_next)
      return {merged[p].first, next_prefix / r_next - budget};
    prefix = next_prefix;
    level = merged[p].first;
  }
  double rc = prefix / budget;
  if (level.is_finite()) rc = std::min(rc, level.value());
  return {ExtReal::finite(rc), 0.0};
}

/// Keep fractions for each candidate item given the critical ROI.
///
/// Reporting at or below r_c keeps the items winnable at r_c and shaves value
/// slack * r_c off the items sitting exactly at r_c (ascending item order), so
/// the kept value lands exactly on budget * r_c. Reporting above r_c keeps the
/// whole candidate set; the slack is necessarily zero there.
inline std::vector<double> trim_allocation(std::span<const CandidateItem> items,
                                           const CriticalRoi& critical, double reported_roi,
                                           double budget) {
  (void)budget;
  std::vector<double> fractions(items.size(), 1.0);
  if (ExtReal::finite(reported_roi) > critical.roi) {
    internal_check(critical.slack <= kMoneyTol,
                   "trim_allocation: positive slack above the critical ROI");
    return fractions;
  }
  for (std::size_t k = 0; k < items.size(); ++k)
    if (items[k].win_threshold < critical.roi) fractions[k] = 0.0;
  if (critical.slack > 0.0) {
    double remove_value = critical.slack * critical.roi.value();
    for (std::size_t k = 0; k < items.size() && remove_value > 0.0; ++k) {
      if (!(items[k].win_threshold == critical.roi)) continue;
      const double take = std::min(remove_value, items[k].value);
      fractions[k] = (items[k].value - take) / items[k].value;
      remove_value -= take;
    }
    internal_check(remove_value <= kMoneyTol,
                   "trim_allocation: removal exceeds the value at the critical ROI");
  }
  return fractions;
}

/// Maximum payment compatible with the reported constraints: min(v/R, B).
inline double truthful_payment(double value, const BidderType& reported) {
  internal_check(value >= 0.0, "truthful_payment: negative value");
  if (value == 0.0) return 0.0;
  return std::min(value / reported.roi, reported.budget);
}

/// Per-bidder intermediates kept around for verification and diagnostics.
struct AuctionTrace {
  WinThresholds thresholds;
  std::vector<CriticalRoi> critical;  // per bidder
  Outcome outcome;
};

inline AuctionTrace run_truthful_auction_traced(const Market& market,
                                                const std::vector<BidderType>& reported,
                                                const RankScoreFamily& family) {
  for (const BidderType& t : reported) t.validate();
  AuctionTrace trace;
  const auto bids = compute_virtual_bids(market, reported, family);
  trace.thresholds = provisional_allocation(bids, market.n_bidders(), market.n_items());
  trace.thresholds.win_roi = win_threshold_rois(trace.thresholds, market, family);

  trace.outcome = Outcome::zeros(market.n_bidders(), market.n_items());
  trace.critical.resize(market.n_bidders(), CriticalRoi{ExtReal::pos_inf(), 0.0});
  for (std::size_t i = 0; i < market.n_bidders(); ++i) {
    std::vector<CandidateItem> cand;
    cand.reserve(trace.thresholds.candidate_sets[i].size());
    for (std::size_t j : trace.thresholds.candidate_sets[i])
      cand.push_back({j, market.value(i, j), trace.thresholds.roi(i, j)});
    trace.critical[i] = critical_roi(reported[i].budget, cand);
    const auto fractions = trim_allocation(cand, trace.critical[i], reported[i].roi,
                                           reported[i].budget);
    for (std::size_t k = 0; k < cand.size(); ++k)
      trace.outcome.alloc(i, cand[k].item) = fractions[k];
  }
  trace.outcome.finalize(market);
  for (std::size_t i = 0; i < market.n_bidders(); ++i)
    trace.outcome.payments[i] = truthful_payment(trace.outcome.values[i], reported[i]);
  return trace;
}

inline Outcome run_truthful_auction(const Market& market,
                                    const std::vector<BidderType>& reported,
                                    const RankScoreFamily& family) {
  return run_truthful_auction_traced(market, reported, family).outcome;
}

}  // namespace autobid
