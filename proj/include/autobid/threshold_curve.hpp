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
#include <stdexcept>
#include <vector>

#include "autobid/numeric.hpp"

namespace autobid {

// Any truthful allocation rule reduces, for a fixed bidder and fixed
// opponents, to a one-dimensional non-decreasing curve g over budgets with
// g(0) = 0; thr(B) = g(B) / B is the largest ROI the bidder can report and
// still have her cumulative value pinned to g(B). This header carries the
// curve representation, the closed-form g induced by the rank auction, and
// the map from a curve back to a full two-dimensional value function.

/// One win-threshold level of a candidate item set: the largest ROI that
/// still wins the item(s), and their total value.
struct ThresholdItem {
  double win_roi;  // finite, > 0; strictly decreasing across a list
  double value;    // > 0
};

/// Closed-form g(B) for a candidate set with strictly decreasing thresholds
/// r^1 > r^2 > ... and prefix values V_p:
///   g = r^1 B            on [0, V_1/r^1)
///   g = V_p              on [V_p/r^p, V_p/r^{p+1})
///   g = r^{p+1} B        on [V_p/r^{p+1}, V_{p+1}/r^{p+1})
///   g = V_m              on [V_m/r^m, inf)
inline double closed_form_g(std::span<const ThresholdItem> items, double budget) {
  if (!(budget >= 0.0)) throw std::invalid_argument("closed_form_g: budget must be >= 0");
  if (items.empty() || budget == 0.0) return 0.0;
  for (std::size_t p = 0; p < items.size(); ++p) {
    if (!(items[p].win_roi > 0.0) || !(items[p].value > 0.0))
      throw std::invalid_argument("closed_form_g: thresholds and values must be > 0");
    if (p > 0 && !(items[p].win_roi < items[p - 1].win_roi))
      throw std::invalid_argument("closed_form_g: thresholds must be strictly decreasing");
  }
  double prefix = items[0].value;
  if (budget < prefix / items[0].win_roi) return items[0].win_roi * budget;
  for (std::size_t p = 1; p < items.size(); ++p) {
    const double r = items[p].win_roi;
    if (budget < prefix / r) return prefix;
    const double next = prefix + items[p].value;
    if (budget < next / r) return r * budget;
    prefix = next;
  }
  return prefix;
}

/// Non-decreasing piecewise-linear curve with g(0) = 0, constant after the
/// last breakpoint.
class ThresholdCurve {
 public:
  struct Breakpoint {
    double budget;
    double g;
  };

  explicit ThresholdCurve(std::vector<Breakpoint> points) : points_(std::move(points)) {
    if (points_.empty() || points_.front().budget != 0.0 || points_.front().g != 0.0)
      throw std::invalid_argument("ThresholdCurve: first breakpoint must be (0, 0)");
    for (std::size_t k = 1; k < points_.size(); ++k) {
      if (!(points_[k].budget > points_[k - 1].budget))
        throw std::invalid_argument("ThresholdCurve: budgets must be strictly increasing");
      if (points_[k].g < points_[k - 1].g - kExactTol)
        throw std::invalid_argument("ThresholdCurve: g must be non-decreasing");
    }
  }

  /// Breakpoints of closed_form_g for the given candidate levels.
  static ThresholdCurve from_items(std::span<const ThresholdItem> items) {
    std::vector<Breakpoint> pts{{0.0, 0.0}};
    if (!items.empty()) {
      double prefix = items[0].value;
      pts.push_back({prefix / items[0].win_roi, prefix});
      for (std::size_t p = 1; p < items.size(); ++p) {
        const double r = items[p].win_roi;
        pts.push_back({prefix / r, prefix});
        prefix += items[p].value;
        pts.push_back({prefix / r, prefix});
      }
    }
    return ThresholdCurve(std::move(pts));
  }

  const std::vector<Breakpoint>& breakpoints() const { return points_; }

  double g(double budget) const {
    if (!(budget >= 0.0)) throw std::invalid_argument("ThresholdCurve::g: budget must be >= 0");
    if (budget >= points_.back().budget) return points_.back().g;
    const auto it = std::upper_bound(
        points_.begin(), points_.end(), budget,
        [](double b, const Breakpoint& p) { return b < p.budget; });
    const Breakpoint& hi = *it;
    const Breakpoint& lo = *(it - 1);
    const double t = (budget - lo.budget) / (hi.budget - lo.budget);
    return lo.g + t * (hi.g - lo.g);
  }

  /// thr(B) = g(B) / B, with the convention thr(0) = +inf.
  ExtReal thr(double budget) const {
    if (budget == 0.0) return ExtReal::pos_inf();
    return ExtReal::finite(g(budget) / budget);
  }

 private:
  std::vector<Breakpoint> points_;
};

/// The cumulative value a truthful rule with curve `g` assigns to (B, R):
/// g(B) at or below the threshold ROI, otherwise g at the largest smaller
/// budget whose threshold still covers R (0 if there is none).
///
/// The sup is solved exactly per linear segment rather than by grid search.
inline double value_from_g(const ThresholdCurve& curve, double budget, double roi) {
  if (!(budget >= 0.0) || !(roi > 0.0))
    throw std::invalid_argument("value_from_g: need budget >= 0 and roi > 0");
  if (budget == 0.0) return curve.g(0.0);  // thr(0) = +inf, below-threshold branch
  const double g_at = curve.g(budget);
  if (roi <= g_at / budget) return g_at;

  const auto& pts = curve.breakpoints();
  // Walk segments right to left, starting with the constant extension past
  // the last breakpoint when the budget lies beyond it.
  double hi_x = budget;
  double hi_g = g_at;
  for (std::size_t seg = pts.size(); seg-- > 0;) {
    const double lo_x = pts[seg].budget;
    if (lo_x > budget) continue;
    const double lo_g = pts[seg].g;
    const double h_hi = hi_g - roi * hi_x;
    const double h_lo = lo_g - roi * lo_x;
    if (h_hi >= 0.0) return hi_g;
    if (h_lo >= 0.0) {
      // g crosses roi * B inside the segment; at the crossing g = roi * B.
      const double slope = (hi_g - lo_g) / (hi_x - lo_x);
      const double cross = (lo_g - slope * lo_x) / (roi - slope);
      return roi * std::clamp(cross, lo_x, hi_x);
    }
    hi_x = lo_x;
    hi_g = lo_g;
  }
  return curve.g(0.0);
}

}  // namespace autobid
