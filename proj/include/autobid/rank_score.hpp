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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "autobid/numeric.hpp"

namespace autobid {

/// Per-(bidder, item) exponential rank scores f_{i,j}(R) = alpha_{i,j} * e^(-beta R).
///
/// The mechanism only relies on the general contract: eval is non-increasing
/// in R, and inverse returns the largest R achieving a given score. For the
/// exponential family both are closed form:
///   inverse(s) = ln(alpha / s) / beta      for s > 0,
///   inverse(0) = +inf                      (any ROI scores above zero),
///   alpha == 0 => every score is 0 and inverse is -inf (the bidder can
///   never rank first for that item).
class RankScoreFamily {
 public:
  RankScoreFamily(std::size_t n_bidders, std::size_t n_items, std::vector<double> alpha,
                  double beta)
      : n_bidders_(n_bidders), n_items_(n_items), alpha_(std::move(alpha)), beta_(beta) {
    if (alpha_.size() != n_bidders_ * n_items_)
      throw std::invalid_argument("RankScoreFamily: alpha dimensions do not match");
    if (!(beta_ > 0.0) || !std::isfinite(beta_))
      throw std::invalid_argument("RankScoreFamily: beta must be finite and > 0");
    for (double a : alpha_)
      if (!(a >= 0.0) || !std::isfinite(a))
        throw std::invalid_argument("RankScoreFamily: alpha must be finite and >= 0");
  }

  static RankScoreFamily constant(std::size_t n_bidders, std::size_t n_items, double alpha,
                                  double beta) {
    return RankScoreFamily(n_bidders, n_items,
                           std::vector<double>(n_bidders * n_items, alpha), beta);
  }

  std::size_t n_bidders() const { return n_bidders_; }
  std::size_t n_items() const { return n_items_; }
  double beta() const { return beta_; }
  double alpha(std::size_t bidder, std::size_t item) const {
    return alpha_[bidder * n_items_ + item];
  }
  const std::vector<double>& raw_alpha() const { return alpha_; }

  double eval(std::size_t bidder, std::size_t item, double roi) const {
    return alpha(bidder, item) * std::exp(-beta_ * roi);
  }

  /// Largest ROI whose score is still >= s.
  ExtReal inverse(std::size_t bidder, std::size_t item, double score) const {
    internal_check(score >= 0.0, "RankScoreFamily::inverse: negative score");
    const double a = alpha(bidder, item);
    if (a == 0.0) return ExtReal::neg_inf();
    if (score == 0.0) return ExtReal::pos_inf();
    return ExtReal::finite(std::log(a / score) / beta_);
  }

 private:
  std::size_t n_bidders_;
  std::size_t n_items_;
  std::vector<double> alpha_;  // row-major, bidder-major
  double beta_;
};

}  // namespace autobid
