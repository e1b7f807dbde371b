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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "autobid/market.hpp"
#include "autobid/rank_score.hpp"
#include "autobid/rng.hpp"

namespace autobid {

// Synthetic market generators. Every draw uses its own stream keyed by
// (seed, purpose, bidder, item), so outputs are reproducible regardless of
// evaluation order.

enum class GeneratorKind { kSymmetric, kMixed };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kSymmetric;
  std::size_t n_bidders = 1;
  std::size_t n_items = 1;
  std::uint64_t seed = 0;

  void validate() const {
    if (n_bidders < 1 || n_items < 1)
      throw std::invalid_argument("GeneratorSpec: counts must be >= 1");
  }
};

struct RankScoreSpec {
  double beta = 1.0;
  std::vector<double> mu;     // one entry per bidder group
  std::vector<double> sigma;  // one entry per bidder group, >= 0
  std::uint64_t seed = 0;

  void validate() const {
    if (!(beta > 0.0)) throw std::invalid_argument("RankScoreSpec: beta must be > 0");
    if (mu.empty() || mu.size() != sigma.size())
      throw std::invalid_argument("RankScoreSpec: mu and sigma must be non-empty and equal size");
    for (double s : sigma)
      if (!(s >= 0.0)) throw std::invalid_argument("RankScoreSpec: sigma must be >= 0");
  }
};

struct GeneratedMarket {
  Market market;
  std::vector<BidderType> types;
  std::vector<std::size_t> groups;  // bidder -> distribution group
};

namespace detail {
// Stream purposes; keeps the value/type/alpha draws independent.
inline constexpr std::uint64_t kStreamValues = 0x76616c75ULL;
inline constexpr std::uint64_t kStreamTypes = 0x74797065ULL;
inline constexpr std::uint64_t kStreamAlpha = 0x616c7068ULL;

inline double draw_uniform(std::uint64_t seed, std::uint64_t purpose, std::uint64_t a,
                           std::uint64_t b, double lo, double hi) {
  SplitMix64 rng(derive_seed(seed, purpose, a, b));
  return rng.uniform(lo, hi);
}
}  // namespace detail

/// Symmetric bidders: v ~ U[1,4], B ~ U[40,80], R ~ U[1,3].
inline GeneratedMarket gen_symmetric(const GeneratorSpec& spec) {
  spec.validate();
  if (spec.kind != GeneratorKind::kSymmetric)
    throw std::invalid_argument("gen_symmetric: spec kind mismatch");
  std::vector<double> values(spec.n_bidders * spec.n_items);
  for (std::size_t i = 0; i < spec.n_bidders; ++i)
    for (std::size_t j = 0; j < spec.n_items; ++j)
      values[i * spec.n_items + j] =
          detail::draw_uniform(spec.seed, detail::kStreamValues, i, j, 1.0, 4.0);
  std::vector<BidderType> types(spec.n_bidders);
  for (std::size_t i = 0; i < spec.n_bidders; ++i) {
    SplitMix64 rng(derive_seed(spec.seed, detail::kStreamTypes, i));
    types[i].budget = rng.uniform(40.0, 80.0);
    types[i].roi = rng.uniform(1.0, 3.0);
  }
  return {Market(spec.n_bidders, spec.n_items, std::move(values)), std::move(types),
          std::vector<std::size_t>(spec.n_bidders, 0)};
}

/// Mixed bidders: 8 groups from the {low, high} combinations of value,
/// budget and ROI ranges, assigned round-robin by bidder index.
///   value:  U[1,2] / U[2,3]
///   budget: U[20,40] / U[80,100]
///   roi:    U[1,2] / U[2,3]
inline GeneratedMarket gen_mixed(const GeneratorSpec& spec) {
  spec.validate();
  if (spec.kind != GeneratorKind::kMixed)
    throw std::invalid_argument("gen_mixed: spec kind mismatch");
  std::vector<double> values(spec.n_bidders * spec.n_items);
  std::vector<BidderType> types(spec.n_bidders);
  std::vector<std::size_t> groups(spec.n_bidders);
  for (std::size_t i = 0; i < spec.n_bidders; ++i) {
    const std::size_t g = i % 8;
    groups[i] = g;
    const bool value_high = (g & 1) != 0;
    const bool budget_high = (g & 2) != 0;
    const bool roi_high = (g & 4) != 0;
    for (std::size_t j = 0; j < spec.n_items; ++j)
      values[i * spec.n_items + j] =
          detail::draw_uniform(spec.seed, detail::kStreamValues, i, j,
                               value_high ? 2.0 : 1.0, value_high ? 3.0 : 2.0);
    SplitMix64 rng(derive_seed(spec.seed, detail::kStreamTypes, i));
    types[i].budget = budget_high ? rng.uniform(80.0, 100.0) : rng.uniform(20.0, 40.0);
    types[i].roi = roi_high ? rng.uniform(2.0, 3.0) : rng.uniform(1.0, 2.0);
  }
  return {Market(spec.n_bidders, spec.n_items, std::move(values)), std::move(types),
          std::move(groups)};
}

inline GeneratedMarket generate_market(const GeneratorSpec& spec) {
  return spec.kind == GeneratorKind::kSymmetric ? gen_symmetric(spec) : gen_mixed(spec);
}

/// Rank scores with alpha_{i,j} ~ max(0, N(mu_g, sigma_g^2)) per bidder group
/// and a shared beta.
inline RankScoreFamily sample_rank_scores(const RankScoreSpec& spec,
                                          const std::vector<std::size_t>& groups,
                                          std::size_t n_bidders, std::size_t n_items) {
  spec.validate();
  if (groups.size() != n_bidders)
    throw std::invalid_argument("sample_rank_scores: group labels size mismatch");
  std::vector<double> alpha(n_bidders * n_items);
  for (std::size_t i = 0; i < n_bidders; ++i) {
    if (groups[i] >= spec.mu.size())
      throw std::invalid_argument("sample_rank_scores: group label out of range");
    for (std::size_t j = 0; j < n_items; ++j) {
      SplitMix64 rng(derive_seed(spec.seed, detail::kStreamAlpha, i, j));
      alpha[i * n_items + j] = rng.rectified_normal(spec.mu[groups[i]], spec.sigma[groups[i]]);
    }
  }
  return RankScoreFamily(n_bidders, n_items, std::move(alpha), spec.beta);
}

}  // namespace autobid
