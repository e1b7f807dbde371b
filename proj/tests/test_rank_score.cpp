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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "autobid/rank_score.hpp"
#include "autobid/rng.hpp"

using namespace autobid;

TEST_CASE("exponential scores evaluate as alpha * exp(-beta R)") {
  const auto family = RankScoreFamily::constant(1, 1, 1.0, 1.0);
  CHECK(2.0 * family.eval(0, 0, 0.0) == Catch::Approx(2.0).margin(1e-12));
  CHECK(2.0 * family.eval(0, 0, std::log(2.0)) == Catch::Approx(1.0).margin(1e-12));
  const auto zero = RankScoreFamily::constant(1, 1, 0.0, 1.0);
  CHECK(3.0 * zero.eval(0, 0, 1.0) == 0.0);
}

TEST_CASE("inverse conventions") {
  const auto family = RankScoreFamily::constant(1, 1, 1.0, 1.0);
  CHECK(family.inverse(0, 0, 0.0).is_pos_inf());
  CHECK(family.inverse(0, 0, 0.5).value() == Catch::Approx(std::log(2.0)).margin(1e-12));
  const auto zero = RankScoreFamily::constant(1, 1, 0.0, 1.0);
  CHECK(zero.inverse(0, 0, 0.5).is_neg_inf());
  CHECK(zero.inverse(0, 0, 0.0).is_neg_inf());
}

TEST_CASE("inverse(eval(R)) recovers R for positive alpha") {
  SplitMix64 rng(11);
  for (int rep = 0; rep < 500; ++rep) {
    const double alpha = rng.uniform(0.05, 10.0);
    const double beta = rng.uniform(0.05, 4.0);
    const double roi = rng.uniform(0.01, 8.0);
    const RankScoreFamily family = RankScoreFamily::constant(1, 1, alpha, beta);
    const ExtReal back = family.inverse(0, 0, family.eval(0, 0, roi));
    REQUIRE(back.is_finite());
    CHECK(back.value() == Catch::Approx(roi).margin(1e-9));
  }
}

TEST_CASE("eval is non-increasing in R") {
  SplitMix64 rng(12);
  for (int rep = 0; rep < 200; ++rep) {
    const RankScoreFamily family =
        RankScoreFamily::constant(1, 1, rng.uniform(0.0, 5.0), rng.uniform(0.05, 4.0));
    const double r1 = rng.uniform(0.0, 8.0);
    const double r2 = r1 + rng.uniform(0.0, 4.0);
    CHECK(family.eval(0, 0, r1) >= family.eval(0, 0, r2));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(RankScoreFamily::constant(1, 1, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(RankScoreFamily::constant(1, 1, -0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RankScoreFamily(2, 2, {1.0, 1.0}, 1.0), std::invalid_argument);
}
