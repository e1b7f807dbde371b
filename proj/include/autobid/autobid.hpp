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

#include "autobid/experiment.hpp"
#include "autobid/feasibility.hpp"
#include "autobid/generators.hpp"
#include "autobid/lp_baseline.hpp"
#include "autobid/market.hpp"
#include "autobid/mechanism.hpp"
#include "autobid/numeric.hpp"
#include "autobid/rank_score.hpp"
#include "autobid/rng.hpp"
#include "autobid/sequential.hpp"
#include "autobid/simplex.hpp"
#include "autobid/threshold_curve.hpp"
