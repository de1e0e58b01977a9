// Copyright 2026 The predgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PREDGAME_SCENARIOS_H_
#define PREDGAME_SCENARIOS_H_

#include <cstddef>
#include <cstdint>

#include "predgame/distribution.h"
#include "predgame/model.h"
#include "predgame/numeric.h"

namespace predgame {

struct Example41Scenario {
  EmpiricalGame game;
  StrategyProfile profile;
  DistributionSpec population;
};

// Three-player game on a sample from Example41Distribution():
//   player 0: {value 0 on sampled x else 1_[1,2], value 1 on sampled x else 1_[1,2]}
//   players 1, 2: {1_[0,1), 1_[1,2]}
// with profile (first labeler, 1_[1,2], 1_[1,2]). Input error if any point
// lies outside the distribution's support.
Example41Scenario MakeExample41(const Sample& sample);

// Fraction of `trials` fair-coin samples of size m whose mean lies strictly
// inside (1/2, 3/4). Requires m >= 15. Trials run in parallel chunks with
// per-chunk substreams.
double SimulateClaimA6(std::size_t trials, std::size_t m, std::uint64_t seed);

// Exact Pr(1/2 < mean < 3/4) for m fair coins.
Rational ClaimA6ExactProbability(std::size_t m);

namespace reference {

double SimulateClaimA6(std::size_t trials, std::size_t m, std::uint64_t seed);

}  // namespace reference

}  // namespace predgame

#endif  // PREDGAME_SCENARIOS_H_
