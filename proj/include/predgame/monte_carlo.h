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

#ifndef PREDGAME_MONTE_CARLO_H_
#define PREDGAME_MONTE_CARLO_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "predgame/distribution.h"
#include "predgame/model.h"

namespace predgame {

struct MonteCarloEstimate {
  std::vector<double> mean;
  std::vector<double> std_error;
  std::size_t draws = 0;
};

// Draws are split into fixed-size chunks; chunk c uses the substream
// SubstreamSeed(seed, c) and partial sums are combined in chunk order, so the
// result does not depend on the thread count.
inline constexpr std::size_t kMonteCarloChunk = 8192;

// Estimate of the population payoffs pi_i(h) = E_{z~D}[w_i(z; h)].
MonteCarloEstimate MonteCarloPayoffs(const DistributionSpec& dist,
                                     const StrategyProfile& profile,
                                     std::size_t draws, std::uint64_t seed);

namespace reference {

MonteCarloEstimate MonteCarloPayoffs(const DistributionSpec& dist,
                                     const StrategyProfile& profile,
                                     std::size_t draws, std::uint64_t seed);

}  // namespace reference

}  // namespace predgame

#endif  // PREDGAME_MONTE_CARLO_H_
