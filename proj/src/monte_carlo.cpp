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

#include "predgame/monte_carlo.h"

#include <algorithm>
#include <cmath>

#include "predgame/error.h"
#include "predgame/payoff.h"

namespace predgame {

namespace {

struct ChunkSums {
  std::vector<double> sum;
  std::vector<double> sum_sq;
};

ChunkSums RunChunk(const DistributionSpec& dist, const StrategyProfile& profile,
                   std::size_t begin, std::size_t end, std::uint64_t seed,
                   std::size_t chunk) {
  const std::size_t n_players = profile.size();
  ChunkSums sums{std::vector<double>(n_players, 0.0),
                 std::vector<double>(n_players, 0.0)};
  Rng rng(SubstreamSeed(seed, chunk));
  std::vector<std::uint8_t> sat(n_players);
  for (std::size_t d = begin; d < end; ++d) {
    const UserPoint z = dist.Draw(rng);
    std::uint32_t count = 0;
    for (std::size_t i = 0; i < n_players; ++i) {
      sat[i] = Satisfies(z, profile[i]);
      count += sat[i];
    }
    if (count == 0) continue;
    const double w = 1.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < n_players; ++i) {
      if (sat[i]) {
        sums.sum[i] += w;
        sums.sum_sq[i] += w * w;
      }
    }
  }
  return sums;
}

void CheckArgs(const DistributionSpec& dist, const StrategyProfile& profile,
               std::size_t draws) {
  if (draws == 0) ThrowConfig("monte carlo needs draws >= 1");
  if (profile.size() == 0) ThrowInput("profile must have at least one player");
  for (const Hypothesis& h : profile.strategies) h.CheckDimension(dist.dimension());
}

MonteCarloEstimate Combine(const std::vector<ChunkSums>& chunks,
                           std::size_t n_players, std::size_t draws) {
  MonteCarloEstimate est;
  est.draws = draws;
  est.mean.assign(n_players, 0.0);
  est.std_error.assign(n_players, 0.0);
  const double dn = static_cast<double>(draws);
  for (std::size_t i = 0; i < n_players; ++i) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const ChunkSums& c : chunks) {
      sum += c.sum[i];
      sum_sq += c.sum_sq[i];
    }
    const double mean = sum / dn;
    est.mean[i] = mean;
    if (draws > 1) {
      const double var =
          std::max(0.0, (sum_sq - dn * mean * mean) / (dn - 1.0));
      est.std_error[i] = std::sqrt(var / dn);
    }
  }
  return est;
}

}  // namespace

MonteCarloEstimate MonteCarloPayoffs(const DistributionSpec& dist,
                                     const StrategyProfile& profile,
                                     std::size_t draws, std::uint64_t seed) {
  CheckArgs(dist, profile, draws);
  const std::size_t num_chunks = (draws + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<ChunkSums> chunks(num_chunks);
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < static_cast<long>(num_chunks); ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kMonteCarloChunk;
    const std::size_t end = std::min(draws, begin + kMonteCarloChunk);
    chunks[c] = RunChunk(dist, profile, begin, end, seed, c);
  }
  return Combine(chunks, profile.size(), draws);
}

namespace reference {

MonteCarloEstimate MonteCarloPayoffs(const DistributionSpec& dist,
                                     const StrategyProfile& profile,
                                     std::size_t draws, std::uint64_t seed) {
  CheckArgs(dist, profile, draws);
  const std::size_t num_chunks = (draws + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<ChunkSums> chunks;
  chunks.reserve(num_chunks);
  for (std::size_t c = 0; c < num_chunks; ++c) {
    const std::size_t begin = c * kMonteCarloChunk;
    chunks.push_back(RunChunk(dist, profile, begin,
                              std::min(draws, begin + kMonteCarloChunk), seed, c));
  }
  return Combine(chunks, profile.size(), draws);
}

}  // namespace reference

}  // namespace predgame
