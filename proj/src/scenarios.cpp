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

#include "predgame/scenarios.h"

#include <bit>
#include <string>
#include <vector>

#include "predgame/error.h"
#include "predgame/random.h"

namespace predgame {

Example41Scenario MakeExample41(const Sample& sample) {
  if (sample.empty()) ThrowInput("example41 needs a non-empty sample");
  if (sample.dimension() != 1) ThrowInput("example41 sample must be one-dimensional");
  for (std::size_t j = 0; j < sample.size(); ++j) {
    const UserPoint& z = sample[j];
    const double x = z.x[0];
    const bool left = x >= 0.0 && x < 1.0 && z.y == 0.0;
    const bool right = x >= 1.0 && x <= 2.0 && z.y == 1.0;
    if (z.t != 0.5 || !(left || right)) {
      ThrowInput("example41: point " + std::to_string(j) +
                 " lies outside the construction's support");
    }
  }
  const Hypothesis left_indicator = Hypothesis::Interval(0.0, 1.0, true, false);
  const Hypothesis right_indicator = Hypothesis::Interval(1.0, 2.0, true, true);
  std::vector<HypothesisClass> classes;
  classes.push_back(HypothesisClass::Example41(sample));
  classes.push_back(HypothesisClass::Finite({left_indicator, right_indicator}));
  classes.push_back(HypothesisClass::Finite({left_indicator, right_indicator}));
  StrategyProfile profile;
  profile.strategies = {classes[0].Members()[0], right_indicator, right_indicator};
  EmpiricalGame game(sample, std::move(classes));
  return {std::move(game), std::move(profile), Example41Distribution()};
}

namespace {

constexpr std::size_t kTrialChunk = 4096;

// Number of heads among m fair coins.
std::size_t CountHeads(Rng& rng, std::size_t m) {
  std::size_t heads = 0;
  std::size_t left = m;
  while (left >= 64) {
    heads += std::popcount(rng.NextU64());
    left -= 64;
  }
  if (left > 0) {
    heads += std::popcount(rng.NextU64() & ((std::uint64_t{1} << left) - 1));
  }
  return heads;
}

// 1/2 < k/m < 3/4 in integers.
bool InClaimWindow(std::size_t k, std::size_t m) { return 2 * k > m && 4 * k < 3 * m; }

std::size_t RunTrialChunk(std::size_t begin, std::size_t end, std::size_t m,
                          std::uint64_t seed, std::size_t chunk) {
  Rng rng(SubstreamSeed(seed, chunk));
  std::size_t hits = 0;
  for (std::size_t trial = begin; trial < end; ++trial) {
    hits += InClaimWindow(CountHeads(rng, m), m);
  }
  return hits;
}

void CheckClaimArgs(std::size_t trials, std::size_t m) {
  if (m < 15) ThrowConfig("claim-a6 simulation requires m >= 15");
  if (trials == 0) ThrowConfig("claim-a6 simulation requires trials >= 1");
}

}  // namespace

double SimulateClaimA6(std::size_t trials, std::size_t m, std::uint64_t seed) {
  CheckClaimArgs(trials, m);
  const std::size_t num_chunks = (trials + kTrialChunk - 1) / kTrialChunk;
  std::size_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic, 1)
  for (long c = 0; c < static_cast<long>(num_chunks); ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kTrialChunk;
    hits += RunTrialChunk(begin, std::min(trials, begin + kTrialChunk), m, seed, c);
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

Rational ClaimA6ExactProbability(std::size_t m) {
  mpz_class favorable = 0;
  for (std::size_t k = 0; k <= m; ++k) {
    if (!InClaimWindow(k, m)) continue;
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), m, k);
    favorable += c;
  }
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), 2, m);
  Rational p(favorable, total);
  p.canonicalize();
  return p;
}

namespace reference {

double SimulateClaimA6(std::size_t trials, std::size_t m, std::uint64_t seed) {
  CheckClaimArgs(trials, m);
  const std::size_t num_chunks = (trials + kTrialChunk - 1) / kTrialChunk;
  std::size_t hits = 0;
  for (std::size_t c = 0; c < num_chunks; ++c) {
    const std::size_t begin = c * kTrialChunk;
    hits += RunTrialChunk(begin, std::min(trials, begin + kTrialChunk), m, seed, c);
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace reference

}  // namespace predgame
