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

#ifndef PREDGAME_PAC_H_
#define PREDGAME_PAC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "predgame/distribution.h"
#include "predgame/dynamics.h"
#include "predgame/model.h"

namespace predgame {

struct BoundInputs {
  double epsilon = 0.0;
  double delta = 0.0;
  // d = sum of the players' pseudo-dimensions.
  std::size_t d = 1;
  std::size_t players = 1;
  std::size_t m = 0;
};

// ln of 4N (2em)^{10d} exp(-eps^2 m / 8). Natural logarithms throughout.
double LogUniformConvergenceBound(const BoundInputs& in);

// exp of the above; +infinity only when the log exceeds the double range.
double UniformConvergenceBound(const BoundInputs& in);

// (320d/eps^2) ln(160d/eps^2) + 160 d ln(2e)/eps^2 + (16/eps^2) ln(4N/delta)
double SampleSizeThreshold(const BoundInputs& in);

// Smallest integer m >= SampleSizeThreshold.
std::size_t RequiredSampleSize(const BoundInputs& in);

template <typename Scalar>
struct LearnResult {
  StrategyProfile profile;
  Sample sample;
  DynamicsTrace<Scalar> trace;
  std::size_t m_required = 0;
  std::size_t m_used = 0;
  bool capped = false;
  std::size_t d = 0;
};

// Draws m = m_{eps/2, delta} points (or m_cap when smaller), then runs
// eps/2-better-response dynamics from the default profile to convergence.
// With a cap in force the population guarantee no longer applies; the
// empirical eps/2-PNE property still does.
template <typename Scalar>
LearnResult<Scalar> LearnEquilibrium(
    const DistributionSpec& dist, const std::vector<HypothesisClass>& classes,
    const Scalar& epsilon, double delta,
    const std::vector<BetterResponseOracle>& oracles, std::uint64_t seed,
    std::optional<std::size_t> m_cap = std::nullopt,
    const DynamicsOptions& options = {});

}  // namespace predgame

#endif  // PREDGAME_PAC_H_
