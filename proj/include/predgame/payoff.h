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

#ifndef PREDGAME_PAYOFF_H_
#define PREDGAME_PAYOFF_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "predgame/model.h"
#include "predgame/numeric.h"

namespace predgame {

// I(z, h): 1 iff |h(x) - y| <= t. Decided exactly over the stored doubles;
// a floating filter settles clear cases and GMP settles the rest.
bool Satisfies(const UserPoint& z, const Hypothesis& h);

// Exact test of |sum_k a_k x_k - y| <= t.
bool WithinTolerance(std::span<const double> a, std::span<const double> x,
                     double y, double t);

Pattern SatisfactionPattern(const Sample& sample, const Hypothesis& h);

// Per-point count of satisfying players.
std::vector<std::uint32_t> SatisfierCounts(std::span<const Pattern> patterns,
                                           std::size_t m);

// w(z; h): 1/(#satisfying players) for each satisfying player, else 0.
template <typename Scalar>
std::vector<Scalar> PayoffWeights(const UserPoint& z,
                                  const StrategyProfile& profile);

// pi^S from satisfaction patterns. Every player's payoff is
// (1/m) sum_k hist[k] / k, where hist[k] counts satisfied points shared by k
// players, so rational mode costs O(N) big-number operations per player.
template <typename Scalar>
std::vector<Scalar> PayoffsFromPatterns(std::span<const Pattern> patterns,
                                        std::size_t m);

// Payoff of a single pattern against fixed opponent counts (the number of
// *other* players satisfying each point).
template <typename Scalar>
Scalar DeviationPayoff(const Pattern& pattern,
                       std::span<const std::uint32_t> other_counts,
                       std::size_t num_players);

// Harmonic potential (1/m) sum_j H(N(z_j; h)).
template <typename Scalar>
Scalar PotentialFromPatterns(std::span<const Pattern> patterns, std::size_t m);

std::vector<Pattern> ProfilePatterns(const Sample& sample,
                                     const StrategyProfile& profile);

// pi^S over an arbitrary sample (input error when empty).
template <typename Scalar>
std::vector<Scalar> EmpiricalPayoffs(const Sample& sample,
                                     const StrategyProfile& profile);

template <typename Scalar>
std::vector<Scalar> EmpiricalPayoffs(const EmpiricalGame& game,
                                     const StrategyProfile& profile);

template <typename Scalar>
Scalar Potential(const EmpiricalGame& game, const StrategyProfile& profile);

// H_k = 1 + 1/2 + ... + 1/k.
template <typename Scalar>
Scalar Harmonic(std::size_t k);

// Number of distinct satisfaction patterns the class realizes on the sample.
// Finite classes enumerate members; linear classes with n (+bias) <= the
// region-enumeration limit use the region enumerator.
std::size_t RestrictionCount(const HypothesisClass& cls, const Sample& sample);

}  // namespace predgame

#endif  // PREDGAME_PAYOFF_H_
