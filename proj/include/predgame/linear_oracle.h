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

#ifndef PREDGAME_LINEAR_ORACLE_H_
#define PREDGAME_LINEAR_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "predgame/model.h"
#include "predgame/numeric.h"

namespace predgame {

// Per-point position of a linear predictor relative to the tolerance slab
// y - t <= h.x <= y + t. Declaration order is the lexicographic order used
// for tie-breaking and output.
enum class Region : std::uint8_t { kOne = 0, kAbove = 1, kBelow = 2, kFree = 3 };

using RegionVector = std::vector<Region>;

char RegionSymbol(Region r);
std::string RegionString(const RegionVector& v);
RegionVector ParseRegionString(std::string_view text);

struct LinearOracleOptions {
  // Largest homogeneous dimension (after any bias augmentation).
  std::size_t max_dimension = 3;
  ArithmeticMode mode = ArithmeticMode::kFloating;
  // Upper bound on |R_j| during enumeration.
  std::size_t region_budget = 1'000'000;
};

// Strictness threshold for the common slack variable in floating mode.
inline constexpr double kStrictSlackThreshold = 1e-9;

struct FeasibilityResult {
  bool feasible = false;
  // Witness h (double representation; exact in rational mode when the
  // rational witness is dyadic).
  std::vector<double> witness;
  // Smallest margin of the witness over ABOVE/BELOW constraints (0 if none).
  double slack = 0.0;
  // Exact witness, populated in rational mode.
  std::optional<std::vector<Rational>> exact_witness;
};

// Partial vector feasibility: is there h with
//   ONE   -> |h.x_j - y_j| <= t_j
//   ABOVE -> h.x_j - y_j >  t_j
//   BELOW -> h.x_j - y_j < -t_j
// Strict rows are decided by maximizing a shared slack s; feasible iff the
// closed system is feasible and s* > 0 (s* > 1e-9 in floating mode). The
// returned witness maximizes a second, all-row margin so it sits in the
// relative interior whenever the region has one.
FeasibilityResult Pvf(const Sample& sample, const RegionVector& v,
                      const LinearOracleOptions& options = {});

// Appends a constant-1 feature to every point.
Sample AugmentWithBias(const Sample& sample);

// R_m: every FREE-free region vector realized by some h, in lexicographic
// order. Built incrementally, extending each feasible prefix by
// ONE/ABOVE/BELOW. Parallel over the candidates of each level.
std::vector<RegionVector> EnumerateRegions(const Sample& sample,
                                           const LinearOracleOptions& options = {});

// Satisfaction pattern (ONE entries) of a region vector.
Pattern OnePattern(const RegionVector& v);

struct LinearResponse {
  Hypothesis hypothesis;
  RegionVector region;
  // Weight w_j = 1 / (#opponents satisfying z_j + 1).
  std::vector<Rational> weights;
  Rational payoff_exact;
  double payoff = 0.0;
};

// Best linear response against fixed opponents. Scores every region of
// R_m by the weight of its ONE entries and returns a witness for the best one
// (ties: lexicographically smallest vector). A candidate whose double
// witness does not reproduce its ONE-pattern exactly is skipped in favor of
// the next-best region, so the reported payoff is always the exact payoff of
// the returned hypothesis.
LinearResponse BestLinearResponse(const Sample& sample,
                                  std::span<const Hypothesis> opponents,
                                  bool with_bias = false,
                                  const LinearOracleOptions& options = {});

namespace reference {

// Single-threaded region enumeration: every prefix extension is decided by
// a fresh PVF call, with no witness reuse.
std::vector<RegionVector> EnumerateRegions(const Sample& sample,
                                           const LinearOracleOptions& options = {});

}  // namespace reference

}  // namespace predgame

#endif  // PREDGAME_LINEAR_ORACLE_H_
