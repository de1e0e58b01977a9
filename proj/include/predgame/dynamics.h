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

#ifndef PREDGAME_DYNAMICS_H_
#define PREDGAME_DYNAMICS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "predgame/linear_oracle.h"
#include "predgame/model.h"
#include "predgame/numeric.h"

namespace predgame {

enum class OracleKind { kFiniteEnumeration, kLinearBlr, kCustom };

struct BetterResponseOracle {
  OracleKind kind = OracleKind::kFiniteEnumeration;
  std::string custom_id;

  static BetterResponseOracle FiniteEnumeration() {
    return {OracleKind::kFiniteEnumeration, {}};
  }
  static BetterResponseOracle LinearBlr() { return {OracleKind::kLinearBlr, {}}; }
  static BetterResponseOracle Custom(std::string id) {
    return {OracleKind::kCustom, std::move(id)};
  }

  // FiniteEnumeration and LinearBlr return true best responses.
  bool exact() const { return kind != OracleKind::kCustom; }
  std::string Name() const;
};

BetterResponseOracle ParseOracle(std::string_view text);

// The natural exact oracle for each class: enumeration for finite classes,
// BLR for linear ones.
std::vector<BetterResponseOracle> DefaultOracles(const EmpiricalGame& game);

// Config error when an oracle cannot serve its player's class.
void CheckOracles(const EmpiricalGame& game,
                  const std::vector<BetterResponseOracle>& oracles);

// A plug-in oracle receives (game, profile, player, epsilon) and returns an
// epsilon-better response or nothing.
using CustomOracleFn = std::function<std::optional<Hypothesis>(
    const EmpiricalGame&, const StrategyProfile&, std::size_t, double)>;

void RegisterCustomOracle(const std::string& id, CustomOracleFn fn);
bool HasCustomOracle(const std::string& id);

struct DynamicsOptions {
  LinearOracleOptions linear;
};

template <typename Scalar>
struct Response {
  Hypothesis strategy;
  Scalar payoff{};
  std::optional<std::size_t> member_index;
};

// Best member of a finite class with gain >= epsilon over the current
// strategy; ties go to the lowest member index. Unsupported for linear classes.
template <typename Scalar>
std::optional<Hypothesis> EpsilonBetterResponseFinite(
    const EmpiricalGame& game, const StrategyProfile& profile,
    std::size_t player, const Scalar& epsilon);

// Best response of `player` under an exact oracle.
template <typename Scalar>
Response<Scalar> BestResponse(const EmpiricalGame& game,
                              const StrategyProfile& profile,
                              std::size_t player,
                              const BetterResponseOracle& oracle,
                              const DynamicsOptions& options = {});

enum class ScheduleKind { kRoundRobin, kRandomPlayer };

struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::kRoundRobin;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iterations;

  static ScheduleSpec RoundRobin() { return {}; }
  static ScheduleSpec RandomPlayer(std::uint64_t seed) {
    return {ScheduleKind::kRandomPlayer, seed, std::nullopt};
  }
};

template <typename Scalar>
struct DynamicsStep {
  std::size_t player = 0;
  Hypothesis old_strategy;
  Hypothesis new_strategy;
  Scalar old_payoff{};
  Scalar new_payoff{};
  Scalar potential_after{};
};

template <typename Scalar>
struct DynamicsTrace {
  std::vector<DynamicsStep<Scalar>> steps;
  Scalar initial_potential{};
  bool terminated = false;
  std::size_t iterations = 0;
};

template <typename Scalar>
struct DynamicsResult {
  StrategyProfile profile;
  DynamicsTrace<Scalar> trace;
};

// ceil((ln N + 1) / epsilon): the step bound implied by the potential range.
std::size_t DynamicsStepBound(std::size_t num_players, double epsilon);

// Epsilon-better-response dynamics. The scheduled player moves to its
// oracle's best response whenever that gains at least epsilon. Stops when a
// full pass over the players finds no improvement (terminated = true) or the
// schedule's iteration override is reached (terminated = false).
template <typename Scalar>
DynamicsResult<Scalar> RunDynamics(
    const EmpiricalGame& game, const StrategyProfile& initial,
    const Scalar& epsilon, const std::vector<BetterResponseOracle>& oracles,
    const ScheduleSpec& schedule = {}, const DynamicsOptions& options = {});

template <typename Scalar>
struct Verdict {
  bool holds = true;
  // Set when a non-exact (custom) oracle was consulted.
  bool advisory = false;
  std::optional<std::size_t> player;
  std::optional<Hypothesis> witness;
  Scalar gain{};
  // Best achievable gain per player (0 for custom oracles that found none).
  std::vector<Scalar> best_gains;
};

// Holds iff no player has a deviation gaining at least epsilon (and strictly
// more than zero; floating mode adds a 1e-12 slack). On violation reports the
// lowest-index violating player and its best response.
template <typename Scalar>
Verdict<Scalar> VerifyEpsilonPne(const EmpiricalGame& game,
                                 const StrategyProfile& profile,
                                 const Scalar& epsilon,
                                 const std::vector<BetterResponseOracle>& oracles,
                                 const DynamicsOptions& options = {});

inline constexpr std::size_t kDefaultProfileBudget = 1'000'000;

using IndexProfile = std::vector<std::size_t>;

// Number of pure profiles; resource error above `budget`, unsupported error
// for non-finite classes.
std::size_t CountProfiles(const EmpiricalGame& game, std::size_t budget);

// All exact PNE of a finite game as member-index tuples, in lexicographic
// order. OpenMP-parallel over profiles.
template <typename Scalar>
std::vector<IndexProfile> EnumeratePureNash(
    const EmpiricalGame& game, std::size_t budget = kDefaultProfileBudget);

// Every profile attaining the maximum potential, lexicographic order.
template <typename Scalar>
std::vector<IndexProfile> PotentialMaximizers(
    const EmpiricalGame& game, std::size_t budget = kDefaultProfileBudget);

namespace reference {

// Brute force: rebuilds each profile and recomputes every unilateral
// deviation's payoff from scratch, one thread.
template <typename Scalar>
std::vector<IndexProfile> EnumeratePureNash(
    const EmpiricalGame& game, std::size_t budget = kDefaultProfileBudget);

}  // namespace reference

}  // namespace predgame

#endif  // PREDGAME_DYNAMICS_H_
