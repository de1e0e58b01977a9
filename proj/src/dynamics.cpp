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

#include "predgame/dynamics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "predgame/error.h"
#include "predgame/payoff.h"
#include "predgame/random.h"

namespace predgame {

std::string BetterResponseOracle::Name() const {
  switch (kind) {
    case OracleKind::kFiniteEnumeration:
      return "finite";
    case OracleKind::kLinearBlr:
      return "blr";
    case OracleKind::kCustom:
      return "custom:" + custom_id;
  }
  return "unknown";
}

BetterResponseOracle ParseOracle(std::string_view text) {
  if (text == "finite") return BetterResponseOracle::FiniteEnumeration();
  if (text == "blr") return BetterResponseOracle::LinearBlr();
  if (text.starts_with("custom:") && text.size() > 7) {
    return BetterResponseOracle::Custom(std::string(text.substr(7)));
  }
  ThrowConfig("unknown oracle '" + std::string(text) +
              "' (expected finite, blr, or custom:<id>)");
}

namespace {

std::mutex& RegistryMutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::string, CustomOracleFn>& Registry() {
  static std::map<std::string, CustomOracleFn> registry;
  return registry;
}

CustomOracleFn LookupCustomOracle(const std::string& id) {
  std::lock_guard<std::mutex> lock(RegistryMutex());
  const auto it = Registry().find(id);
  if (it == Registry().end()) ThrowConfig("no custom oracle registered as '" + id + "'");
  return it->second;
}

// Satisfier counts of everyone but `player`.
std::vector<std::uint32_t> OtherCounts(const std::vector<Pattern>& patterns,
                                       std::size_t player, std::size_t m) {
  std::vector<std::uint32_t> counts(m, 0);
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (i == player) continue;
    for (std::size_t j = 0; j < m; ++j) counts[j] += patterns[i][j];
  }
  return counts;
}

template <typename Scalar>
Response<Scalar> BestResponseFromPatterns(
    const EmpiricalGame& game, const std::vector<Pattern>& patterns,
    const StrategyProfile& profile, std::size_t player,
    const BetterResponseOracle& oracle, const DynamicsOptions& options) {
  const HypothesisClass& cls = game.player_class(player);
  const std::size_t m = game.sample_size();
  const std::size_t n_players = game.num_players();
  const std::vector<std::uint32_t> others = OtherCounts(patterns, player, m);
  Response<Scalar> best;
  if (oracle.kind == OracleKind::kFiniteEnumeration) {
    const auto& members = cls.Members();
    const auto& member_patterns = game.member_patterns(player);
    for (std::size_t k = 0; k < members.size(); ++k) {
      Scalar value = DeviationPayoff<Scalar>(member_patterns[k], others, n_players);
      if (!best.member_index || value > best.payoff) {
        best.payoff = std::move(value);
        best.member_index = k;
      }
    }
    best.strategy = members[*best.member_index];
    return best;
  }
  if (oracle.kind == OracleKind::kLinearBlr) {
    const auto& lin = std::get<LinearClass>(cls.kind());
    std::vector<Hypothesis> opponents;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (i != player) opponents.push_back(profile[i]);
    }
    LinearResponse lr = BestLinearResponse(game.sample(), opponents,
                                           lin.with_bias, options.linear);
    best.payoff = DeviationPayoff<Scalar>(
        SatisfactionPattern(game.sample(), lr.hypothesis), others, n_players);
    best.strategy = std::move(lr.hypothesis);
    return best;
  }
  ThrowInternal("best response requested from a non-exact oracle");
}

}  // namespace

void RegisterCustomOracle(const std::string& id, CustomOracleFn fn) {
  std::lock_guard<std::mutex> lock(RegistryMutex());
  Registry()[id] = std::move(fn);
}

bool HasCustomOracle(const std::string& id) {
  std::lock_guard<std::mutex> lock(RegistryMutex());
  return Registry().count(id) > 0;
}

std::vector<BetterResponseOracle> DefaultOracles(const EmpiricalGame& game) {
  std::vector<BetterResponseOracle> out;
  for (const HypothesisClass& cls : game.classes()) {
    out.push_back(cls.IsLinear() ? BetterResponseOracle::LinearBlr()
                                 : BetterResponseOracle::FiniteEnumeration());
  }
  return out;
}

void CheckOracles(const EmpiricalGame& game,
                  const std::vector<BetterResponseOracle>& oracles) {
  if (oracles.size() != game.num_players()) {
    ThrowConfig("expected " + std::to_string(game.num_players()) +
                " oracles, got " + std::to_string(oracles.size()));
  }
  for (std::size_t i = 0; i < oracles.size(); ++i) {
    const HypothesisClass& cls = game.player_class(i);
    const std::string who = "player " + std::to_string(i) + ": ";
    switch (oracles[i].kind) {
      case OracleKind::kFiniteEnumeration:
        if (!cls.IsFinite()) {
          ThrowConfig(who + "finite enumeration needs a finite class");
        }
        break;
      case OracleKind::kLinearBlr:
        if (!cls.IsLinear()) ThrowConfig(who + "BLR needs the linear class");
        break;
      case OracleKind::kCustom:
        if (!HasCustomOracle(oracles[i].custom_id)) {
          ThrowConfig(who + "no custom oracle registered as '" +
                      oracles[i].custom_id + "'");
        }
        break;
    }
  }
}

template <typename Scalar>
Response<Scalar> BestResponse(const EmpiricalGame& game,
                              const StrategyProfile& profile,
                              std::size_t player,
                              const BetterResponseOracle& oracle,
                              const DynamicsOptions& options) {
  game.CheckProfile(profile);
  if (player >= game.num_players()) ThrowInput("player index out of range");
  if (!oracle.exact()) ThrowUnsupported("custom oracles do not give best responses");
  if (oracle.kind == OracleKind::kFiniteEnumeration &&
      !game.player_class(player).IsFinite()) {
    ThrowUnsupported("finite enumeration needs a finite class");
  }
  if (oracle.kind == OracleKind::kLinearBlr &&
      !game.player_class(player).IsLinear()) {
    ThrowUnsupported("BLR needs the linear class");
  }
  return BestResponseFromPatterns<Scalar>(
      game, ProfilePatterns(game.sample(), profile), profile, player, oracle,
      options);
}

template <typename Scalar>
std::optional<Hypothesis> EpsilonBetterResponseFinite(
    const EmpiricalGame& game, const StrategyProfile& profile,
    std::size_t player, const Scalar& epsilon) {
  if (!(epsilon > 0)) ThrowConfig("epsilon must be positive");
  if (player >= game.num_players()) ThrowInput("player index out of range");
  if (!game.player_class(player).IsFinite()) {
    ThrowUnsupported("finite better response needs a finite class");
  }
  game.CheckProfile(profile);
  const std::vector<Pattern> patterns = ProfilePatterns(game.sample(), profile);
  const Response<Scalar> best = BestResponseFromPatterns<Scalar>(
      game, patterns, profile, player, BetterResponseOracle::FiniteEnumeration(),
      {});
  const Scalar current = DeviationPayoff<Scalar>(
      patterns[player], OtherCounts(patterns, player, game.sample_size()),
      game.num_players());
  const Scalar gain = best.payoff - current;
  if (IsImprovement(gain, epsilon)) return best.strategy;
  return std::nullopt;
}

std::size_t DynamicsStepBound(std::size_t num_players, double epsilon) {
  if (!(epsilon > 0.0)) ThrowConfig("epsilon must be positive");
  return static_cast<std::size_t>(
      std::ceil((std::log(static_cast<double>(num_players)) + 1.0) / epsilon));
}

namespace {

template <typename Scalar>
class DynamicsRunner {
 public:
  DynamicsRunner(const EmpiricalGame& game, StrategyProfile profile,
                 const Scalar& epsilon,
                 const std::vector<BetterResponseOracle>& oracles,
                 const DynamicsOptions& options)
      : game_(game),
        profile_(std::move(profile)),
        epsilon_(epsilon),
        oracles_(oracles),
        options_(options),
        patterns_(ProfilePatterns(game.sample(), profile_)) {}

  // Moves `player` if its oracle finds an epsilon-better response.
  bool TryImprove(std::size_t player, DynamicsTrace<Scalar>& trace) {
    const std::size_t m = game_.sample_size();
    const std::size_t n_players = game_.num_players();
    const std::vector<std::uint32_t> others = OtherCounts(patterns_, player, m);
    const Scalar current =
        DeviationPayoff<Scalar>(patterns_[player], others, n_players);
    Hypothesis candidate;
    Scalar candidate_payoff;
    const BetterResponseOracle& oracle = oracles_[player];
    if (oracle.exact()) {
      Response<Scalar> r = BestResponseFromPatterns<Scalar>(
          game_, patterns_, profile_, player, oracle, options_);
      candidate = std::move(r.strategy);
      candidate_payoff = std::move(r.payoff);
    } else {
      const CustomOracleFn fn = LookupCustomOracle(oracle.custom_id);
      std::optional<Hypothesis> h = fn(game_, profile_, player,
                                       ScalarTraits<Scalar>::ToDouble(epsilon_));
      if (!h) return false;
      if (!game_.player_class(player).Contains(*h)) {
        ThrowInternal("custom oracle '" + oracle.custom_id +
                      "' returned a strategy outside the class");
      }
      candidate_payoff = DeviationPayoff<Scalar>(
          SatisfactionPattern(game_.sample(), *h), others, n_players);
      candidate = std::move(*h);
      if (!IsImprovement(Scalar(candidate_payoff - current), epsilon_)) {
        ThrowInternal("custom oracle '" + oracle.custom_id +
                      "' returned a non-improving strategy");
      }
    }
    if (!IsImprovement(Scalar(candidate_payoff - current), epsilon_)) {
      return false;
    }
    DynamicsStep<Scalar> step;
    step.player = player;
    step.old_strategy = profile_[player];
    step.new_strategy = candidate;
    step.old_payoff = current;
    step.new_payoff = candidate_payoff;
    patterns_[player] = SatisfactionPattern(game_.sample(), candidate);
    profile_.strategies[player] = std::move(candidate);
    step.potential_after = PotentialFromPatterns<Scalar>(patterns_, m);
    trace.steps.push_back(std::move(step));
    return true;
  }

  const StrategyProfile& profile() const { return profile_; }
  const std::vector<Pattern>& patterns() const { return patterns_; }

 private:
  const EmpiricalGame& game_;
  StrategyProfile profile_;
  Scalar epsilon_;
  const std::vector<BetterResponseOracle>& oracles_;
  const DynamicsOptions& options_;
  std::vector<Pattern> patterns_;
};

}  // namespace

template <typename Scalar>
DynamicsResult<Scalar> RunDynamics(
    const EmpiricalGame& game, const StrategyProfile& initial,
    const Scalar& epsilon, const std::vector<BetterResponseOracle>& oracles,
    const ScheduleSpec& schedule, const DynamicsOptions& options) {
  if (!(epsilon > 0)) ThrowConfig("epsilon must be positive");
  if ((schedule.kind == ScheduleKind::kRandomPlayer) != schedule.seed.has_value()) {
    ThrowConfig("a seed is required exactly for the random-player schedule");
  }
  game.CheckProfile(initial);
  CheckOracles(game, oracles);
  const std::size_t n_players = game.num_players();
  const std::size_t bound =
      DynamicsStepBound(n_players, ScalarTraits<Scalar>::ToDouble(epsilon));
  const std::size_t cap = schedule.max_iterations.value_or(bound);

  DynamicsRunner<Scalar> runner(game, initial, epsilon, oracles, options);
  DynamicsResult<Scalar> result;
  DynamicsTrace<Scalar>& trace = result.trace;
  trace.initial_potential =
      PotentialFromPatterns<Scalar>(runner.patterns(), game.sample_size());

  std::optional<Rng> rng;
  if (schedule.kind == ScheduleKind::kRandomPlayer) rng.emplace(*schedule.seed);
  std::vector<std::size_t> order(n_players);
  auto reshuffle = [&] {
    std::iota(order.begin(), order.end(), 0);
    if (!rng) return;
    for (std::size_t k = n_players; k > 1; --k) {
      std::swap(order[k - 1], order[rng->Below(k)]);
    }
  };
  reshuffle();

  std::size_t pos = 0;
  std::size_t misses = 0;
  while (misses < n_players) {
    const std::size_t player = order[pos];
    bool moved = false;
    try {
      if (trace.steps.size() >= cap) {
        // Out of budget: only probe whether the profile is already stable.
        DynamicsTrace<Scalar> probe;
        DynamicsRunner<Scalar> check(game, runner.profile(), epsilon, oracles,
                                     options);
        if (check.TryImprove(player, probe)) {
          if (schedule.max_iterations) break;
          ThrowInternal("dynamics exceeded the potential step bound " +
                        std::to_string(bound));
        }
      } else {
        moved = runner.TryImprove(player, trace);
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "dynamics step " + std::to_string(trace.steps.size()) +
                                ", player " + std::to_string(player) + ": " +
                                e.what());
    }
    if (moved) {
      misses = 0;
      pos = 0;
      reshuffle();
    } else {
      ++misses;
      pos = (pos + 1) % n_players;
    }
  }
  trace.terminated = misses >= n_players;
  trace.iterations = trace.steps.size();
  result.profile = runner.profile();
  return result;
}

template <typename Scalar>
Verdict<Scalar> VerifyEpsilonPne(const EmpiricalGame& game,
                                 const StrategyProfile& profile,
                                 const Scalar& epsilon,
                                 const std::vector<BetterResponseOracle>& oracles,
                                 const DynamicsOptions& options) {
  if (epsilon < 0) ThrowConfig("epsilon must be nonnegative");
  game.CheckProfile(profile);
  CheckOracles(game, oracles);
  const std::size_t m = game.sample_size();
  const std::size_t n_players = game.num_players();
  const std::vector<Pattern> patterns = ProfilePatterns(game.sample(), profile);
  Verdict<Scalar> verdict;
  verdict.best_gains.assign(n_players, Scalar(0));
  for (std::size_t i = 0; i < n_players; ++i) {
    const std::vector<std::uint32_t> others = OtherCounts(patterns, i, m);
    const Scalar current = DeviationPayoff<Scalar>(patterns[i], others, n_players);
    std::optional<Hypothesis> response;
    Scalar gain(0);
    if (oracles[i].exact()) {
      Response<Scalar> r = BestResponseFromPatterns<Scalar>(
          game, patterns, profile, i, oracles[i], options);
      gain = r.payoff - current;
      response = std::move(r.strategy);
    } else {
      const CustomOracleFn fn = LookupCustomOracle(oracles[i].custom_id);
      response = fn(game, profile, i, ScalarTraits<Scalar>::ToDouble(epsilon));
      if (response) {
        gain = DeviationPayoff<Scalar>(SatisfactionPattern(game.sample(), *response),
                                       others, n_players) -
               current;
      }
    }
    verdict.best_gains[i] = gain;
    if (response && IsViolation(gain, epsilon)) {
      if (verdict.holds) {
        verdict.holds = false;
        verdict.player = i;
        verdict.witness = std::move(response);
        verdict.gain = gain;
      }
    } else if (!oracles[i].exact()) {
      verdict.advisory = true;
    }
  }
  if (!verdict.holds) verdict.advisory = false;
  return verdict;
}

std::size_t CountProfiles(const EmpiricalGame& game, std::size_t budget) {
  std::size_t total = 1;
  for (const HypothesisClass& cls : game.classes()) {
    if (!cls.IsFinite()) {
      ThrowUnsupported("pure Nash enumeration needs finite classes");
    }
    const std::size_t k = cls.Members().size();
    if (total > budget / k) {
      ThrowResource("profile count exceeds the enumeration budget of " +
                    std::to_string(budget));
    }
    total *= k;
  }
  if (total > budget) {
    ThrowResource("profile count exceeds the enumeration budget of " +
                  std::to_string(budget));
  }
  return total;
}

namespace {

IndexProfile DecodeProfile(std::size_t q, const std::vector<std::size_t>& sizes) {
  IndexProfile idx(sizes.size());
  for (std::size_t i = sizes.size(); i-- > 0;) {
    idx[i] = q % sizes[i];
    q /= sizes[i];
  }
  return idx;
}

std::vector<std::size_t> ClassSizes(const EmpiricalGame& game) {
  std::vector<std::size_t> sizes;
  for (const HypothesisClass& cls : game.classes()) {
    sizes.push_back(cls.Members().size());
  }
  return sizes;
}

template <typename Scalar>
bool IsPureNash(const EmpiricalGame& game, const IndexProfile& idx,
                std::vector<std::uint32_t>& counts,
                std::vector<std::uint32_t>& others) {
  const std::size_t m = game.sample_size();
  const std::size_t n_players = game.num_players();
  std::fill(counts.begin(), counts.end(), 0);
  for (std::size_t i = 0; i < n_players; ++i) {
    const Pattern& p = game.member_patterns(i)[idx[i]];
    for (std::size_t j = 0; j < m; ++j) counts[j] += p[j];
  }
  const Scalar zero(0);
  for (std::size_t i = 0; i < n_players; ++i) {
    const auto& pats = game.member_patterns(i);
    for (std::size_t j = 0; j < m; ++j) others[j] = counts[j] - pats[idx[i]][j];
    const Scalar current = DeviationPayoff<Scalar>(pats[idx[i]], others, n_players);
    for (std::size_t k = 0; k < pats.size(); ++k) {
      if (k == idx[i]) continue;
      const Scalar gain =
          DeviationPayoff<Scalar>(pats[k], others, n_players) - current;
      if (IsViolation(gain, zero)) return false;
    }
  }
  return true;
}

}  // namespace

template <typename Scalar>
std::vector<IndexProfile> EnumeratePureNash(const EmpiricalGame& game,
                                            std::size_t budget) {
  const std::size_t total = CountProfiles(game, budget);
  const std::vector<std::size_t> sizes = ClassSizes(game);
  std::vector<std::size_t> found;
#pragma omp parallel
  {
    std::vector<std::size_t> local;
    std::vector<std::uint32_t> counts(game.sample_size());
    std::vector<std::uint32_t> others(game.sample_size());
#pragma omp for schedule(static)
    for (long q = 0; q < static_cast<long>(total); ++q) {
      if (IsPureNash<Scalar>(game, DecodeProfile(q, sizes), counts, others)) {
        local.push_back(static_cast<std::size_t>(q));
      }
    }
#pragma omp critical(predgame_pne_merge)
    found.insert(found.end(), local.begin(), local.end());
  }
  std::sort(found.begin(), found.end());
  std::vector<IndexProfile> out;
  out.reserve(found.size());
  for (std::size_t q : found) out.push_back(DecodeProfile(q, sizes));
  return out;
}

template <typename Scalar>
std::vector<IndexProfile> PotentialMaximizers(const EmpiricalGame& game,
                                              std::size_t budget) {
  const std::size_t total = CountProfiles(game, budget);
  const std::vector<std::size_t> sizes = ClassSizes(game);
  std::vector<Scalar> phi(total);
#pragma omp parallel for schedule(static)
  for (long q = 0; q < static_cast<long>(total); ++q) {
    const IndexProfile idx = DecodeProfile(q, sizes);
    std::vector<Pattern> patterns;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      patterns.push_back(game.member_patterns(i)[idx[i]]);
    }
    phi[q] = PotentialFromPatterns<Scalar>(patterns, game.sample_size());
  }
  Scalar best = phi[0];
  for (const Scalar& v : phi) {
    if (v > best) best = v;
  }
  std::vector<IndexProfile> out;
  for (std::size_t q = 0; q < total; ++q) {
    bool at_max;
    if constexpr (std::is_same_v<Scalar, double>) {
      at_max = phi[q] >= best - kFloatingGainSlack;
    } else {
      at_max = phi[q] == best;
    }
    if (at_max) out.push_back(DecodeProfile(q, sizes));
  }
  return out;
}

namespace reference {

template <typename Scalar>
std::vector<IndexProfile> EnumeratePureNash(const EmpiricalGame& game,
                                            std::size_t budget) {
  const std::size_t total = CountProfiles(game, budget);
  const std::vector<std::size_t> sizes = ClassSizes(game);
  std::vector<IndexProfile> out;
  const Scalar zero(0);
  for (std::size_t q = 0; q < total; ++q) {
    const IndexProfile idx = DecodeProfile(q, sizes);
    const StrategyProfile profile = game.ProfileFromIndices(idx);
    const std::vector<Scalar> base = EmpiricalPayoffs<Scalar>(game.sample(), profile);
    bool stable = true;
    for (std::size_t i = 0; i < idx.size() && stable; ++i) {
      const auto& members = game.player_class(i).Members();
      for (std::size_t k = 0; k < members.size() && stable; ++k) {
        if (k == idx[i]) continue;
        const std::vector<Scalar> dev = EmpiricalPayoffs<Scalar>(
            game.sample(), profile.WithStrategy(i, members[k]));
        if (IsViolation(Scalar(dev[i] - base[i]), zero)) stable = false;
      }
    }
    if (stable) out.push_back(idx);
  }
  return out;
}

template std::vector<IndexProfile> EnumeratePureNash<double>(const EmpiricalGame&,
                                                             std::size_t);
template std::vector<IndexProfile> EnumeratePureNash<Rational>(
    const EmpiricalGame&, std::size_t);

}  // namespace reference

#define PREDGAME_INSTANTIATE(S)                                                \
  template Response<S> BestResponse<S>(const EmpiricalGame&,                   \
                                       const StrategyProfile&, std::size_t,    \
                                       const BetterResponseOracle&,            \
                                       const DynamicsOptions&);                \
  template std::optional<Hypothesis> EpsilonBetterResponseFinite<S>(           \
      const EmpiricalGame&, const StrategyProfile&, std::size_t, const S&);    \
  template DynamicsResult<S> RunDynamics<S>(                                   \
      const EmpiricalGame&, const StrategyProfile&, const S&,                  \
      const std::vector<BetterResponseOracle>&, const ScheduleSpec&,           \
      const DynamicsOptions&);                                                 \
  template Verdict<S> VerifyEpsilonPne<S>(                                     \
      const EmpiricalGame&, const StrategyProfile&, const S&,                  \
      const std::vector<BetterResponseOracle>&, const DynamicsOptions&);       \
  template std::vector<IndexProfile> EnumeratePureNash<S>(const EmpiricalGame&, \
                                                          std::size_t);        \
  template std::vector<IndexProfile> PotentialMaximizers<S>(                   \
      const EmpiricalGame&, std::size_t);

PREDGAME_INSTANTIATE(double)
PREDGAME_INSTANTIATE(Rational)

#undef PREDGAME_INSTANTIATE

}  // namespace predgame
