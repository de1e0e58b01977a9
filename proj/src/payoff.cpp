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

#include "predgame/payoff.h"

#include <cfloat>
#include <cmath>
#include <set>

#include "predgame/error.h"
#include "predgame/linear_oracle.h"

namespace predgame {

bool WithinTolerance(std::span<const double> a, std::span<const double> x,
                     double y, double t) {
  const std::size_t n = x.size();
  const bool bias = a.size() == n + 1;
  double r = 0.0;
  double magnitude = std::fabs(y);
  for (std::size_t k = 0; k < n; ++k) {
    const double term = a[k] * x[k];
    r += term;
    magnitude += std::fabs(term);
  }
  if (bias) {
    r += a[n];
    magnitude += std::fabs(a[n]);
  }
  r -= y;
  // Forward error of the dot product and the subtraction, doubled for margin.
  const double ops = static_cast<double>(n + 3);
  const double err = 2.0 * ops * DBL_EPSILON * magnitude + ops * DBL_MIN;
  const double abs_r = std::fabs(r);
  if (abs_r + err <= t) return true;
  if (abs_r - err > t) return false;
  Rational exact(0);
  for (std::size_t k = 0; k < n; ++k) exact += Rational(a[k]) * Rational(x[k]);
  if (bias) exact += Rational(a[n]);
  exact -= Rational(y);
  return abs(exact) <= Rational(t);
}

bool Satisfies(const UserPoint& z, const Hypothesis& h) {
  if (const auto* lin = std::get_if<LinearForm>(&h.form())) {
    const auto& a = lin->coefficients;
    if (a.size() != z.x.size() && a.size() != z.x.size() + 1) {
      ThrowInput("linear hypothesis with " + std::to_string(a.size()) +
                 " coefficients applied to " + std::to_string(z.x.size()) +
                 "-dimensional point");
    }
    return WithinTolerance(a, z.x, z.y, z.t);
  }
  if (const auto* ov = std::get_if<SampleOverrideForm>(&h.form())) {
    const auto it = ov->overrides.find(z.x);
    if (it == ov->overrides.end()) return Satisfies(z, *ov->base);
    const double one = 1.0;
    return WithinTolerance(std::span(&it->second, 1), std::span(&one, 1), z.y,
                           z.t);
  }
  const double p = h.Predict(z.x);
  const double one = 1.0;
  return WithinTolerance(std::span(&p, 1), std::span(&one, 1), z.y, z.t);
}

Pattern SatisfactionPattern(const Sample& sample, const Hypothesis& h) {
  Pattern p(sample.size());
  for (std::size_t j = 0; j < sample.size(); ++j) p[j] = Satisfies(sample[j], h);
  return p;
}

std::vector<std::uint32_t> SatisfierCounts(std::span<const Pattern> patterns,
                                           std::size_t m) {
  std::vector<std::uint32_t> counts(m, 0);
  for (const Pattern& p : patterns) {
    if (p.size() != m) ThrowInternal("pattern length mismatch");
    for (std::size_t j = 0; j < m; ++j) counts[j] += p[j];
  }
  return counts;
}

template <typename Scalar>
Scalar Harmonic(std::size_t k) {
  Scalar acc(0);
  for (std::size_t q = 1; q <= k; ++q) {
    acc += ScalarTraits<Scalar>::FromRatio(1, static_cast<std::int64_t>(q));
  }
  return acc;
}

template <typename Scalar>
std::vector<Scalar> PayoffWeights(const UserPoint& z,
                                  const StrategyProfile& profile) {
  if (profile.size() == 0) ThrowInput("profile must have at least one player");
  std::vector<bool> sat(profile.size());
  std::int64_t count = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    sat[i] = Satisfies(z, profile[i]);
    count += sat[i];
  }
  std::vector<Scalar> w(profile.size(), Scalar(0));
  if (count == 0) return w;
  const Scalar share = ScalarTraits<Scalar>::FromRatio(1, count);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (sat[i]) w[i] = share;
  }
  return w;
}

namespace {

// (1/m) sum_k hist[k] / k
template <typename Scalar>
Scalar FromHistogram(const std::vector<std::int64_t>& hist, std::size_t m) {
  Scalar acc(0);
  for (std::size_t k = 1; k < hist.size(); ++k) {
    if (hist[k] != 0) {
      acc += ScalarTraits<Scalar>::FromRatio(hist[k], static_cast<std::int64_t>(k));
    }
  }
  acc /= ScalarTraits<Scalar>::FromRatio(static_cast<std::int64_t>(m), 1);
  return acc;
}

}  // namespace

template <typename Scalar>
std::vector<Scalar> PayoffsFromPatterns(std::span<const Pattern> patterns,
                                        std::size_t m) {
  if (m == 0) ThrowInput("payoffs need a non-empty sample");
  const std::vector<std::uint32_t> counts = SatisfierCounts(patterns, m);
  std::vector<Scalar> out;
  out.reserve(patterns.size());
  for (const Pattern& p : patterns) {
    std::vector<std::int64_t> hist(patterns.size() + 1, 0);
    for (std::size_t j = 0; j < m; ++j) {
      if (p[j]) ++hist[counts[j]];
    }
    out.push_back(FromHistogram<Scalar>(hist, m));
  }
  return out;
}

template <typename Scalar>
Scalar DeviationPayoff(const Pattern& pattern,
                       std::span<const std::uint32_t> other_counts,
                       std::size_t num_players) {
  const std::size_t m = pattern.size();
  if (m == 0) ThrowInput("payoffs need a non-empty sample");
  if (other_counts.size() != m) ThrowInternal("count length mismatch");
  std::vector<std::int64_t> hist(num_players + 1, 0);
  for (std::size_t j = 0; j < m; ++j) {
    if (pattern[j]) ++hist[other_counts[j] + 1];
  }
  return FromHistogram<Scalar>(hist, m);
}

template <typename Scalar>
Scalar PotentialFromPatterns(std::span<const Pattern> patterns, std::size_t m) {
  if (m == 0) ThrowInput("potential needs a non-empty sample");
  const std::vector<std::uint32_t> counts = SatisfierCounts(patterns, m);
  std::vector<std::int64_t> hist(patterns.size() + 1, 0);
  for (std::uint32_t c : counts) ++hist[c];
  Scalar acc(0);
  Scalar harmonic(0);
  for (std::size_t c = 1; c < hist.size(); ++c) {
    harmonic += ScalarTraits<Scalar>::FromRatio(1, static_cast<std::int64_t>(c));
    if (hist[c] != 0) {
      acc += ScalarTraits<Scalar>::FromRatio(hist[c], 1) * harmonic;
    }
  }
  acc /= ScalarTraits<Scalar>::FromRatio(static_cast<std::int64_t>(m), 1);
  return acc;
}

std::vector<Pattern> ProfilePatterns(const Sample& sample,
                                     const StrategyProfile& profile) {
  std::vector<Pattern> patterns;
  patterns.reserve(profile.size());
  for (const Hypothesis& h : profile.strategies) {
    patterns.push_back(SatisfactionPattern(sample, h));
  }
  return patterns;
}

template <typename Scalar>
std::vector<Scalar> EmpiricalPayoffs(const Sample& sample,
                                     const StrategyProfile& profile) {
  if (sample.empty()) ThrowInput("empirical payoffs need a non-empty sample");
  if (profile.size() == 0) ThrowInput("profile must have at least one player");
  return PayoffsFromPatterns<Scalar>(ProfilePatterns(sample, profile),
                                     sample.size());
}

template <typename Scalar>
std::vector<Scalar> EmpiricalPayoffs(const EmpiricalGame& game,
                                     const StrategyProfile& profile) {
  game.CheckProfile(profile);
  return EmpiricalPayoffs<Scalar>(game.sample(), profile);
}

template <typename Scalar>
Scalar Potential(const EmpiricalGame& game, const StrategyProfile& profile) {
  game.CheckProfile(profile);
  return PotentialFromPatterns<Scalar>(ProfilePatterns(game.sample(), profile),
                                       game.sample_size());
}

std::size_t RestrictionCount(const HypothesisClass& cls, const Sample& sample) {
  if (sample.empty()) ThrowInput("restriction count needs a non-empty sample");
  std::set<Pattern> distinct;
  if (const auto* lin = std::get_if<LinearClass>(&cls.kind())) {
    if (lin->n != sample.dimension()) {
      ThrowInput("linear class dimension does not match the sample");
    }
    const Sample work = lin->with_bias ? AugmentWithBias(sample) : sample;
    for (const RegionVector& v : EnumerateRegions(work)) {
      distinct.insert(OnePattern(v));
    }
    return distinct.size();
  }
  for (const Hypothesis& h : cls.Members()) {
    h.CheckDimension(sample.dimension());
    distinct.insert(SatisfactionPattern(sample, h));
  }
  return distinct.size();
}

#define PREDGAME_INSTANTIATE(S)                                               \
  template S Harmonic<S>(std::size_t);                                        \
  template std::vector<S> PayoffWeights<S>(const UserPoint&,                  \
                                           const StrategyProfile&);           \
  template std::vector<S> PayoffsFromPatterns<S>(std::span<const Pattern>,    \
                                                 std::size_t);                \
  template S DeviationPayoff<S>(const Pattern&,                               \
                                std::span<const std::uint32_t>, std::size_t); \
  template S PotentialFromPatterns<S>(std::span<const Pattern>, std::size_t); \
  template std::vector<S> EmpiricalPayoffs<S>(const Sample&,                  \
                                              const StrategyProfile&);        \
  template std::vector<S> EmpiricalPayoffs<S>(const EmpiricalGame&,           \
                                              const StrategyProfile&);        \
  template S Potential<S>(const EmpiricalGame&, const StrategyProfile&);

PREDGAME_INSTANTIATE(double)
PREDGAME_INSTANTIATE(Rational)

#undef PREDGAME_INSTANTIATE

}  // namespace predgame
