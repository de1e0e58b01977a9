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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "predgame/error.h"
#include "predgame/model.h"
#include "predgame/payoff.h"
#include "predgame/random.h"
#include "support/oracles.h"

namespace predgame {
namespace {

UserPoint P(double x, double y, double t) { return UserPoint{{x}, y, t}; }

StrategyProfile Consts(std::initializer_list<double> values) {
  StrategyProfile p;
  for (double v : values) p.strategies.push_back(Hypothesis::Constant(v));
  return p;
}

TEST_CASE("satisfaction examples") {
  CHECK(Satisfies(P(1, 2, 0.5), Hypothesis::Linear({2})));
  CHECK_FALSE(Satisfies(P(1, 0, 0.5), Hypothesis::Constant(1)));
  CHECK(Satisfies(P(1, 0, 0.5), Hypothesis::Constant(0.5)));
  CHECK(Satisfies(P(1, 0, 0.5), Hypothesis::Constant(-0.5)));
  CHECK_FALSE(Satisfies(P(1, 0, 0.5), Hypothesis::Constant(std::nextafter(0.5, 1.0))));
  CHECK_THROWS_AS(Satisfies(UserPoint{{1, 2}, 0, 1}, Hypothesis::Linear({1})), Error);
}

TEST_CASE("boundary decided exactly where double arithmetic rounds") {
  // 0.1 * 3 rounds to 0.30000000000000004 in double; the exact product of the
  // stored values exceeds y + t by a tiny margin.
  const UserPoint z{{3.0}, 0.0, 0.3};
  const Hypothesis h = Hypothesis::Linear({0.1});
  CHECK(Satisfies(z, h) == testing::ExactSatisfies(z, h));
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const double a = rng.Uniform(), x = 1.0 + rng.Uniform(), y = rng.Uniform();
    const UserPoint w{{x}, y, std::fabs(a * x - y)};
    CHECK(Satisfies(w, Hypothesis::Linear({a})) ==
          testing::ExactSatisfies(w, Hypothesis::Linear({a})));
  }
}

TEST_CASE("hypothesis forms") {
  const Hypothesis lin = Hypothesis::Linear({2, 1});
  CHECK(lin.Predict(std::vector<double>{3}) == 7);  // trailing intercept
  const Hypothesis iv = Hypothesis::Interval(0, 1, true, false);
  CHECK(iv.Predict(std::vector<double>{0}) == 1);
  CHECK(iv.Predict(std::vector<double>{1}) == 0);
  CHECK(iv.Predict(std::vector<double>{0.999}) == 1);
  const Hypothesis closed = Hypothesis::Interval(1, 2, true, true);
  CHECK(closed.Predict(std::vector<double>{2}) == 1);
  CHECK(closed.Predict(std::vector<double>{2.0001}) == 0);
  CHECK_THROWS_AS(iv.Predict(std::vector<double>{1, 2}), Error);

  const Hypothesis ov = Hypothesis::Override(closed, {{{1.5}, 0.0}});
  CHECK(ov.Predict(std::vector<double>{1.5}) == 0);
  CHECK(ov.Predict(std::vector<double>{1.25}) == 1);
  CHECK(ov.Predict(std::vector<double>{std::nextafter(1.5, 2.0)}) == 1);
  CHECK(ov == Hypothesis::Override(closed, {{{1.5}, 0.0}}));
  CHECK_FALSE(ov == Hypothesis::Override(closed, {{{1.5}, 1.0}}));
}

TEST_CASE("sample validation") {
  CHECK_THROWS_AS(Sample({P(1, 0, -0.1)}), Error);
  CHECK_THROWS_AS(Sample({P(1, 0, 0.1), UserPoint{{1, 2}, 0, 0.1}}), Error);
  CHECK_THROWS_AS(Sample({P(NAN, 0, 0.1)}), Error);
  CHECK_THROWS_AS(Sample({UserPoint{{}, 0, 0.1}}), Error);
  CHECK(Sample({P(1, 0, 0)}).dimension() == 1);
}

TEST_CASE("payoff weights examples") {
  const UserPoint z = P(0, 0, 0.5);
  auto w = PayoffWeights<Rational>(z, Consts({0, 9, 0.25}));
  CHECK(w == std::vector<Rational>{testing::Frac(1, 2), Rational(0), testing::Frac(1, 2)});
  w = PayoffWeights<Rational>(z, Consts({4, 9, 7}));
  CHECK(w == std::vector<Rational>(3, Rational(0)));
  w = PayoffWeights<Rational>(z, Consts({0, 0.1, 0.2, 0.3}));
  CHECK(w == std::vector<Rational>(4, testing::Frac(1, 4)));
}

TEST_CASE("empirical payoffs examples") {
  const Sample s({P(0, 0, 0.5), P(0, 1, 0.5)});
  // Player 0 satisfies both points, player 1 only the second.
  const StrategyProfile p = Consts({0.5, 1});
  CHECK(EmpiricalPayoffs<Rational>(s, p) == std::vector<Rational>{testing::Frac(3, 4), testing::Frac(1, 4)});
  const auto f = EmpiricalPayoffs<double>(s, p);
  CHECK(f[0] == 0.75);
  CHECK(f[1] == 0.25);
  CHECK(EmpiricalPayoffs<Rational>(s, Consts({5, 7})) == std::vector<Rational>(2, Rational(0)));
  CHECK_THROWS_AS(EmpiricalPayoffs<double>(Sample(), p), Error);
}

TEST_CASE("payoff calculus matches the per-point oracle on random games") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.Below(5);
    const EmpiricalGame game =
        testing::RandomFiniteGame(rng, n, 4, 1 + rng.Below(20));
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      idx.push_back(rng.Below(game.player_class(i).Members().size()));
    }
    const StrategyProfile p = game.ProfileFromIndices(idx);
    const auto exact = EmpiricalPayoffs<Rational>(game, p);
    CHECK(exact == testing::BruteForcePayoffs(game.sample(), p));
    CHECK(Potential<Rational>(game, p) == testing::BruteForcePotential(game.sample(), p));

    // Sum of payoffs equals the covered fraction.
    std::size_t covered = 0;
    for (const UserPoint& z : game.sample()) {
      const auto w = PayoffWeights<Rational>(z, p);
      const Rational total = std::accumulate(w.begin(), w.end(), Rational(0));
      const bool any = std::any_of(p.strategies.begin(), p.strategies.end(),
                                   [&](const Hypothesis& h) { return Satisfies(z, h); });
      CHECK(total == Rational(any ? 1 : 0));
      covered += any;
    }
    const Rational sum = std::accumulate(exact.begin(), exact.end(), Rational(0));
    CHECK(sum == testing::Frac(static_cast<long>(covered), static_cast<long>(game.sample_size())));

    // Permutation invariance.
    std::vector<UserPoint> pts(game.sample().begin(), game.sample().end());
    std::reverse(pts.begin(), pts.end());
    std::rotate(pts.begin(), pts.begin() + pts.size() / 2, pts.end());
    CHECK(EmpiricalPayoffs<Rational>(Sample(pts), p) == exact);

    const auto floating = EmpiricalPayoffs<double>(game, p);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::fabs(floating[i] - exact[i].get_d()) <= 1e-12);
      CHECK(exact[i] >= 0);
      CHECK(exact[i] <= 1);
    }
  }
}

TEST_CASE("restriction counts") {
  const Sample s({P(1, 0, 0.5), P(2, 2, 0.5), P(3, 5, 0.5)});
  // Two constants that both miss every point: one pattern.
  CHECK(RestrictionCount(HypothesisClass::Finite({Hypothesis::Constant(100),
                                                   Hypothesis::Constant(200)}),
                         s) == 1);
  // Overrides realizing all 8 patterns on 3 points.
  std::vector<Hypothesis> all;
  for (int mask = 0; mask < 8; ++mask) {
    std::map<std::vector<double>, double> table;
    for (int j = 0; j < 3; ++j) {
      table[s[j].x] = (mask >> j & 1) ? s[j].y : s[j].y + 10 + mask;
    }
    all.push_back(Hypothesis::Override(Hypothesis::Constant(-50 - mask), table));
  }
  CHECK(RestrictionCount(HypothesisClass::Finite(all), s) == 8);

  const Sample two({P(1, 0, 0.5), P(2, 2, 0.5)});
  CHECK(RestrictionCount(HypothesisClass::Linear(1, false), two) == 3);
  CHECK_THROWS_AS(RestrictionCount(HypothesisClass::Linear(4, false),
                                   Sample({UserPoint{{1, 2, 3, 4}, 0, 1}})),
                  Error);
}

TEST_CASE("restriction count respects the finite and growth bounds") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 3 + rng.Below(8);
    const Sample s = testing::RandomSample(rng, 1 + rng.Below(2), m);
    const std::size_t lin = RestrictionCount(HypothesisClass::Linear(s.dimension(), false, 2), s);
    CHECK(lin <= (std::size_t{1} << m));
    // Per-player growth bound (e m)^(10 d) with d = 2 when m > d + 1.
    CHECK(std::log(static_cast<double>(lin)) <= 10.0 * 2 * std::log(std::exp(1.0) * m));

    const EmpiricalGame g = testing::RandomFiniteGame(rng, 1, 6, m);
    const auto& cls = g.player_class(0);
    const std::size_t fin = RestrictionCount(cls, g.sample());
    CHECK(fin <= std::min<std::size_t>(std::size_t{1} << m, cls.Members().size()));
  }
}

TEST_CASE("game construction checks") {
  const Sample s({P(0, 0, 0.5), P(1, 1, 0.5)});
  // Constant 0 and 0.25 predict differently, so they are distinct members.
  CHECK_NOTHROW(EmpiricalGame(s, {HypothesisClass::Finite(
                                     {Hypothesis::Constant(0), Hypothesis::Constant(0.25)})}));
  CHECK_THROWS_AS(EmpiricalGame(s, {HypothesisClass::Finite(
                                       {Hypothesis::Constant(0), Hypothesis::Constant(0)})}),
                  Error);
  CHECK_THROWS_AS(EmpiricalGame(s, {}), Error);
  CHECK_THROWS_AS(EmpiricalGame(Sample(), {HypothesisClass::Linear(1, false)}), Error);
  CHECK_THROWS_AS(EmpiricalGame(s, {HypothesisClass::Linear(2, false)}), Error);
  CHECK_THROWS_AS(HypothesisClass::Finite({}), Error);
  CHECK_THROWS_AS(HypothesisClass::Linear(1, false, 0), Error);

  const EmpiricalGame g(s, {HypothesisClass::Finite({Hypothesis::Constant(3),
                                                      Hypothesis::Constant(0)}),
                            HypothesisClass::Linear(1, true)});
  const StrategyProfile d = g.DefaultProfile();
  CHECK(d[0] == Hypothesis::Constant(3));
  CHECK(d[1] == Hypothesis::Linear({0, 0}));
  CHECK_NOTHROW(g.CheckProfile(d));
  CHECK_THROWS_AS(g.CheckProfile(d.WithStrategy(0, Hypothesis::Constant(1))), Error);
  CHECK_THROWS_AS(g.CheckProfile(Consts({3})), Error);
  CHECK_NOTHROW(g.CheckProfile(d.WithStrategy(1, Hypothesis::Linear({0.5, -2}))));
}

}  // namespace
}  // namespace predgame
