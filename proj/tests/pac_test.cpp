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

#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "predgame/distribution.h"
#include "predgame/dynamics.h"
#include "predgame/error.h"
#include "predgame/io.h"
#include "predgame/pac.h"
#include "support/oracles.h"

namespace predgame {
namespace {

// Direct long-double evaluation of the sample-size expression, term by term.
long double Threshold(long double eps, long double delta, long double d, long double n) {
  const long double e = std::numbers::e_v<long double>;
  const long double a = 320.0L * d / (eps * eps) * std::log(160.0L * d / (eps * eps));
  const long double b = 160.0L * d * std::log(2.0L * e) / (eps * eps);
  const long double c = 16.0L / (eps * eps) * std::log(4.0L * n / delta);
  return a + b + c;
}

BoundInputs In(double eps, double delta, std::size_t d, std::size_t n, std::size_t m = 0) {
  BoundInputs in;
  in.epsilon = eps;
  in.delta = delta;
  in.d = d;
  in.players = n;
  in.m = m;
  return in;
}

TEST_CASE("sample size reference value") {
  CHECK(RequiredSampleSize(In(0.5, 0.5, 1, 1)) == 9488);
  CHECK(std::fabs(SampleSizeThreshold(In(0.5, 0.5, 1, 1)) -
                  static_cast<double>(Threshold(0.5L, 0.5L, 1, 1))) < 1e-8);
}

TEST_CASE("sample size matches the formula and is minimal") {
  const double eps[] = {0.05, 0.1, 0.2, 0.5, 0.9};
  const double delta[] = {0.01, 0.1, 0.5};
  for (double e : eps) {
    for (double dl : delta) {
      for (std::size_t d : {1, 3}) {
        for (std::size_t n : {1, 5}) {
          const std::size_t m = RequiredSampleSize(In(e, dl, d, n));
          const long double t = Threshold(e, dl, d, n);
          CHECK(static_cast<long double>(m) >= t);
          CHECK(static_cast<long double>(m - 1) < t);
        }
      }
    }
  }
}

TEST_CASE("sample size monotonicity and scaling") {
  const double third_a = 16.0 / 0.04 * std::log(4.0 / 0.1);
  const double third_b = 16.0 / 0.01 * std::log(4.0 / 0.1);
  CHECK(std::fabs(third_b / third_a - 4.0) < 1e-12);
  CHECK(RequiredSampleSize(In(0.2, 0.05, 2, 3)) >= RequiredSampleSize(In(0.2, 0.2, 2, 3)));
  CHECK(RequiredSampleSize(In(0.2, 0.1, 3, 3)) >= RequiredSampleSize(In(0.2, 0.1, 2, 3)));
  CHECK(RequiredSampleSize(In(0.2, 0.1, 2, 4)) >= RequiredSampleSize(In(0.2, 0.1, 2, 3)));
}

TEST_CASE("uniform convergence bound") {
  const double expected = 4.0 * std::pow(2.0 * std::numbers::e, 10) * std::exp(-1.0 / 8.0);
  CHECK(std::fabs(UniformConvergenceBound(In(1.0, 0.5, 1, 1, 1)) / expected - 1.0) < 1e-12);
  // Log-space keeps huge values finite in log form.
  const BoundInputs huge = In(0.001, 0.5, 1000, 10, 1000);
  CHECK(std::isinf(UniformConvergenceBound(huge)));
  CHECK(std::isfinite(LogUniformConvergenceBound(huge)));
  // Decreasing beyond the stationary point m* = 80 d / eps^2.
  const double eps = 0.3;
  const std::size_t stationary = static_cast<std::size_t>(80.0 * 2 / (eps * eps));
  double prev = LogUniformConvergenceBound(In(eps, 0.5, 2, 3, stationary + 1));
  for (std::size_t m = stationary + 2; m < stationary + 2000; m += 37) {
    const double v = LogUniformConvergenceBound(In(eps, 0.5, 2, 3, m));
    CHECK(v < prev);
    prev = v;
  }
  // Eventually below 1e-6.
  CHECK(UniformConvergenceBound(In(0.5, 0.5, 1, 1, 40000)) < 1e-6);
}

TEST_CASE("bound at the required size is below delta") {
  for (double e : {0.1, 0.3, 0.6}) {
    for (double dl : {0.01, 0.2}) {
      const BoundInputs in = In(e, dl, 2, 3);
      CHECK(UniformConvergenceBound(In(e, dl, 2, 3, RequiredSampleSize(in))) <= dl);
    }
  }
}

TEST_CASE("bound inputs are validated") {
  CHECK_THROWS_AS(RequiredSampleSize(In(0, 0.5, 1, 1)), Error);
  CHECK_THROWS_AS(RequiredSampleSize(In(1.0, 0.5, 1, 1)), Error);
  CHECK_THROWS_AS(RequiredSampleSize(In(0.5, 1.0, 1, 1)), Error);
  CHECK_THROWS_AS(RequiredSampleSize(In(0.5, 0.5, 0, 1)), Error);
  CHECK_THROWS_AS(RequiredSampleSize(In(0.5, 0.5, 1, 0)), Error);
  CHECK_THROWS_AS(UniformConvergenceBound(In(0.5, 0.5, 1, 1, 0)), Error);
}

DistributionSpec ThreeLabels() {
  return DistributionSpec(UniformSegments{{Segment{{{0, 1}}, 0, 0.25, 0.2},
                                           Segment{{{1, 2}}, 1, 0.25, 0.7},
                                           Segment{{{2, 3}}, 2, 0.25, 0.1}}});
}

HypothesisClass Labels(std::optional<int> pdim = 1) {
  return HypothesisClass::Finite(
      {Hypothesis::Constant(0), Hypothesis::Constant(1), Hypothesis::Constant(2)}, pdim);
}

TEST_CASE("learning with singleton classes") {
  const auto cls = HypothesisClass::Finite({Hypothesis::Constant(1)}, 1);
  const auto r = LearnEquilibrium<double>(ThreeLabels(), {cls, cls}, 0.2, 0.1, {}, 3, 100);
  CHECK(r.trace.steps.empty());
  CHECK(r.profile.strategies == std::vector<Hypothesis>(2, Hypothesis::Constant(1)));
  CHECK(r.capped);
  CHECK(r.m_used == 100);
  CHECK(r.sample.size() == 100);
}

TEST_CASE("uncapped learning draws the half-epsilon sample size") {
  const auto r = LearnEquilibrium<Rational>(ThreeLabels(), {Labels()}, testing::Frac(9, 10), 0.9, {}, 5);
  CHECK_FALSE(r.capped);
  CHECK(r.m_required == RequiredSampleSize(In(0.45, 0.9, 1, 1)));
  CHECK(r.m_used == r.m_required);
  CHECK(r.sample.size() == r.m_required);
  CHECK(r.d == 1);
}

TEST_CASE("capped learning reaches an empirical half-epsilon PNE") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = LearnEquilibrium<double>(ThreeLabels(), {Labels(), Labels()}, 0.2, 0.1, {},
                                            seed, 500);
    CHECK(r.d == 2);
    CHECK(r.m_required == RequiredSampleSize(In(0.1, 0.1, 2, 2)));
    const EmpiricalGame g(r.sample, {Labels(), Labels()});
    CHECK(VerifyEpsilonPne<double>(g, r.profile, 0.1, DefaultOracles(g)).holds);
    // Same seed, same run.
    const auto again = LearnEquilibrium<double>(ThreeLabels(), {Labels(), Labels()}, 0.2, 0.1,
                                                {}, seed, 500);
    CHECK(again.profile == r.profile);
    CHECK(again.sample == r.sample);
  }
}

TEST_CASE("learning preconditions") {
  CHECK_THROWS_AS(LearnEquilibrium<double>(ThreeLabels(), {Labels(std::nullopt)}, 0.2, 0.1, {}, 1, 50),
                  Error);
  CHECK_THROWS_AS(LearnEquilibrium<double>(ThreeLabels(), {Labels()}, 0.2, 0.1,
                                           {BetterResponseOracle::LinearBlr()}, 1, 50),
                  Error);
  CHECK_THROWS_AS(LearnEquilibrium<double>(ThreeLabels(), {Labels()}, 1.5, 0.1, {}, 1, 50), Error);
  CHECK_THROWS_AS(LearnEquilibrium<double>(ThreeLabels(), {Labels()}, 0.2, 0.1, {}, 1, 0), Error);
}

}  // namespace
}  // namespace predgame
