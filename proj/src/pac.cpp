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

#include "predgame/pac.h"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "predgame/error.h"

namespace predgame {

namespace {

void CheckInputs(const BoundInputs& in, bool need_m) {
  // The bound itself is defined for any positive epsilon; the sample-size
  // formula needs epsilon < 1.
  if (!(in.epsilon > 0.0 && (need_m || in.epsilon < 1.0))) {
    ThrowConfig(need_m ? "epsilon must be positive"
                       : "epsilon must lie strictly inside (0, 1)");
  }
  if (in.d < 1) ThrowConfig("d must be >= 1");
  if (in.players < 1) ThrowConfig("N must be >= 1");
  if (need_m) {
    if (in.m < 1) ThrowConfig("m must be >= 1");
  } else if (!(in.delta > 0.0 && in.delta < 1.0)) {
    ThrowConfig("delta must lie strictly inside (0, 1)");
  }
}

}  // namespace

double LogUniformConvergenceBound(const BoundInputs& in) {
  CheckInputs(in, /*need_m=*/true);
  const double m = static_cast<double>(in.m);
  const double d = static_cast<double>(in.d);
  return std::log(4.0 * static_cast<double>(in.players)) +
         10.0 * d * std::log(2.0 * std::numbers::e * m) -
         in.epsilon * in.epsilon * m / 8.0;
}

double UniformConvergenceBound(const BoundInputs& in) {
  const double log_value = LogUniformConvergenceBound(in);
  if (log_value > std::log(DBL_MAX)) return HUGE_VAL;
  return std::exp(log_value);
}

double SampleSizeThreshold(const BoundInputs& in) {
  CheckInputs(in, /*need_m=*/false);
  const double d = static_cast<double>(in.d);
  const double e2 = in.epsilon * in.epsilon;
  return 320.0 * d / e2 * std::log(160.0 * d / e2) +
         160.0 * d * std::log(2.0 * std::numbers::e) / e2 +
         16.0 / e2 * std::log(4.0 * static_cast<double>(in.players) / in.delta);
}

std::size_t RequiredSampleSize(const BoundInputs& in) {
  const double threshold = SampleSizeThreshold(in);
  if (!(threshold < 9.0e15)) ThrowResource("required sample size overflows");
  return static_cast<std::size_t>(std::ceil(threshold));
}

template <typename Scalar>
LearnResult<Scalar> LearnEquilibrium(
    const DistributionSpec& dist, const std::vector<HypothesisClass>& classes,
    const Scalar& epsilon, double delta,
    const std::vector<BetterResponseOracle>& oracles, std::uint64_t seed,
    std::optional<std::size_t> m_cap, const DynamicsOptions& options) {
  if (classes.empty()) ThrowConfig("learn needs at least one player class");
  std::size_t d = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto pdim = classes[i].declared_pdim();
    if (!pdim) {
      ThrowConfig("player " + std::to_string(i) +
                  ": learn needs a declared pseudo-dimension for every class");
    }
    d += static_cast<std::size_t>(*pdim);
  }
  if (m_cap && *m_cap == 0) ThrowConfig("m-cap must be >= 1");
  const double eps = ScalarTraits<Scalar>::ToDouble(epsilon);
  if (!(eps > 0.0 && eps < 1.0)) ThrowConfig("epsilon must lie strictly inside (0, 1)");
  BoundInputs in;
  in.epsilon = eps / 2.0;
  in.delta = delta;
  in.d = d;
  in.players = classes.size();

  LearnResult<Scalar> out;
  out.d = d;
  out.m_required = RequiredSampleSize(in);
  out.m_used = out.m_required;
  if (m_cap && *m_cap < out.m_required) {
    out.m_used = *m_cap;
    out.capped = true;
  }
  out.sample = DrawSample(dist, out.m_used, seed);
  EmpiricalGame game(out.sample, classes);
  const std::vector<BetterResponseOracle> chosen =
      oracles.empty() ? DefaultOracles(game) : oracles;
  try {
    CheckOracles(game, chosen);
  } catch (const Error& e) {
    ThrowConfig(e.what());
  }
  const Scalar half = epsilon / Scalar(2);
  DynamicsResult<Scalar> run =
      RunDynamics<Scalar>(game, game.DefaultProfile(), half, chosen,
                          ScheduleSpec::RoundRobin(), options);
  out.profile = std::move(run.profile);
  out.trace = std::move(run.trace);
  return out;
}

template LearnResult<double> LearnEquilibrium<double>(
    const DistributionSpec&, const std::vector<HypothesisClass>&, const double&,
    double, const std::vector<BetterResponseOracle>&, std::uint64_t,
    std::optional<std::size_t>, const DynamicsOptions&);
template LearnResult<Rational> LearnEquilibrium<Rational>(
    const DistributionSpec&, const std::vector<HypothesisClass>&,
    const Rational&, double, const std::vector<BetterResponseOracle>&,
    std::uint64_t, std::optional<std::size_t>, const DynamicsOptions&);

}  // namespace predgame
