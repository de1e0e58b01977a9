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

#include "support/oracles.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace predgame::testing {

namespace {

Rational Q(double v) { return Rational(v); }

bool RationalWithin(const std::vector<Rational>& h, const UserPoint& z) {
  Rational r = -Q(z.y);
  for (std::size_t k = 0; k < z.x.size(); ++k) r += h[k] * Q(z.x[k]);
  return abs(r) <= Q(z.t);
}

Region RationalRegion(const std::vector<Rational>& h, const UserPoint& z) {
  Rational r = -Q(z.y);
  for (std::size_t k = 0; k < z.x.size(); ++k) r += h[k] * Q(z.x[k]);
  if (r > Q(z.t)) return Region::kAbove;
  if (r < -Q(z.t)) return Region::kBelow;
  return Region::kOne;
}

}  // namespace

bool ExactSatisfies(const UserPoint& z, const Hypothesis& h) {
  if (const auto* lin = std::get_if<LinearForm>(&h.form())) {
    std::vector<Rational> a;
    for (double v : lin->coefficients) a.push_back(Q(v));
    Rational r = -Q(z.y);
    for (std::size_t k = 0; k < z.x.size(); ++k) r += a[k] * Q(z.x[k]);
    if (a.size() == z.x.size() + 1) r += a.back();
    return abs(r) <= Q(z.t);
  }
  if (const auto* ov = std::get_if<SampleOverrideForm>(&h.form())) {
    const auto it = ov->overrides.find(z.x);
    if (it == ov->overrides.end()) return ExactSatisfies(z, *ov->base);
    return abs(Q(it->second) - Q(z.y)) <= Q(z.t);
  }
  return abs(Q(h.Predict(z.x)) - Q(z.y)) <= Q(z.t);
}

std::vector<Rational> BruteForcePayoffs(const Sample& sample,
                                        const StrategyProfile& profile) {
  std::vector<Rational> total(profile.size(), Rational(0));
  for (const UserPoint& z : sample) {
    std::vector<bool> sat;
    long count = 0;
    for (const Hypothesis& h : profile.strategies) {
      sat.push_back(ExactSatisfies(z, h));
      count += sat.back();
    }
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (sat[i]) total[i] += Rational(1, count);
    }
  }
  for (Rational& v : total) v /= Rational(static_cast<long>(sample.size()));
  return total;
}

Rational BruteForcePotential(const Sample& sample, const StrategyProfile& profile) {
  Rational total(0);
  for (const UserPoint& z : sample) {
    long count = 0;
    for (const Hypothesis& h : profile.strategies) count += ExactSatisfies(z, h);
    for (long k = 1; k <= count; ++k) total += Rational(1, k);
  }
  return total / Rational(static_cast<long>(sample.size()));
}

Sample RandomSample(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<UserPoint> points;
  for (std::size_t j = 0; j < m; ++j) {
    UserPoint z;
    for (std::size_t k = 0; k < n; ++k) z.x.push_back(-2.0 + 4.0 * rng.Uniform());
    z.y = -2.0 + 4.0 * rng.Uniform();
    z.t = 0.1 + 0.6 * rng.Uniform();
    points.push_back(std::move(z));
  }
  return Sample(std::move(points));
}

EmpiricalGame RandomFiniteGame(Rng& rng, std::size_t players,
                               std::size_t max_members, std::size_t m) {
  const Sample sample = RandomSample(rng, 1, m);
  std::vector<HypothesisClass> classes;
  for (std::size_t i = 0; i < players; ++i) {
    const std::size_t members = 1 + rng.Below(max_members);
    std::vector<Hypothesis> list;
    for (std::size_t k = 0; k < members; ++k) {
      std::map<std::vector<double>, double> table;
      for (const UserPoint& z : sample) {
        const bool hit = rng.Bernoulli(0.5);
        // Member-specific offsets keep predictions distinct across members.
        const double inside = z.y + z.t * static_cast<double>(k) /
                                        static_cast<double>(max_members + 1);
        const double outside = z.y + z.t + 1.0 + static_cast<double>(k);
        table[z.x] = hit ? inside : outside;
      }
      list.push_back(Hypothesis::Override(Hypothesis::Constant(0.0), std::move(table)));
    }
    classes.push_back(HypothesisClass::Finite(std::move(list), 1));
  }
  return EmpiricalGame(sample, std::move(classes));
}

std::set<RegionVector> SweepRegions(const Sample& sample) {
  std::vector<Rational> breaks;
  for (const UserPoint& z : sample) {
    if (z.x[0] == 0.0) continue;
    breaks.push_back((Q(z.y) - Q(z.t)) / Q(z.x[0]));
    breaks.push_back((Q(z.y) + Q(z.t)) / Q(z.x[0]));
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<Rational> candidates;
  if (breaks.empty()) {
    candidates.push_back(Rational(0));
  } else {
    candidates.push_back(breaks.front() - 1);
    candidates.push_back(breaks.back() + 1);
    for (std::size_t k = 0; k < breaks.size(); ++k) {
      candidates.push_back(breaks[k]);
      if (k + 1 < breaks.size()) candidates.push_back((breaks[k] + breaks[k + 1]) / 2);
    }
  }
  std::set<RegionVector> out;
  for (const Rational& a : candidates) {
    RegionVector v;
    for (const UserPoint& z : sample) v.push_back(RationalRegion({a}, z));
    out.insert(std::move(v));
  }
  return out;
}

ProbeResult ProbeBestResponse(const Sample& sample,
                              const std::vector<Rational>& weights,
                              std::size_t random_probes, double radius, Rng& rng) {
  const std::size_t n = sample.dimension();
  const std::size_t m = sample.size();
  ProbeResult result;
  result.best_payoff = Rational(-1);
  auto score_pattern = [&](const Pattern& p) {
    Rational s(0);
    for (std::size_t j = 0; j < m; ++j) {
      if (p[j]) s += weights[j];
    }
    s /= Rational(static_cast<long>(m));
    if (s > result.best_payoff) result.best_payoff = s;
    result.patterns.insert(p);
    ++result.probes;
  };
  auto exact_probe = [&](const std::vector<Rational>& h) {
    Pattern p(m);
    for (std::size_t j = 0; j < m; ++j) p[j] = RationalWithin(h, sample[j]);
    score_pattern(p);
  };

  // Random probes in double arithmetic; the set of patterns is what matters.
  std::vector<double> h(n);
  Pattern p(m);
  for (std::size_t s = 0; s < random_probes; ++s) {
    for (double& v : h) v = radius * (2.0 * rng.Uniform() - 1.0);
    for (std::size_t j = 0; j < m; ++j) {
      double r = -sample[j].y;
      for (std::size_t k = 0; k < n; ++k) r += h[k] * sample[j].x[k];
      p[j] = std::fabs(r) <= sample[j].t;
    }
    score_pattern(p);
  }

  exact_probe(std::vector<Rational>(n, Rational(0)));
  // Boundary hyperplanes h.x_j = y_j +- t_j.
  std::vector<std::pair<std::vector<Rational>, Rational>> lines;
  for (const UserPoint& z : sample) {
    std::vector<Rational> normal;
    for (double v : z.x) normal.push_back(Q(v));
    lines.emplace_back(normal, Q(z.y) - Q(z.t));
    lines.emplace_back(normal, Q(z.y) + Q(z.t));
  }
  for (const auto& [a, b] : lines) {
    Rational norm2(0);
    for (const Rational& v : a) norm2 += v * v;
    if (sgn(norm2) == 0) continue;
    std::vector<Rational> foot;
    for (const Rational& v : a) foot.push_back(v * b / norm2);
    exact_probe(foot);
  }
  if (n == 2) {
    for (std::size_t u = 0; u < lines.size(); ++u) {
      for (std::size_t w = u + 1; w < lines.size(); ++w) {
        const auto& [a1, b1] = lines[u];
        const auto& [a2, b2] = lines[w];
        const Rational det = a1[0] * a2[1] - a1[1] * a2[0];
        if (sgn(det) == 0) continue;
        exact_probe({(b1 * a2[1] - b2 * a1[1]) / det, (a1[0] * b2 - a2[0] * b1) / det});
      }
    }
  }
  return result;
}

}  // namespace predgame::testing
