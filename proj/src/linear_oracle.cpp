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

#include "predgame/linear_oracle.h"

#include <algorithm>
#include <array>
#include <exception>
#include <numeric>
#include <string>

#include "predgame/error.h"
#include "predgame/payoff.h"
#include "predgame/simplex.h"

namespace predgame {

char RegionSymbol(Region r) {
  switch (r) {
    case Region::kOne:
      return '1';
    case Region::kAbove:
      return 'a';
    case Region::kBelow:
      return 'b';
    case Region::kFree:
      return '0';
  }
  return '?';
}

std::string RegionString(const RegionVector& v) {
  std::string out;
  out.reserve(v.size());
  for (Region r : v) out.push_back(RegionSymbol(r));
  return out;
}

RegionVector ParseRegionString(std::string_view text) {
  RegionVector v;
  v.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '1':
        v.push_back(Region::kOne);
        break;
      case 'a':
        v.push_back(Region::kAbove);
        break;
      case 'b':
        v.push_back(Region::kBelow);
        break;
      case '0':
        v.push_back(Region::kFree);
        break;
      default:
        ThrowInput(std::string("bad region symbol '") + c + "'");
    }
  }
  return v;
}

Pattern OnePattern(const RegionVector& v) {
  Pattern p(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) p[j] = v[j] == Region::kOne;
  return p;
}

Sample AugmentWithBias(const Sample& sample) {
  std::vector<UserPoint> points(sample.begin(), sample.end());
  for (UserPoint& z : points) z.x.push_back(1.0);
  return Sample(std::move(points));
}

namespace {

constexpr std::array<Region, 3> kAlphabet = {Region::kOne, Region::kAbove,
                                             Region::kBelow};

template <typename T>
struct Instance {
  std::size_t n = 0;
  std::vector<std::vector<T>> x;
  std::vector<T> y;
  std::vector<T> t;
};

template <typename T>
Instance<T> MakeInstance(const Sample& sample) {
  Instance<T> inst;
  inst.n = sample.dimension();
  for (const UserPoint& z : sample) {
    std::vector<T> row;
    row.reserve(z.x.size());
    for (double v : z.x) row.push_back(ScalarTraits<T>::FromDouble(v));
    inst.x.push_back(std::move(row));
    inst.y.push_back(ScalarTraits<T>::FromDouble(z.y));
    inst.t.push_back(ScalarTraits<T>::FromDouble(z.t));
  }
  return inst;
}

template <typename T>
T ZeroTolerance() {
  if constexpr (std::is_same_v<T, double>) {
    return 1e-12;
  } else {
    return T(0);
  }
}

template <typename T>
bool PositiveSlack(const T& s) {
  if constexpr (std::is_same_v<T, double>) {
    return s > kStrictSlackThreshold;
  } else {
    return sgn(s) > 0;
  }
}

template <typename T>
T Dot(const std::vector<T>& h, const std::vector<T>& x) {
  T acc(0);
  for (std::size_t k = 0; k < x.size(); ++k) acc += h[k] * x[k];
  return acc;
}

// Builds and solves  max margin  over rows selected by v.
// Variables: h+ (n), h- (n), margin+, margin-.
// When `all_rows` is false the margin only enters ABOVE/BELOW rows (the
// strictness test); otherwise it also tightens ONE rows (interior witness).
template <typename T>
struct MarginLp {
  bool feasible = false;
  bool any_strict = false;
  std::vector<T> h;
  T margin{};
};

template <typename T>
MarginLp<T> SolveMarginLp(const Instance<T>& inst, const RegionVector& v,
                          bool all_rows);

MarginLp<double> ExactFallback(const Instance<double>& inst,
                               const RegionVector& v, bool all_rows);

template <typename T>
MarginLp<T> SolveMarginLp(const Instance<T>& inst, const RegionVector& v,
                          bool all_rows) {
  const std::size_t n = inst.n;
  const std::size_t nv = 2 * n + 2;
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  MarginLp<T> out;
  auto add_row = [&](const std::vector<T>& x, int h_sign, int margin_coef,
                     T rhs) {
    std::vector<T> row(nv, T(0));
    for (std::size_t k = 0; k < n; ++k) {
      const T coef = h_sign > 0 ? x[k] : T(-x[k]);
      row[k] = coef;
      row[n + k] = -coef;
    }
    row[2 * n] = margin_coef;
    row[2 * n + 1] = -margin_coef;
    a.push_back(std::move(row));
    b.push_back(std::move(rhs));
  };
  for (std::size_t j = 0; j < v.size(); ++j) {
    const auto& x = inst.x[j];
    const T& y = inst.y[j];
    const T& t = inst.t[j];
    switch (v[j]) {
      case Region::kOne: {
        const int mc = all_rows ? 1 : 0;
        add_row(x, +1, mc, y + t);
        add_row(x, -1, mc, t - y);
        break;
      }
      case Region::kAbove:
        out.any_strict = true;
        add_row(x, -1, 1, -y - t);
        break;
      case Region::kBelow:
        out.any_strict = true;
        add_row(x, +1, 1, y - t);
        break;
      case Region::kFree:
        break;
    }
  }
  {
    std::vector<T> cap(nv, T(0));
    cap[2 * n] = 1;
    cap[2 * n + 1] = -1;
    a.push_back(std::move(cap));
    b.push_back(T(1));
  }
  std::vector<T> c(nv, T(0));
  c[2 * n] = 1;
  c[2 * n + 1] = -1;
  DenseSimplex<T> lp(a, b, c, ZeroTolerance<T>());
  LpSolution<T> sol = lp.Solve();
  if (sol.status != LpStatus::kOptimal) {
    if (sol.status == LpStatus::kUnbounded) {
      // The margin is capped, so a ray means the double tableau lost
      // conditioning. Re-solve exactly; the double inputs are exact rationals.
      if constexpr (std::is_same_v<T, double>) {
        return ExactFallback(inst, v, all_rows);
      } else {
        ThrowInternal("region LP reported an unbounded margin");
      }
    }
    return out;
  }
  out.h.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.h[k] = sol.x[k] - sol.x[n + k];
  out.margin = sol.value;
  out.feasible = !out.any_strict || PositiveSlack(out.margin);
  return out;
}

MarginLp<double> ExactFallback(const Instance<double>& inst,
                               const RegionVector& v, bool all_rows) {
  Instance<Rational> exact;
  exact.n = inst.n;
  for (std::size_t j = 0; j < inst.x.size(); ++j) {
    std::vector<Rational> row;
    for (double c : inst.x[j]) row.push_back(Rational(c));
    exact.x.push_back(std::move(row));
    exact.y.push_back(Rational(inst.y[j]));
    exact.t.push_back(Rational(inst.t[j]));
  }
  const MarginLp<Rational> r = SolveMarginLp(exact, v, all_rows);
  MarginLp<double> out;
  out.feasible = r.feasible;
  out.any_strict = r.any_strict;
  for (const Rational& hk : r.h) out.h.push_back(hk.get_d());
  out.margin = r.margin.get_d();
  return out;
}

void CheckDimensionLimit(const Sample& sample, const LinearOracleOptions& opt) {
  if (sample.dimension() > opt.max_dimension) {
    ThrowUnsupported("linear oracle dimension " +
                     std::to_string(sample.dimension()) +
                     " exceeds the configured limit " +
                     std::to_string(opt.max_dimension));
  }
}

template <typename T>
FeasibilityResult PvfImpl(const Sample& sample, const RegionVector& v) {
  const Instance<T> inst = MakeInstance<T>(sample);
  FeasibilityResult result;
  MarginLp<T> strict = SolveMarginLp(inst, v, /*all_rows=*/false);
  if (!strict.feasible) return result;
  std::vector<T> h = strict.h;
  MarginLp<T> interior = SolveMarginLp(inst, v, /*all_rows=*/true);
  if (interior.h.size() == h.size() && PositiveSlack(interior.margin)) {
    h = interior.h;
  }
  result.feasible = true;
  bool have_strict = false;
  T min_margin(0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != Region::kAbove && v[j] != Region::kBelow) continue;
    const T r = Dot(h, inst.x[j]) - inst.y[j];
    const T margin = v[j] == Region::kAbove ? T(r - inst.t[j])
                                            : T(-inst.t[j] - r);
    if (!have_strict || margin < min_margin) min_margin = margin;
    have_strict = true;
  }
  result.slack = have_strict ? ScalarTraits<T>::ToDouble(min_margin) : 0.0;
  result.witness.reserve(h.size());
  for (const T& hk : h) result.witness.push_back(ScalarTraits<T>::ToDouble(hk));
  if constexpr (std::is_same_v<T, Rational>) result.exact_witness = h;
  return result;
}

template <typename T>
struct Node {
  RegionVector v;
  std::vector<T> h;
};

// Region of point j realized by witness h, if it can be reused without an LP:
// exact in rational mode, clear of the boundary by the slack threshold in
// floating mode.
template <typename T>
std::optional<Region> ReusableRegion(const Instance<T>& inst,
                                     const std::vector<T>& h, std::size_t j) {
  const T r = Dot(h, inst.x[j]) - inst.y[j];
  const T& t = inst.t[j];
  if constexpr (std::is_same_v<T, double>) {
    if (r > t + kStrictSlackThreshold) return Region::kAbove;
    if (r < -t - kStrictSlackThreshold) return Region::kBelow;
    if (r <= t - 1e-12 && r >= -t + 1e-12) return Region::kOne;
    return std::nullopt;
  } else {
    if (r > t) return Region::kAbove;
    if (r < -t) return Region::kBelow;
    return Region::kOne;
  }
}

template <typename T>
std::vector<RegionVector> EnumerateImpl(const Sample& sample,
                                        const LinearOracleOptions& options) {
  const Instance<T> inst = MakeInstance<T>(sample);
  const std::size_t m = sample.size();
  std::vector<Node<T>> level;
  level.push_back({RegionVector(m, Region::kFree), std::vector<T>(inst.n, T(0))});
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t num_candidates = level.size() * kAlphabet.size();
    std::vector<std::optional<std::vector<T>>> witness(num_candidates);
    std::vector<std::size_t> needs_lp;
    for (std::size_t p = 0; p < level.size(); ++p) {
      const auto reuse = ReusableRegion(inst, level[p].h, j);
      for (std::size_t a = 0; a < kAlphabet.size(); ++a) {
        if (reuse && *reuse == kAlphabet[a]) {
          witness[p * kAlphabet.size() + a] = level[p].h;
        } else {
          needs_lp.push_back(p * kAlphabet.size() + a);
        }
      }
    }
    const long num_lp = static_cast<long>(needs_lp.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (long q = 0; q < num_lp; ++q) {
      const std::size_t c = needs_lp[q];
      RegionVector v = level[c / kAlphabet.size()].v;
      v[j] = kAlphabet[c % kAlphabet.size()];
      try {
        MarginLp<T> lp = SolveMarginLp(inst, v, /*all_rows=*/false);
        if (lp.feasible) witness[c] = std::move(lp.h);
      } catch (...) {
#pragma omp critical(predgame_region_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<Node<T>> next;
    for (std::size_t c = 0; c < num_candidates; ++c) {
      if (!witness[c]) continue;
      RegionVector v = level[c / kAlphabet.size()].v;
      v[j] = kAlphabet[c % kAlphabet.size()];
      next.push_back({std::move(v), std::move(*witness[c])});
    }
    if (next.size() > options.region_budget) {
      ThrowResource("region enumeration exceeded the budget of " +
                    std::to_string(options.region_budget) + " vectors");
    }
    level = std::move(next);
  }
  std::vector<RegionVector> out;
  out.reserve(level.size());
  for (Node<T>& node : level) out.push_back(std::move(node.v));
  return out;
}

template <typename T>
std::vector<RegionVector> ReferenceEnumerateImpl(
    const Sample& sample, const LinearOracleOptions& options) {
  const Instance<T> inst = MakeInstance<T>(sample);
  std::vector<RegionVector> level = {RegionVector(sample.size(), Region::kFree)};
  for (std::size_t j = 0; j < sample.size(); ++j) {
    std::vector<RegionVector> next;
    for (const RegionVector& parent : level) {
      for (Region alpha : kAlphabet) {
        RegionVector v = parent;
        v[j] = alpha;
        if (SolveMarginLp(inst, v, false).feasible) next.push_back(std::move(v));
      }
    }
    if (next.size() > options.region_budget) {
      ThrowResource("region enumeration exceeded the budget of " +
                    std::to_string(options.region_budget) + " vectors");
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace

FeasibilityResult Pvf(const Sample& sample, const RegionVector& v,
                      const LinearOracleOptions& options) {
  CheckDimensionLimit(sample, options);
  if (v.size() != sample.size()) {
    ThrowInput("region vector length " + std::to_string(v.size()) +
               " does not match sample size " + std::to_string(sample.size()));
  }
  if (options.mode == ArithmeticMode::kRational) {
    return PvfImpl<Rational>(sample, v);
  }
  return PvfImpl<double>(sample, v);
}

std::vector<RegionVector> EnumerateRegions(const Sample& sample,
                                           const LinearOracleOptions& options) {
  CheckDimensionLimit(sample, options);
  if (options.mode == ArithmeticMode::kRational) {
    return EnumerateImpl<Rational>(sample, options);
  }
  return EnumerateImpl<double>(sample, options);
}

namespace reference {

std::vector<RegionVector> EnumerateRegions(const Sample& sample,
                                           const LinearOracleOptions& options) {
  CheckDimensionLimit(sample, options);
  if (options.mode == ArithmeticMode::kRational) {
    return ReferenceEnumerateImpl<Rational>(sample, options);
  }
  return ReferenceEnumerateImpl<double>(sample, options);
}

}  // namespace reference

LinearResponse BestLinearResponse(const Sample& sample,
                                  std::span<const Hypothesis> opponents,
                                  bool with_bias,
                                  const LinearOracleOptions& options) {
  if (sample.empty()) ThrowInput("best linear response needs a non-empty sample");
  const std::size_t m = sample.size();
  std::vector<Pattern> opponent_patterns;
  for (const Hypothesis& h : opponents) {
    h.CheckDimension(sample.dimension());
    opponent_patterns.push_back(SatisfactionPattern(sample, h));
  }
  const std::vector<std::uint32_t> counts =
      SatisfierCounts(opponent_patterns, m);
  const std::size_t num_players = opponents.size() + 1;

  const Sample work = with_bias ? AugmentWithBias(sample) : sample;
  const std::vector<RegionVector> regions = EnumerateRegions(work, options);

  std::vector<Rational> scores;
  scores.reserve(regions.size());
  for (const RegionVector& v : regions) {
    scores.push_back(DeviationPayoff<Rational>(OnePattern(v), counts,
                                               num_players));
  }
  std::vector<std::size_t> order(regions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  LinearResponse out;
  out.weights.reserve(m);
  for (std::uint32_t c : counts) {
    out.weights.push_back(ScalarTraits<Rational>::FromRatio(1, c + 1));
  }
  for (std::size_t idx : order) {
    const FeasibilityResult fr = Pvf(work, regions[idx], options);
    if (!fr.feasible) continue;
    Hypothesis h = Hypothesis::Linear(fr.witness);
    if (SatisfactionPattern(sample, h) != OnePattern(regions[idx])) continue;
    out.hypothesis = std::move(h);
    out.region = regions[idx];
    out.payoff_exact = scores[idx];
    out.payoff = out.payoff_exact.get_d();
    return out;
  }
  ThrowInternal("no region witness reproduced its satisfaction pattern");
}

}  // namespace predgame
