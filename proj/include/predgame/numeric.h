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

#ifndef PREDGAME_NUMERIC_H_
#define PREDGAME_NUMERIC_H_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace predgame {

using Rational = mpq_class;

// Payoffs and the potential are computed either exactly (GMP rationals) or in
// binary floating point. Sample data is always stored as doubles; in rational
// mode each double is read as the exact dyadic rational it represents.
enum class ArithmeticMode { kFloating, kRational };

ArithmeticMode ParseArithmeticMode(std::string_view text);
const char* ArithmeticModeName(ArithmeticMode mode);

// Absolute slack applied to floating-point gain comparisons.
inline constexpr double kFloatingGainSlack = 1e-12;

template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr ArithmeticMode kMode = ArithmeticMode::kFloating;
  static double FromRatio(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double FromDouble(double v) { return v; }
  static double ToDouble(double v) { return v; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr ArithmeticMode kMode = ArithmeticMode::kRational;
  static Rational FromRatio(std::int64_t num, std::int64_t den) {
    Rational q{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
    q.canonicalize();
    return q;
  }
  static Rational FromDouble(double v) { return Rational(v); }
  static double ToDouble(const Rational& v) { return v.get_d(); }
};

// Gain that counts as an epsilon-better response during dynamics. Rational
// mode compares exactly; floating mode tolerates rounding below epsilon.
bool IsImprovement(double gain, double epsilon);
bool IsImprovement(const Rational& gain, const Rational& epsilon);

// Gain that refutes an epsilon-PNE. A deviation must gain at least epsilon
// and strictly more than zero; floating mode adds kFloatingGainSlack.
bool IsViolation(double gain, double epsilon);
bool IsViolation(const Rational& gain, const Rational& epsilon);

// Exact decimal parse ("0.05" -> 1/20, "-1.5e-3", "3/7").
Rational ParseExactRational(std::string_view text);

// 17 significant digits, round-trippable.
std::string FormatDouble(double v);
std::string FormatScalar(double v);
std::string FormatScalar(const Rational& v);

}  // namespace predgame

#endif  // PREDGAME_NUMERIC_H_
