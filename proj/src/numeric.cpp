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

#include "predgame/error.h"
#include "predgame/numeric.h"

#include <cctype>
#include <cstdio>
#include <string>

namespace predgame {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
      return "config error";
    case ErrorKind::kInput:
      return "input error";
    case ErrorKind::kResource:
      return "resource error";
    case ErrorKind::kUnsupported:
      return "unsupported";
    case ErrorKind::kInternal:
      return "internal error";
  }
  return "error";
}

ArithmeticMode ParseArithmeticMode(std::string_view text) {
  if (text == "floating") return ArithmeticMode::kFloating;
  if (text == "rational") return ArithmeticMode::kRational;
  ThrowConfig("unknown arithmetic mode '" + std::string(text) +
              "' (expected rational or floating)");
}

const char* ArithmeticModeName(ArithmeticMode mode) {
  return mode == ArithmeticMode::kRational ? "rational" : "floating";
}

bool IsImprovement(double gain, double epsilon) {
  return gain >= epsilon - kFloatingGainSlack;
}

bool IsImprovement(const Rational& gain, const Rational& epsilon) {
  return gain >= epsilon;
}

bool IsViolation(double gain, double epsilon) {
  return gain >= epsilon + kFloatingGainSlack;
}

bool IsViolation(const Rational& gain, const Rational& epsilon) {
  return gain >= epsilon && sgn(gain) > 0;
}

Rational ParseExactRational(std::string_view text) {
  const std::string s(text);
  auto bad = [&]() -> Rational {
    ThrowConfig("cannot parse '" + s + "' as a number");
  };
  if (s.empty()) return bad();
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    try {
      Rational q(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
      if (q.get_den() == 0) return bad();
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      return bad();
    }
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long long frac_digits = 0;
  bool seen_dot = false;
  bool any_digit = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any_digit) return bad();
  long long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') return bad();
    const std::string exp_text = s.substr(pos + 1);
    if (exp_text.empty()) return bad();
    std::size_t used = 0;
    try {
      exponent = std::stoll(exp_text, &used);
    } catch (const std::exception&) {
      return bad();
    }
    if (used != exp_text.size() || exponent > 4000 || exponent < -4000) {
      return bad();
    }
  }
  mpz_class num(digits, 10);
  mpz_class den = 1;
  const long long scale = exponent - frac_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10,
                static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale >= 0) {
    num *= ten_pow;
  } else {
    den = ten_pow;
  }
  Rational q(num, den);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string FormatScalar(double v) { return FormatDouble(v); }

std::string FormatScalar(const Rational& v) { return v.get_str(); }

}  // namespace predgame
