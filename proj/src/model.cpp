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

#include "predgame/model.h"

#include <cmath>
#include <set>
#include <string>

#include "predgame/error.h"
#include "predgame/payoff.h"

namespace predgame {

Sample::Sample(std::vector<UserPoint> points) : points_(std::move(points)) {
  if (points_.empty()) return;
  dimension_ = points_.front().x.size();
  if (dimension_ == 0) ThrowInput("sample points need at least one feature");
  for (std::size_t j = 0; j < points_.size(); ++j) {
    const UserPoint& z = points_[j];
    const std::string where = "sample point " + std::to_string(j) + ": ";
    if (z.x.size() != dimension_) {
      ThrowInput(where + "dimension " + std::to_string(z.x.size()) +
                 " differs from " + std::to_string(dimension_));
    }
    for (double v : z.x) {
      if (!std::isfinite(v)) ThrowInput(where + "non-finite feature");
    }
    if (!std::isfinite(z.y)) ThrowInput(where + "non-finite label");
    if (!std::isfinite(z.t) || z.t < 0.0) {
      ThrowInput(where + "tolerance must be finite and nonnegative");
    }
  }
}

bool operator==(const SampleOverrideForm& a, const SampleOverrideForm& b) {
  if (a.overrides != b.overrides) return false;
  if (a.base == b.base) return true;
  if (!a.base || !b.base) return false;
  return *a.base == *b.base;
}

Hypothesis Hypothesis::Linear(std::vector<double> coefficients) {
  return Hypothesis(LinearForm{std::move(coefficients)});
}

Hypothesis Hypothesis::Constant(double value) {
  return Hypothesis(ConstantForm{value});
}

Hypothesis Hypothesis::Interval(double lo, double hi, bool lo_inclusive,
                                bool hi_inclusive) {
  return Hypothesis(IntervalForm{lo, hi, lo_inclusive, hi_inclusive});
}

Hypothesis Hypothesis::Override(
    Hypothesis base, std::map<std::vector<double>, double> overrides) {
  return Hypothesis(SampleOverrideForm{
      std::make_shared<const Hypothesis>(std::move(base)),
      std::move(overrides)});
}

std::string Hypothesis::FormName() const {
  struct Namer {
    std::string operator()(const LinearForm&) const { return "linear"; }
    std::string operator()(const ConstantForm&) const { return "constant"; }
    std::string operator()(const IntervalForm&) const { return "interval"; }
    std::string operator()(const SampleOverrideForm&) const {
      return "sample_override";
    }
  };
  return std::visit(Namer{}, form_);
}

namespace {

bool InInterval(const IntervalForm& f, double v) {
  const bool above_lo = f.lo_inclusive ? v >= f.lo : v > f.lo;
  const bool below_hi = f.hi_inclusive ? v <= f.hi : v < f.hi;
  return above_lo && below_hi;
}

}  // namespace

double Hypothesis::Predict(std::span<const double> x) const {
  if (const auto* lin = std::get_if<LinearForm>(&form_)) {
    const auto& a = lin->coefficients;
    if (a.size() != x.size() && a.size() != x.size() + 1) {
      ThrowInput("linear hypothesis with " + std::to_string(a.size()) +
                 " coefficients applied to " + std::to_string(x.size()) +
                 "-dimensional input");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) acc += a[k] * x[k];
    if (a.size() == x.size() + 1) acc += a.back();
    return acc;
  }
  if (const auto* c = std::get_if<ConstantForm>(&form_)) return c->value;
  if (const auto* iv = std::get_if<IntervalForm>(&form_)) {
    if (x.size() != 1) ThrowInput("interval indicator needs 1-dimensional input");
    return InInterval(*iv, x[0]) ? 1.0 : 0.0;
  }
  const auto& ov = std::get<SampleOverrideForm>(form_);
  const auto it = ov.overrides.find(std::vector<double>(x.begin(), x.end()));
  if (it != ov.overrides.end()) return it->second;
  return ov.base->Predict(x);
}

void Hypothesis::CheckDimension(std::size_t n) const {
  if (const auto* lin = std::get_if<LinearForm>(&form_)) {
    if (lin->coefficients.size() != n && lin->coefficients.size() != n + 1) {
      ThrowInput("linear hypothesis has " +
                 std::to_string(lin->coefficients.size()) +
                 " coefficients; expected " + std::to_string(n) + " or " +
                 std::to_string(n + 1));
    }
    for (double v : lin->coefficients) {
      if (!std::isfinite(v)) ThrowInput("non-finite linear coefficient");
    }
  } else if (const auto* c = std::get_if<ConstantForm>(&form_)) {
    if (!std::isfinite(c->value)) ThrowInput("non-finite constant hypothesis");
  } else if (std::holds_alternative<IntervalForm>(form_)) {
    if (n != 1) ThrowInput("interval indicator is defined for n = 1 only");
  } else {
    const auto& ov = std::get<SampleOverrideForm>(form_);
    if (!ov.base) ThrowInput("sample override without a base hypothesis");
    ov.base->CheckDimension(n);
    for (const auto& [x, value] : ov.overrides) {
      if (x.size() != n) ThrowInput("sample override key has wrong dimension");
      if (!std::isfinite(value)) ThrowInput("non-finite override value");
    }
  }
}

Hypothesis MakeSampleLabeler(const Sample& support, double label) {
  std::map<std::vector<double>, double> overrides;
  for (const UserPoint& z : support) overrides[z.x] = label;
  return Hypothesis::Override(Hypothesis::Interval(1.0, 2.0, true, true),
                              std::move(overrides));
}

HypothesisClass::HypothesisClass(Kind kind, std::optional<int> declared_pdim)
    : kind_(std::move(kind)), declared_pdim_(declared_pdim) {
  if (declared_pdim_ && *declared_pdim_ < 1) {
    ThrowConfig("declared pseudo-dimension must be >= 1");
  }
  if (const auto* fin = std::get_if<FiniteClass>(&kind_)) {
    if (fin->members.empty()) ThrowInput("finite hypothesis class is empty");
  } else if (const auto* lin = std::get_if<LinearClass>(&kind_)) {
    if (lin->n == 0) ThrowInput("linear class needs n >= 1");
  } else {
    const auto& ex = std::get<Example41Class>(kind_);
    if (ex.support.dimension() > 1) {
      ThrowInput("example41 class support must be one-dimensional");
    }
    materialized_ = {MakeSampleLabeler(ex.support, 0.0),
                     MakeSampleLabeler(ex.support, 1.0)};
  }
}

HypothesisClass HypothesisClass::Finite(std::vector<Hypothesis> members,
                                        std::optional<int> pdim) {
  return HypothesisClass(FiniteClass{std::move(members)}, pdim);
}

HypothesisClass HypothesisClass::Linear(std::size_t n, bool with_bias,
                                        std::optional<int> pdim) {
  return HypothesisClass(LinearClass{n, with_bias}, pdim);
}

HypothesisClass HypothesisClass::Example41(Sample support,
                                           std::optional<int> pdim) {
  return HypothesisClass(Example41Class{std::move(support)}, pdim);
}

std::string HypothesisClass::KindName() const {
  if (std::holds_alternative<FiniteClass>(kind_)) return "finite";
  if (std::holds_alternative<LinearClass>(kind_)) return "linear";
  return "example41_class1";
}

const std::vector<Hypothesis>& HypothesisClass::Members() const {
  if (const auto* fin = std::get_if<FiniteClass>(&kind_)) return fin->members;
  if (std::holds_alternative<Example41Class>(kind_)) return materialized_;
  ThrowUnsupported("the linear class has no finite member list");
}

std::optional<std::size_t> HypothesisClass::IndexOf(const Hypothesis& h) const {
  if (IsLinear()) return std::nullopt;
  const auto& members = Members();
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k] == h) return k;
  }
  return std::nullopt;
}

bool HypothesisClass::Contains(const Hypothesis& h) const {
  if (const auto* lin = std::get_if<LinearClass>(&kind_)) {
    const auto* form = std::get_if<LinearForm>(&h.form());
    return form != nullptr &&
           form->coefficients.size() == lin->n + (lin->with_bias ? 1 : 0);
  }
  return IndexOf(h).has_value();
}

std::optional<std::size_t> HypothesisClass::Dimension() const {
  if (const auto* lin = std::get_if<LinearClass>(&kind_)) return lin->n;
  if (std::holds_alternative<Example41Class>(kind_)) return 1;
  return std::nullopt;
}

EmpiricalGame::EmpiricalGame(Sample sample, std::vector<HypothesisClass> classes)
    : sample_(std::move(sample)), classes_(std::move(classes)) {
  if (sample_.empty()) ThrowInput("empirical game needs a non-empty sample");
  if (classes_.empty()) ThrowInput("empirical game needs at least one player");
  const std::size_t n = sample_.dimension();
  member_patterns_.resize(classes_.size());
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const HypothesisClass& cls = classes_[i];
    const std::string who = "player " + std::to_string(i) + ": ";
    if (const auto dim = cls.Dimension(); dim && *dim != n) {
      ThrowInput(who + "class dimension " + std::to_string(*dim) +
                 " does not match sample dimension " + std::to_string(n));
    }
    if (!cls.IsFinite()) continue;
    std::set<std::vector<double>> seen;
    for (const Hypothesis& h : cls.Members()) {
      h.CheckDimension(n);
      std::vector<double> predictions;
      predictions.reserve(sample_.size());
      for (const UserPoint& z : sample_) predictions.push_back(h.Predict(z.x));
      if (!seen.insert(std::move(predictions)).second) {
        ThrowInput(who + "finite class has members that coincide on the sample");
      }
      member_patterns_[i].push_back(SatisfactionPattern(sample_, h));
    }
  }
}

void EmpiricalGame::CheckProfile(const StrategyProfile& profile) const {
  if (profile.size() != classes_.size()) {
    ThrowInput("profile has " + std::to_string(profile.size()) +
               " strategies for " + std::to_string(classes_.size()) +
               " players");
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    profile[i].CheckDimension(sample_.dimension());
    if (!classes_[i].Contains(profile[i])) {
      ThrowInput("strategy of player " + std::to_string(i) +
                 " is not a member of its class");
    }
  }
}

StrategyProfile EmpiricalGame::DefaultProfile() const {
  StrategyProfile profile;
  for (const HypothesisClass& cls : classes_) {
    if (const auto* lin = std::get_if<LinearClass>(&cls.kind())) {
      profile.strategies.push_back(Hypothesis::Linear(
          std::vector<double>(lin->n + (lin->with_bias ? 1 : 0), 0.0)));
    } else {
      profile.strategies.push_back(cls.Members().front());
    }
  }
  return profile;
}

StrategyProfile EmpiricalGame::ProfileFromIndices(
    std::span<const std::size_t> idx) const {
  if (idx.size() != classes_.size()) ThrowInput("index profile has wrong length");
  StrategyProfile profile;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& members = classes_[i].Members();
    if (idx[i] >= members.size()) ThrowInput("member index out of range");
    profile.strategies.push_back(members[idx[i]]);
  }
  return profile;
}

}  // namespace predgame
