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

#ifndef PREDGAME_MODEL_H_
#define PREDGAME_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace predgame {

// One user z = (x, y, t): features, label, tolerance.
struct UserPoint {
  std::vector<double> x;
  double y = 0.0;
  double t = 0.0;

  friend bool operator==(const UserPoint&, const UserPoint&) = default;
};

// An ordered sample of users sharing one feature dimension.
class Sample {
 public:
  Sample() = default;
  // Throws an input error on mixed dimensions, negative or non-finite values.
  explicit Sample(std::vector<UserPoint> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  // Feature dimension; 0 for an empty sample.
  std::size_t dimension() const { return dimension_; }
  const UserPoint& operator[](std::size_t j) const { return points_[j]; }
  std::span<const UserPoint> points() const { return points_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::vector<UserPoint> points_;
  std::size_t dimension_ = 0;
};

class Hypothesis;

// x -> coefficients . x, with an optional trailing intercept when the
// coefficient vector is one longer than the feature dimension.
struct LinearForm {
  std::vector<double> coefficients;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

struct ConstantForm {
  double value = 0.0;
  friend bool operator==(const ConstantForm&, const ConstantForm&) = default;
};

// Predicts 1 on the interval, 0 elsewhere. One-dimensional inputs only.
struct IntervalForm {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_inclusive = true;
  bool hi_inclusive = true;
  friend bool operator==(const IntervalForm&, const IntervalForm&) = default;
};

// Predicts a listed value on exactly matching x vectors, else defers to base.
struct SampleOverrideForm {
  std::shared_ptr<const Hypothesis> base;
  std::map<std::vector<double>, double> overrides;
  friend bool operator==(const SampleOverrideForm& a,
                         const SampleOverrideForm& b);
};

class Hypothesis {
 public:
  using Form =
      std::variant<LinearForm, ConstantForm, IntervalForm, SampleOverrideForm>;

  Hypothesis() : form_(ConstantForm{}) {}
  explicit Hypothesis(Form form) : form_(std::move(form)) {}

  static Hypothesis Linear(std::vector<double> coefficients);
  static Hypothesis Constant(double value);
  static Hypothesis Interval(double lo, double hi, bool lo_inclusive,
                             bool hi_inclusive);
  static Hypothesis Override(Hypothesis base,
                             std::map<std::vector<double>, double> overrides);

  const Form& form() const { return form_; }
  std::string FormName() const;

  // Prediction h(x). Input error if x has the wrong dimension for this form.
  double Predict(std::span<const double> x) const;

  // Dimension requirement check against the game's feature dimension.
  void CheckDimension(std::size_t n) const;

  friend bool operator==(const Hypothesis& a, const Hypothesis& b) {
    return a.form_ == b.form_;
  }

 private:
  Form form_;
};

// Satisfaction bits of one hypothesis over a sample (1 = satisfied).
using Pattern = std::vector<std::uint8_t>;

struct FiniteClass {
  std::vector<Hypothesis> members;
};

struct LinearClass {
  std::size_t n = 1;
  bool with_bias = false;
};

// Player 1's class in the non-learnability construction, restricted to the
// two members induced by the support sample.
struct Example41Class {
  Sample support;
};

class HypothesisClass {
 public:
  using Kind = std::variant<FiniteClass, LinearClass, Example41Class>;

  HypothesisClass() : kind_(FiniteClass{}) {}
  HypothesisClass(Kind kind, std::optional<int> declared_pdim = std::nullopt);

  static HypothesisClass Finite(std::vector<Hypothesis> members,
                                std::optional<int> pdim = std::nullopt);
  static HypothesisClass Linear(std::size_t n, bool with_bias,
                                std::optional<int> pdim = std::nullopt);
  static HypothesisClass Example41(Sample support,
                                   std::optional<int> pdim = std::nullopt);

  const Kind& kind() const { return kind_; }
  std::optional<int> declared_pdim() const { return declared_pdim_; }
  std::string KindName() const;

  // True when the class has an explicit finite member list.
  bool IsFinite() const { return !std::holds_alternative<LinearClass>(kind_); }
  bool IsLinear() const { return std::holds_alternative<LinearClass>(kind_); }

  // Members of a finite class (Example41 materializes its two members).
  // Unsupported error for the linear class.
  const std::vector<Hypothesis>& Members() const;

  // Index of h among Members(), if any.
  std::optional<std::size_t> IndexOf(const Hypothesis& h) const;

  bool Contains(const Hypothesis& h) const;

  // Feature dimension this class expects, when it constrains one.
  std::optional<std::size_t> Dimension() const;

 private:
  Kind kind_;
  std::optional<int> declared_pdim_;
  std::vector<Hypothesis> materialized_;
};

// The two sample-dependent hypotheses of the non-learnability construction:
// value `label` on every sampled x, the [1,2] indicator elsewhere.
Hypothesis MakeSampleLabeler(const Sample& support, double label);

struct StrategyProfile {
  std::vector<Hypothesis> strategies;

  std::size_t size() const { return strategies.size(); }
  const Hypothesis& operator[](std::size_t i) const { return strategies[i]; }

  StrategyProfile WithStrategy(std::size_t i, Hypothesis h) const {
    StrategyProfile out = *this;
    out.strategies[i] = std::move(h);
    return out;
  }

  friend bool operator==(const StrategyProfile&,
                         const StrategyProfile&) = default;
};

// Complete-information game over the uniform distribution on a sample.
class EmpiricalGame {
 public:
  // Validates N >= 1, m >= 1, matching dimensions, and that each finite
  // class is duplicate-free in its predictions on the sample.
  EmpiricalGame(Sample sample, std::vector<HypothesisClass> classes);

  const Sample& sample() const { return sample_; }
  const std::vector<HypothesisClass>& classes() const { return classes_; }
  const HypothesisClass& player_class(std::size_t i) const {
    return classes_[i];
  }
  std::size_t num_players() const { return classes_.size(); }
  std::size_t sample_size() const { return sample_.size(); }

  // Cached satisfaction patterns of player i's finite members.
  const std::vector<Pattern>& member_patterns(std::size_t i) const {
    return member_patterns_[i];
  }

  // Input error when the profile has the wrong length or a strategy outside
  // its player's class.
  void CheckProfile(const StrategyProfile& profile) const;

  // Index-0 member for finite classes, the zero vector for linear ones.
  StrategyProfile DefaultProfile() const;

  // Profile of finite members selected by index.
  StrategyProfile ProfileFromIndices(std::span<const std::size_t> idx) const;

 private:
  Sample sample_;
  std::vector<HypothesisClass> classes_;
  std::vector<std::vector<Pattern>> member_patterns_;
};

}  // namespace predgame

#endif  // PREDGAME_MODEL_H_
