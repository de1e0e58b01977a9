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

#ifndef PREDGAME_DISTRIBUTION_H_
#define PREDGAME_DISTRIBUTION_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "predgame/model.h"
#include "predgame/random.h"

namespace predgame {

using Box = std::vector<std::pair<double, double>>;

// Uniform x over a box with fixed label and tolerance, drawn with
// probability `mass`.
struct Segment {
  Box x_ranges;
  double y = 0.0;
  double t = 0.0;
  double mass = 0.0;
};

struct UniformSegments {
  std::vector<Segment> segments;
};

struct PointMass {
  UserPoint z;
};

// x uniform over a box, y = slope . x + intercept + N(0, noise_sd^2).
struct GaussianRegression {
  Box x_ranges;
  std::vector<double> slope;
  double intercept = 0.0;
  double noise_sd = 0.0;
  double t = 0.0;
};

struct UniformOverSample {
  Sample sample;
};

class DistributionSpec {
 public:
  using Kind =
      std::variant<UniformSegments, PointMass, GaussianRegression, UniformOverSample>;

  // Config error when masses do not sum to 1, tolerances are negative,
  // ranges are inverted, or dimensions disagree.
  explicit DistributionSpec(Kind kind);

  const Kind& kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  std::string KindName() const;

  // One draw. Segment choice and coordinates come from inverse-CDF on the
  // canonical uniform stream.
  UserPoint Draw(Rng& rng) const;

 private:
  Kind kind_;
  std::size_t dimension_ = 0;
};

// The two-segment distribution of the non-learnability construction:
// x ~ U[0,1) with y = 0 and x ~ U[1,2] with y = 1, each with mass 1/2, t = 1/2.
DistributionSpec Example41Distribution();

// m independent draws from one seeded stream.
Sample DrawSample(const DistributionSpec& dist, std::size_t m, std::uint64_t seed);

}  // namespace predgame

#endif  // PREDGAME_DISTRIBUTION_H_
