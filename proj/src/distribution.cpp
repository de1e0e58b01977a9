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

#include "predgame/distribution.h"

#include <cmath>
#include <string>

#include "predgame/error.h"

namespace predgame {

namespace {

void CheckBox(const Box& box, const std::string& what) {
  if (box.empty()) ThrowConfig(what + ": x range needs at least one dimension");
  for (const auto& [lo, hi] : box) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
      ThrowConfig(what + ": invalid x range");
    }
  }
}

std::vector<double> DrawBox(const Box& box, Rng& rng) {
  std::vector<double> x;
  x.reserve(box.size());
  for (const auto& [lo, hi] : box) x.push_back(lo + rng.Uniform() * (hi - lo));
  return x;
}

}  // namespace

DistributionSpec::DistributionSpec(Kind kind) : kind_(std::move(kind)) {
  if (const auto* seg = std::get_if<UniformSegments>(&kind_)) {
    if (seg->segments.empty()) ThrowConfig("uniform segments: no segments");
    double total = 0.0;
    dimension_ = seg->segments.front().x_ranges.size();
    for (const Segment& s : seg->segments) {
      CheckBox(s.x_ranges, "uniform segments");
      if (s.x_ranges.size() != dimension_) {
        ThrowConfig("uniform segments: segments disagree on dimension");
      }
      if (!(s.t >= 0.0) || !std::isfinite(s.t) || !std::isfinite(s.y)) {
        ThrowConfig("uniform segments: label must be finite and tolerance >= 0");
      }
      if (!(s.mass >= 0.0)) ThrowConfig("uniform segments: negative mass");
      total += s.mass;
    }
    if (std::fabs(total - 1.0) > 1e-9) {
      ThrowConfig("uniform segments: masses sum to " + std::to_string(total) +
                  ", expected 1");
    }
  } else if (const auto* pm = std::get_if<PointMass>(&kind_)) {
    const Sample check({pm->z});  // finiteness and t >= 0
    dimension_ = check.dimension();
  } else if (const auto* gr = std::get_if<GaussianRegression>(&kind_)) {
    CheckBox(gr->x_ranges, "gaussian regression");
    dimension_ = gr->x_ranges.size();
    if (gr->slope.size() != dimension_) {
      ThrowConfig("gaussian regression: slope length must match x dimension");
    }
    if (!(gr->noise_sd >= 0.0) || !(gr->t >= 0.0)) {
      ThrowConfig("gaussian regression: noise_sd and t must be >= 0");
    }
  } else {
    const auto& us = std::get<UniformOverSample>(kind_);
    if (us.sample.empty()) ThrowConfig("uniform over sample: empty sample");
    dimension_ = us.sample.dimension();
  }
}

std::string DistributionSpec::KindName() const {
  if (std::holds_alternative<UniformSegments>(kind_)) return "uniform_segments";
  if (std::holds_alternative<PointMass>(kind_)) return "point_mass";
  if (std::holds_alternative<GaussianRegression>(kind_)) return "gaussian_regression";
  return "uniform_over_sample";
}

UserPoint DistributionSpec::Draw(Rng& rng) const {
  if (const auto* seg = std::get_if<UniformSegments>(&kind_)) {
    const double u = rng.Uniform();
    double cumulative = 0.0;
    const Segment* chosen = &seg->segments.back();
    for (const Segment& s : seg->segments) {
      cumulative += s.mass;
      if (u < cumulative) {
        chosen = &s;
        break;
      }
    }
    return {DrawBox(chosen->x_ranges, rng), chosen->y, chosen->t};
  }
  if (const auto* pm = std::get_if<PointMass>(&kind_)) return pm->z;
  if (const auto* gr = std::get_if<GaussianRegression>(&kind_)) {
    UserPoint z;
    z.x = DrawBox(gr->x_ranges, rng);
    z.y = gr->intercept;
    for (std::size_t k = 0; k < z.x.size(); ++k) z.y += gr->slope[k] * z.x[k];
    z.y += gr->noise_sd * rng.StandardNormal();
    z.t = gr->t;
    return z;
  }
  const Sample& s = std::get<UniformOverSample>(kind_).sample;
  return s[rng.Below(s.size())];
}

DistributionSpec Example41Distribution() {
  UniformSegments segs;
  segs.segments.push_back({{{0.0, 1.0}}, 0.0, 0.5, 0.5});
  segs.segments.push_back({{{1.0, 2.0}}, 1.0, 0.5, 0.5});
  return DistributionSpec(std::move(segs));
}

Sample DrawSample(const DistributionSpec& dist, std::size_t m, std::uint64_t seed) {
  if (m == 0) ThrowConfig("sample size must be >= 1");
  Rng rng(seed);
  std::vector<UserPoint> points;
  points.reserve(m);
  for (std::size_t j = 0; j < m; ++j) points.push_back(dist.Draw(rng));
  return Sample(std::move(points));
}

}  // namespace predgame
