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

#ifndef PREDGAME_IO_H_
#define PREDGAME_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "predgame/distribution.h"
#include "predgame/dynamics.h"
#include "predgame/model.h"
#include "json.hpp"

namespace predgame {

using Json = nlohmann::ordered_json;

// Sample CSV: header x1,...,xn,y,t then one decimal row per point. Lines
// starting with '#' and blank lines are ignored.
Sample ParseSampleCsv(std::string_view text);
Sample ReadSampleCsv(const std::filesystem::path& path);
std::string SampleToCsv(const Sample& sample);

// Structured descriptors. Hypotheses carry a "form" tag:
//   {"form":"linear","coefficients":[...]}
//   {"form":"constant","value":v}
//   {"form":"interval","lo":a,"hi":b,"lo_inclusive":true,"hi_inclusive":false}
//   {"form":"sample_override","base":{...},"overrides":[{"x":[...],"value":v}]}
Json HypothesisToJson(const Hypothesis& h);
Hypothesis HypothesisFromJson(const Json& j);

// {"kind":"finite","members":[...]} | {"kind":"linear","n":1,"bias":false}
// | {"kind":"example41_class1","support":[{"x":[..],"y":..,"t":..},...]}
// each with optional "pdim".
Json ClassToJson(const HypothesisClass& cls);
HypothesisClass ClassFromJson(const Json& j);

// {"strategies":[...]}
Json ProfileToJson(const StrategyProfile& profile);
StrategyProfile ProfileFromJson(const Json& j);

Json PointToJson(const UserPoint& z);
UserPoint PointFromJson(const Json& j);

// {"kind":"uniform_segments","segments":[{"x":[[lo,hi],...],"y":..,"t":..,"mass":..}]}
// {"kind":"point_mass","point":{...}}
// {"kind":"gaussian_regression","x":[[lo,hi]],"slope":[..],"intercept":..,"noise_sd":..,"t":..}
// {"kind":"uniform_over_sample","points":[...]} or {"kind":"example41"}
Json DistributionToJson(const DistributionSpec& dist);
DistributionSpec DistributionFromJson(const Json& j);

struct GameFile {
  EmpiricalGame game;
  std::optional<StrategyProfile> initial;
};

// {"sample":"file.csv" | "points":[...], "classes":[...], "initial":{...}}.
// Relative sample paths resolve against `base_dir`.
GameFile GameFromJson(const Json& j, const std::filesystem::path& base_dir);
GameFile ReadGameFile(const std::filesystem::path& path);

Json ReadJsonFile(const std::filesystem::path& path);
std::string ReadTextFile(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames over `path`.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view content);

// step,player,old_payoff,new_payoff,potential; steps numbered from 1.
template <typename Scalar>
std::string TraceToCsv(const DynamicsTrace<Scalar>& trace);

}  // namespace predgame

#endif  // PREDGAME_IO_H_
