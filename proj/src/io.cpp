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

#include "predgame/io.h"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "predgame/error.h"
#include "predgame/numeric.h"

namespace predgame {

namespace fs = std::filesystem;

namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitCommas(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double ParseDecimal(const std::string& text, std::size_t line_no) {
  if (text.empty()) ThrowInput("line " + std::to_string(line_no) + ": empty field");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE) {
    ThrowInput("line " + std::to_string(line_no) + ": cannot parse '" + text +
               "' as a number");
  }
  return v;
}

template <typename T>
T Get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    ThrowInput(std::string("descriptor is missing \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    ThrowInput(std::string("descriptor field \"") + key + "\": " + e.what());
  }
}

template <typename T>
T GetOr(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return Get<T>(j, key);
}

Box BoxFromJson(const Json& j) {
  Box box;
  if (!j.is_array()) ThrowInput("x range must be an array of [lo, hi] pairs");
  for (const Json& r : j) {
    if (!r.is_array() || r.size() != 2) ThrowInput("x range entries must be [lo, hi]");
    box.emplace_back(r[0].get<double>(), r[1].get<double>());
  }
  return box;
}

Json BoxToJson(const Box& box) {
  Json out = Json::array();
  for (const auto& [lo, hi] : box) out.push_back({lo, hi});
  return out;
}

std::optional<int> PdimFromJson(const Json& j) {
  if (!j.contains("pdim") || j.at("pdim").is_null()) return std::nullopt;
  return Get<int>(j, "pdim");
}

Sample PointsFromJson(const Json& j) {
  if (!j.is_array()) ThrowInput("points must be an array");
  std::vector<UserPoint> points;
  for (const Json& p : j) points.push_back(PointFromJson(p));
  return Sample(std::move(points));
}

Json PointsToJson(const Sample& sample) {
  Json out = Json::array();
  for (const UserPoint& z : sample) out.push_back(PointToJson(z));
  return out;
}

}  // namespace

Sample ParseSampleCsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<UserPoint> points;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto fields = SplitCommas(trimmed);
    if (!n) {
      if (fields.size() < 3) ThrowInput("sample header needs x1,...,xn,y,t");
      for (std::size_t k = 0; k + 2 < fields.size(); ++k) {
        if (fields[k] != "x" + std::to_string(k + 1)) {
          ThrowInput("sample header column " + std::to_string(k + 1) +
                     " should be x" + std::to_string(k + 1));
        }
      }
      if (fields[fields.size() - 2] != "y" || fields.back() != "t") {
        ThrowInput("sample header must end with y,t");
      }
      n = fields.size() - 2;
      continue;
    }
    if (fields.size() != *n + 2) {
      ThrowInput("line " + std::to_string(line_no) + ": expected " +
                 std::to_string(*n + 2) + " fields");
    }
    UserPoint z;
    for (std::size_t k = 0; k < *n; ++k) z.x.push_back(ParseDecimal(fields[k], line_no));
    z.y = ParseDecimal(fields[*n], line_no);
    z.t = ParseDecimal(fields[*n + 1], line_no);
    points.push_back(std::move(z));
  }
  if (!n) ThrowInput("sample file has no header");
  return Sample(std::move(points));
}

Sample ReadSampleCsv(const fs::path& path) { return ParseSampleCsv(ReadTextFile(path)); }

std::string SampleToCsv(const Sample& sample) {
  std::string out;
  for (std::size_t k = 0; k < sample.dimension(); ++k) {
    out += "x" + std::to_string(k + 1) + ",";
  }
  out += "y,t\n";
  for (const UserPoint& z : sample) {
    for (double v : z.x) out += FormatDouble(v) + ",";
    out += FormatDouble(z.y) + "," + FormatDouble(z.t) + "\n";
  }
  return out;
}

Json PointToJson(const UserPoint& z) { return Json{{"x", z.x}, {"y", z.y}, {"t", z.t}}; }

UserPoint PointFromJson(const Json& j) {
  return {Get<std::vector<double>>(j, "x"), Get<double>(j, "y"), Get<double>(j, "t")};
}

Json HypothesisToJson(const Hypothesis& h) {
  const auto& form = h.form();
  if (const auto* lin = std::get_if<LinearForm>(&form)) {
    return Json{{"form", "linear"}, {"coefficients", lin->coefficients}};
  }
  if (const auto* c = std::get_if<ConstantForm>(&form)) {
    return Json{{"form", "constant"}, {"value", c->value}};
  }
  if (const auto* iv = std::get_if<IntervalForm>(&form)) {
    return Json{{"form", "interval"},         {"lo", iv->lo},
                {"hi", iv->hi},               {"lo_inclusive", iv->lo_inclusive},
                {"hi_inclusive", iv->hi_inclusive}};
  }
  const auto& ov = std::get<SampleOverrideForm>(form);
  Json overrides = Json::array();
  for (const auto& [x, value] : ov.overrides) {
    overrides.push_back(Json{{"x", x}, {"value", value}});
  }
  return Json{{"form", "sample_override"},
              {"base", HypothesisToJson(*ov.base)},
              {"overrides", std::move(overrides)}};
}

Hypothesis HypothesisFromJson(const Json& j) {
  const std::string form = Get<std::string>(j, "form");
  if (form == "linear") {
    return Hypothesis::Linear(Get<std::vector<double>>(j, "coefficients"));
  }
  if (form == "constant") return Hypothesis::Constant(Get<double>(j, "value"));
  if (form == "interval") {
    return Hypothesis::Interval(Get<double>(j, "lo"), Get<double>(j, "hi"),
                                GetOr<bool>(j, "lo_inclusive", true),
                                GetOr<bool>(j, "hi_inclusive", true));
  }
  if (form == "sample_override") {
    std::map<std::vector<double>, double> overrides;
    for (const Json& o : Get<Json>(j, "overrides")) {
      overrides[Get<std::vector<double>>(o, "x")] = Get<double>(o, "value");
    }
    return Hypothesis::Override(HypothesisFromJson(Get<Json>(j, "base")),
                                std::move(overrides));
  }
  ThrowInput("unknown hypothesis form '" + form + "'");
}

Json ClassToJson(const HypothesisClass& cls) {
  Json out;
  out["kind"] = cls.KindName();
  if (const auto* lin = std::get_if<LinearClass>(&cls.kind())) {
    out["n"] = lin->n;
    out["bias"] = lin->with_bias;
  } else if (const auto* ex = std::get_if<Example41Class>(&cls.kind())) {
    out["support"] = PointsToJson(ex->support);
  } else {
    Json members = Json::array();
    for (const Hypothesis& h : cls.Members()) members.push_back(HypothesisToJson(h));
    out["members"] = std::move(members);
  }
  if (cls.declared_pdim()) out["pdim"] = *cls.declared_pdim();
  return out;
}

HypothesisClass ClassFromJson(const Json& j) {
  const std::string kind = Get<std::string>(j, "kind");
  const std::optional<int> pdim = PdimFromJson(j);
  if (kind == "finite") {
    std::vector<Hypothesis> members;
    for (const Json& h : Get<Json>(j, "members")) members.push_back(HypothesisFromJson(h));
    return HypothesisClass::Finite(std::move(members), pdim);
  }
  if (kind == "linear") {
    return HypothesisClass::Linear(Get<std::size_t>(j, "n"), GetOr<bool>(j, "bias", false),
                                   pdim);
  }
  if (kind == "example41_class1") {
    return HypothesisClass::Example41(PointsFromJson(Get<Json>(j, "support")), pdim);
  }
  ThrowInput("unknown hypothesis class kind '" + kind + "'");
}

Json ProfileToJson(const StrategyProfile& profile) {
  Json strategies = Json::array();
  for (const Hypothesis& h : profile.strategies) strategies.push_back(HypothesisToJson(h));
  return Json{{"strategies", std::move(strategies)}};
}

StrategyProfile ProfileFromJson(const Json& j) {
  StrategyProfile profile;
  for (const Json& h : Get<Json>(j, "strategies")) {
    profile.strategies.push_back(HypothesisFromJson(h));
  }
  return profile;
}

Json DistributionToJson(const DistributionSpec& dist) {
  Json out;
  out["kind"] = dist.KindName();
  const auto& kind = dist.kind();
  if (const auto* seg = std::get_if<UniformSegments>(&kind)) {
    Json segments = Json::array();
    for (const Segment& s : seg->segments) {
      segments.push_back(Json{{"x", BoxToJson(s.x_ranges)},
                              {"y", s.y},
                              {"t", s.t},
                              {"mass", s.mass}});
    }
    out["segments"] = std::move(segments);
  } else if (const auto* pm = std::get_if<PointMass>(&kind)) {
    out["point"] = PointToJson(pm->z);
  } else if (const auto* gr = std::get_if<GaussianRegression>(&kind)) {
    out["x"] = BoxToJson(gr->x_ranges);
    out["slope"] = gr->slope;
    out["intercept"] = gr->intercept;
    out["noise_sd"] = gr->noise_sd;
    out["t"] = gr->t;
  } else {
    out["points"] = PointsToJson(std::get<UniformOverSample>(kind).sample);
  }
  return out;
}

DistributionSpec DistributionFromJson(const Json& j) {
  const std::string kind = Get<std::string>(j, "kind");
  if (kind == "example41") return Example41Distribution();
  if (kind == "uniform_segments") {
    UniformSegments segs;
    for (const Json& s : Get<Json>(j, "segments")) {
      segs.segments.push_back({BoxFromJson(Get<Json>(s, "x")), Get<double>(s, "y"),
                               Get<double>(s, "t"), Get<double>(s, "mass")});
    }
    return DistributionSpec(std::move(segs));
  }
  if (kind == "point_mass") return DistributionSpec(PointMass{PointFromJson(Get<Json>(j, "point"))});
  if (kind == "gaussian_regression") {
    GaussianRegression gr;
    gr.x_ranges = BoxFromJson(Get<Json>(j, "x"));
    gr.slope = Get<std::vector<double>>(j, "slope");
    gr.intercept = GetOr<double>(j, "intercept", 0.0);
    gr.noise_sd = GetOr<double>(j, "noise_sd", 0.0);
    gr.t = Get<double>(j, "t");
    return DistributionSpec(std::move(gr));
  }
  if (kind == "uniform_over_sample") {
    return DistributionSpec(UniformOverSample{PointsFromJson(Get<Json>(j, "points"))});
  }
  ThrowConfig("unknown distribution kind '" + kind + "'");
}

GameFile GameFromJson(const Json& j, const fs::path& base_dir) {
  Sample sample;
  if (j.contains("sample")) {
    fs::path p = Get<std::string>(j, "sample");
    if (p.is_relative()) p = base_dir / p;
    sample = ReadSampleCsv(p);
  } else {
    sample = PointsFromJson(Get<Json>(j, "points"));
  }
  std::vector<HypothesisClass> classes;
  for (const Json& c : Get<Json>(j, "classes")) classes.push_back(ClassFromJson(c));
  GameFile out{EmpiricalGame(std::move(sample), std::move(classes)), std::nullopt};
  if (j.contains("initial")) out.initial = ProfileFromJson(j.at("initial"));
  return out;
}

GameFile ReadGameFile(const fs::path& path) {
  return GameFromJson(ReadJsonFile(path), path.parent_path());
}

std::string ReadTextFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowInput("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json ReadJsonFile(const fs::path& path) {
  const std::string text = ReadTextFile(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    ThrowInput("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void WriteFileAtomic(const fs::path& path, std::string_view content) {
  const fs::path tmp =
      path.string() + ".tmp." + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) ThrowInput("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) ThrowInput("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    ThrowInput("cannot move output into '" + path.string() + "'");
  }
}

template <typename Scalar>
std::string TraceToCsv(const DynamicsTrace<Scalar>& trace) {
  std::string out = "step,player,old_payoff,new_payoff,potential\n";
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& s = trace.steps[k];
    out += std::to_string(k + 1) + "," + std::to_string(s.player) + "," +
           FormatScalar(s.old_payoff) + "," + FormatScalar(s.new_payoff) + "," +
           FormatScalar(s.potential_after) + "\n";
  }
  return out;
}

template std::string TraceToCsv<double>(const DynamicsTrace<double>&);
template std::string TraceToCsv<Rational>(const DynamicsTrace<Rational>&);

}  // namespace predgame
