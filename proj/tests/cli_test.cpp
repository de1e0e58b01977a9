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

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "doctest.h"
#include "predgame/io.h"

namespace predgame {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = PREDGAME_FIXTURE_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("predgame_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string Fixture(const std::string& name) { return (kFixtures / name).string(); }

// Drops '#' lines, which carry the embedded config.
std::string Body(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out += line + "\n";
  }
  return out;
}

TEST_CASE("sample-size prints the minimal m") {
  const auto r = Cli({"sample-size", "--epsilon", "0.5", "--delta", "0.5", "--d", "1", "--players", "1"});
  CHECK(r.code == 0);
  const double e = std::numbers::e;
  const double threshold = 320 / 0.25 * std::log(160 / 0.25) + 160 * std::log(2 * e) / 0.25 +
                           16 / 0.25 * std::log(4 / 0.5);
  CHECK(r.out == std::to_string(static_cast<long>(std::ceil(threshold))) + "\n");
}

TEST_CASE("ucb prints the bound") {
  const auto r = Cli({"ucb", "--epsilon", "1", "--m", "1"});
  CHECK(r.code == 0);
  const double expected = 4 * std::pow(2 * std::numbers::e, 10) * std::exp(-0.125);
  CHECK(std::fabs(std::stod(r.out) / expected - 1) < 1e-12);
}

TEST_CASE("dynamics trace matches the golden file") {
  const fs::path dir = TempDir("dynamics");
  const auto r = Cli({"dynamics", "--game", Fixture("game2x2.json"), "--epsilon", "1/10",
                      "--mode", "rational", "--seed", "5", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const std::string trace = ReadTextFile(dir / "trace.csv");
  CHECK(Body(trace) == ReadTextFile(kFixtures / "game2x2_trace_rational.csv"));
  CHECK(trace.rfind("# config ", 0) == 0);
  const Json report = ReadJsonFile(dir / "report.json");
  CHECK(report["config"]["seed"] == "5");
  CHECK(report["config"]["mode"] == "rational");
  CHECK(report["result"]["terminated"] == true);
  CHECK(report["result"]["final_potential"] == "1");
  // Endpoint is the single equilibrium found by enumeration.
  const auto pne = Cli({"pne-enumerate", "--game", Fixture("game2x2.json"), "--mode", "rational"});
  CHECK(pne.out == "equilibria 1 of 4\n1 0\n");
  CHECK(ProfileFromJson(ReadJsonFile(dir / "profile.json")) ==
        ProfileFromJson(Json::parse(
            R"({"strategies":[{"form":"constant","value":0},{"form":"constant","value":1}]})")));
}

TEST_CASE("floating trace uses 17 significant digits") {
  const fs::path dir = TempDir("dynamics_f");
  REQUIRE(Cli({"dynamics", "--game", Fixture("game2x2.json"), "--epsilon", "0.1", "--out",
               dir.string()})
              .code == 0);
  CHECK(Body(ReadTextFile(dir / "trace.csv")) ==
        "step,player,old_payoff,new_payoff,potential\n1,0,0,0.66666666666666663,1\n");
}

TEST_CASE("verify reports a violation with a witness") {
  const fs::path dir = TempDir("verify");
  const auto r = Cli({"verify", "--game", Fixture("game2x2.json"), "--profile",
                      Fixture("profile_not_pne.json"), "--epsilon", "0", "--mode", "rational",
                      "--out", dir.string()});
  CHECK(r.code == cli::kExitViolated);
  CHECK(r.out == "violated player 0 gain 2/3\n");
  const Json report = ReadJsonFile(dir / "report.json");
  CHECK(report["result"]["holds"] == false);
  CHECK(report["result"]["player"] == 0);
  CHECK(HypothesisFromJson(report["result"]["witness"]) == Hypothesis::Constant(0));

  const auto ok = Cli({"verify", "--game", Fixture("game2x2.json"), "--epsilon", "0.7"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "holds\n");
}

TEST_CASE("blr and restriction-count") {
  const auto r = Cli({"blr", "--sample", Fixture("two_point.csv"), "--opponents",
                      Fixture("opponents_point1.json"), "--mode", "rational"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("payoff 1/2\n", 0) == 0);
  const auto c = Cli({"restriction-count", "--sample", Fixture("two_point.csv"), "--class",
                      Fixture("linear_class.json")});
  CHECK(c.code == 0);
  CHECK(c.out == "3\n");
}

TEST_CASE("learn writes its artifacts") {
  const fs::path dir = TempDir("learn");
  const auto r = Cli({"learn", "--problem", Fixture("learn_problem.json"), "--epsilon", "0.2",
                      "--delta", "0.1", "--m-cap", "500", "--seed", "4", "--out", dir.string()});
  REQUIRE(r.code == 0);
  for (const char* f : {"report.json", "profile.json", "trace.csv", "sample.csv"}) {
    CHECK(fs::exists(dir / f));
  }
  const Json report = ReadJsonFile(dir / "report.json");
  CHECK(report["result"]["m_used"] == 500);
  CHECK(report["result"]["capped"] == true);
  CHECK(report["result"]["population_guarantee"] == false);
  CHECK(report["result"]["empirical_half_epsilon_pne"] == true);
  CHECK(ReadSampleCsv(dir / "sample.csv").size() == 500);
}

TEST_CASE("scenarios") {
  const auto a6 = Cli({"scenario", "claim-a6", "--seed", "2"});
  CHECK(a6.code == 0);
  CHECK(a6.out.find("exact 247/512") != std::string::npos);
  const auto ex = Cli({"scenario", "example41", "--draws", "20000", "--mode", "rational"});
  CHECK(ex.code == 0);
  CHECK(ex.out.find("pne ") != std::string::npos);
  CHECK(Cli({"scenario", "nope"}).code == cli::kExitConfig);
}

TEST_CASE("identical runs are byte-identical across thread counts") {
  const fs::path a = TempDir("rep_a"), b = TempDir("rep_b");
  std::vector<std::string> base{"learn", "--problem", Fixture("learn_problem.json"), "--epsilon",
                                "0.2", "--delta", "0.1", "--m-cap", "300", "--seed", "11"};
  auto run_a = base, run_b = base;
  run_a.insert(run_a.end(), {"--threads", "1", "--out", a.string()});
  run_b.insert(run_b.end(), {"--threads", "4", "--out", b.string()});
  REQUIRE(Cli(run_a).code == 0);
  REQUIRE(Cli(run_b).code == 0);
  for (const char* f : {"report.json", "profile.json", "trace.csv", "sample.csv"}) {
    CHECK(ReadTextFile(a / f) == ReadTextFile(b / f));
  }
  const fs::path c = TempDir("rep_c"), d = TempDir("rep_d");
  REQUIRE(Cli({"scenario", "example41", "--draws", "30000", "--threads", "1", "--out", c.string()}).code == 0);
  REQUIRE(Cli({"scenario", "example41", "--draws", "30000", "--threads", "3", "--out", d.string()}).code == 0);
  CHECK(ReadTextFile(c / "report.json") == ReadTextFile(d / "report.json"));
}

TEST_CASE("config files") {
  const fs::path dir = TempDir("config");
  fs::create_directories(dir);
  WriteFileAtomic(dir / "run.json",
                  R"({"command":"dynamics","game":")" + Fixture("game2x2.json") +
                      R"(","epsilon":0.1,"seed":3,"mode":"rational"})");
  const auto r = Cli({"dynamics", "--config", (dir / "run.json").string()});
  CHECK(r.code == 0);
  CHECK(r.out == "steps 1\nterminated true\npotential 1\n");
  // Command-line flags override the file.
  const auto o = Cli({"dynamics", "--config", (dir / "run.json").string(), "--epsilon", "0.9"});
  CHECK(o.out == "steps 0\nterminated true\npotential 1/3\n");

  WriteFileAtomic(dir / "wrong.json", R"({"command":"ucb"})");
  CHECK(Cli({"dynamics", "--config", (dir / "wrong.json").string()}).code == cli::kExitConfig);
  WriteFileAtomic(dir / "unknown.json", R"({"colour":"red"})");
  CHECK(Cli({"sample-size", "--config", (dir / "unknown.json").string()}).code == cli::kExitConfig);
}

TEST_CASE("exit codes") {
  CHECK(Cli({}).code == cli::kExitConfig);
  CHECK(Cli({"sample-size", "--delta", "0.5"}).code == cli::kExitConfig);
  CHECK(Cli({"sample-size", "--epsilon", "2", "--delta", "0.5"}).code == cli::kExitConfig);
  CHECK(Cli({"sample-size", "--epsilon", "abc", "--delta", "0.5"}).code == cli::kExitConfig);
  CHECK(Cli({"ucb", "--epsilon", "0.5", "--m", "10", "--mode", "fuzzy"}).code == cli::kExitConfig);
  CHECK(Cli({"dynamics", "--game", "/nonexistent.json", "--epsilon", "0.1"}).code ==
        cli::kExitInput);
  CHECK(Cli({"pne-enumerate", "--game", Fixture("game2x2.json"), "--budget", "3"}).code ==
        cli::kExitResource);

  const fs::path dir = TempDir("codes");
  fs::create_directories(dir);
  WriteFileAtomic(dir / "wide.csv", "x1,x2,x3,x4,y,t\n1,2,3,4,0,1\n");
  WriteFileAtomic(dir / "wide.json", R"({"kind":"linear","n":4})");
  CHECK(Cli({"restriction-count", "--sample", (dir / "wide.csv").string(), "--class",
             (dir / "wide.json").string()})
            .code == cli::kExitUnsupported);
  const auto bad = Cli({"dynamics", "--game", Fixture("game2x2.json"), "--epsilon", "0.1",
                        "--oracles", "blr,finite"});
  CHECK(bad.code == cli::kExitConfig);
  CHECK(bad.err.rfind("error: ", 0) == 0);
  CHECK(bad.err.find('\n') == bad.err.size() - 1);
  CHECK(Cli({"--help"}).code == 0);
}

}  // namespace
}  // namespace predgame
