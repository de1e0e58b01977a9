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

#include "cli.h"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <new>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "predgame/distribution.h"
#include "predgame/dynamics.h"
#include "predgame/error.h"
#include "predgame/io.h"
#include "predgame/linear_oracle.h"
#include "predgame/model.h"
#include "predgame/monte_carlo.h"
#include "predgame/numeric.h"
#include "predgame/pac.h"
#include "predgame/payoff.h"
#include "predgame/random.h"
#include "predgame/scenarios.h"

namespace predgame::cli {

namespace {

namespace fs = std::filesystem;

struct ParamSpec {
  ParamSpec(std::string name, std::string help, std::string fallback = "",
            bool is_path = false, bool is_flag = false, bool positional = false)
      : name(std::move(name)), help(std::move(help)), fallback(std::move(fallback)),
        is_path(is_path), is_flag(is_flag), positional(positional) {}

  std::string name;
  std::string help;
  std::string fallback;  // empty: no default
  bool is_path;
  bool is_flag;
  bool positional;
};

struct Context;
using Handler = std::function<int(Context&)>;

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;
  Handler run;
};

// Resolved parameter set. Values from the command line are strings, values
// from a config file keep their JSON type.
class Params {
 public:
  explicit Params(Json values) : values_(std::move(values)) {}

  bool Has(const std::string& key) const { return values_.contains(key); }

  std::string Str(const std::string& key) const {
    if (!Has(key)) ThrowConfig("missing required parameter '" + key + "'");
    const Json& v = values_.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    ThrowConfig("parameter '" + key + "' must be a scalar");
  }

  double Double(const std::string& key) const {
    const std::string s = Str(key);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      ThrowConfig("parameter '" + key + "' is not a number: '" + s + "'");
    }
    return v;
  }

  std::uint64_t U64(const std::string& key) const {
    const std::string s = Str(key);
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      ThrowConfig("parameter '" + key + "' is not a nonnegative integer: '" + s + "'");
    }
    return v;
  }

  std::size_t Size(const std::string& key) const {
    return static_cast<std::size_t>(U64(key));
  }

  bool Bool(const std::string& key) const {
    if (!Has(key)) return false;
    const std::string s = Str(key);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    ThrowConfig("parameter '" + key + "' is not a boolean: '" + s + "'");
  }

  template <typename Scalar>
  Scalar Number(const std::string& key) const {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      return ParseExactRational(Str(key));
    } else {
      return Double(key);
    }
  }

  const Json& json() const { return values_; }

 private:
  Json values_;
};

struct Context {
  std::string command;
  Params params;
  ArithmeticMode mode = ArithmeticMode::kFloating;
  std::uint64_t seed = 0;
  std::optional<fs::path> out_dir;
  std::ostream& out;
};

Json Report(const Context& c, Json result) {
  Json report;
  report["command"] = c.command;
  report["config"] = c.params.json();
  report["result"] = std::move(result);
  return report;
}

std::string CsvConfigLine(const Context& c) {
  return "# config " + c.params.json().dump() + "\n";
}

void WriteOutputs(const Context& c,
                  const std::vector<std::pair<std::string, std::string>>& files) {
  if (!c.out_dir) return;
  std::error_code ec;
  fs::create_directories(*c.out_dir, ec);
  if (ec) ThrowInput("cannot create output directory " + c.out_dir->string());
  for (const auto& [name, content] : files) WriteFileAtomic(*c.out_dir / name, content);
}

std::string JsonText(const Json& j) { return j.dump(2) + "\n"; }

template <typename Scalar>
Json ScalarList(const std::vector<Scalar>& values) {
  Json out = Json::array();
  for (const Scalar& v : values) out.push_back(FormatScalar(v));
  return out;
}

std::vector<BetterResponseOracle> ResolveOracles(const Context& c,
                                                 const EmpiricalGame& game) {
  if (!c.params.Has("oracles")) return DefaultOracles(game);
  std::vector<BetterResponseOracle> out;
  std::stringstream ss(c.params.Str("oracles"));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(ParseOracle(item));
  CheckOracles(game, out);
  return out;
}

StrategyProfile ResolveProfile(const Context& c, const GameFile& gf) {
  if (c.params.Has("profile")) {
    return ProfileFromJson(ReadJsonFile(c.params.Str("profile")));
  }
  return gf.initial ? *gf.initial : gf.game.DefaultProfile();
}

DynamicsOptions OptionsFor(const Context& c) {
  DynamicsOptions options;
  options.linear.mode = c.mode;
  return options;
}

template <typename Scalar>
Json IndexList(const IndexProfile& idx) {
  Json out = Json::array();
  for (std::size_t v : idx) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------

BoundInputs ReadBoundInputs(const Context& c, bool with_m) {
  BoundInputs in;
  in.epsilon = c.params.Double("epsilon");
  in.delta = c.params.Has("delta") ? c.params.Double("delta") : 0.5;
  in.d = c.params.Size("d");
  in.players = c.params.Size("players");
  if (with_m) in.m = c.params.Size("m");
  return in;
}

int CmdSampleSize(Context& c) {
  const BoundInputs in = ReadBoundInputs(c, false);
  const std::size_t m = RequiredSampleSize(in);
  Json r;
  r["m"] = m;
  r["threshold"] = FormatDouble(SampleSizeThreshold(in));
  c.out << m << "\n";
  WriteOutputs(c, {{"report.json", JsonText(Report(c, r))}});
  return kExitOk;
}

int CmdUcb(Context& c) {
  const BoundInputs in = ReadBoundInputs(c, true);
  const double bound = UniformConvergenceBound(in);
  Json r;
  r["bound"] = FormatDouble(bound);
  r["log_bound"] = FormatDouble(LogUniformConvergenceBound(in));
  c.out << FormatDouble(bound) << "\n";
  WriteOutputs(c, {{"report.json", JsonText(Report(c, r))}});
  return kExitOk;
}

template <typename Scalar>
int CmdDynamics(Context& c) {
  const GameFile gf = ReadGameFile(c.params.Str("game"));
  const EmpiricalGame& game = gf.game;
  const StrategyProfile initial = ResolveProfile(c, gf);
  const auto oracles = ResolveOracles(c, game);
  const Scalar eps = c.params.Number<Scalar>("epsilon");

  ScheduleSpec schedule;
  const std::string kind = c.params.Str("schedule");
  if (kind == "random") {
    schedule = ScheduleSpec::RandomPlayer(c.seed);
  } else if (kind != "round-robin") {
    ThrowConfig("unknown schedule '" + kind + "' (expected round-robin or random)");
  }
  if (c.params.Has("max-iterations")) schedule.max_iterations = c.params.Size("max-iterations");

  const auto result = RunDynamics<Scalar>(game, initial, eps, oracles, schedule, OptionsFor(c));
  const Scalar final_potential = Potential<Scalar>(game, result.profile);

  Json r;
  r["steps"] = result.trace.steps.size();
  r["iterations"] = result.trace.iterations;
  r["terminated"] = result.trace.terminated;
  r["step_bound"] = DynamicsStepBound(game.num_players(), ScalarTraits<Scalar>::ToDouble(eps));
  r["initial_potential"] = FormatScalar(result.trace.initial_potential);
  r["final_potential"] = FormatScalar(final_potential);
  r["payoffs"] = ScalarList(EmpiricalPayoffs<Scalar>(game, result.profile));
  r["profile"] = ProfileToJson(result.profile);

  c.out << "steps " << result.trace.steps.size() << "\n"
        << "terminated " << (result.trace.terminated ? "true" : "false") << "\n"
        << "potential " << FormatScalar(final_potential) << "\n";
  WriteOutputs(c, {{"report.json", JsonText(Report(c, r))},
                   {"profile.json", JsonText(ProfileToJson(result.profile))},
                   {"trace.csv", CsvConfigLine(c) + TraceToCsv(result.trace)}});
  return kExitOk;
}

template <typename Scalar>
int CmdPneEnumerate(Context& c) {
  const GameFile gf = ReadGameFile(c.params.Str("game"));
  const EmpiricalGame& game = gf.game;
  const std::size_t budget = c.params.Size("budget");
  const std::size_t total = CountProfiles(game, budget);
  const auto pne = EnumeratePureNash<Scalar>(game, budget);

  Json list = Json::array();
  c.out << "equilibria " << pne.size() << " of " << total << "\n";
  for (const IndexProfile& idx : pne) {
    const StrategyProfile p = game.ProfileFromIndices(idx);
    Json e;
    e["indices"] = IndexList<Scalar>(idx);
    e["potential"] = FormatScalar(Potential<Scalar>(game, p));
    e["payoffs"] = ScalarList(EmpiricalPayoffs<Scalar>(game, p));
    list.push_back(std::move(e));
    for (std::size_t k = 0; k < idx.size(); ++k) c.out << (k ? " " : "") << idx[k];
    c.out << "\n";
  }
  Json r;
  r["profiles"] = total;
  r["equilibria"] = std::move(list);
  WriteOutputs(c, {{"report.json", JsonText(Report(c, r))}});
  return kExitOk;
}

template <typename Scalar>
int CmdVerify(Context& c) {
  const GameFile gf = ReadGameFile(c.params.Str("game"));
  const StrategyProfile profile = ResolveProfile(c, gf);
  const auto oracles = ResolveOracles(c, gf.game);
  const Scalar eps = c.params.Number<Scalar>("epsilon");
  const auto v = VerifyEpsilonPne<Scalar>(gf.game, profile, eps, oracles, OptionsFor(c));

  Json r;
  r["holds"] = v.holds;
  r["advisory"] = v.advisory;
  r["best_gains"] = ScalarList(v.best_gains);
  if (!v.holds) {
    r["player"] = *v.player;
    r["gain"] = FormatScalar(v.gain);
    r["witness"] = HypothesisToJson(*v.witness);
    c.out << "violated player " << *v.player << " gain " << FormatScalar(v.gain) << "\n";
  } else {
    c.out << "holds" << (v.advisory ? " (advisory)" : "") << "\n";
  }
  WriteOutputs(c, {{"report.json", JsonText(Report(c, r))}});
  return v.holds ? kExitOk : kExitViolated;
}

int CmdBlr(Context& c) {
  const Sample sample = ReadSampleCsv(c.params.Str("sample"));
  StrategyProfile opponents;
  if (c.params.Has("opponents")) {
    opponents = ProfileFromJson(ReadJsonFile(c.params.Str("opponents")));
  }
  LinearOracleOptions options;
  options.mode = c.mode;
  const LinearResponse br =
      BestLinearResponse(sample, opponents.strategies, c.params.Bool("bias"), options);
  const std::string payoff = c.mode == ArithmeticMode::kRational
                                 ? FormatScalar(br.payoff_exact)
                                 : FormatDouble(br.payoff);
  Json r;
  r["hypothesis"] = HypothesisToJson(br.hypothesis);
  r["region"] = RegionString(br.region);
  r["payoff"] = payoff;
  r["weights"] = ScalarList(br.weights);

  const auto& coeffs = std::get<LinearForm>(br.hypothesis.form()).coefficients;
  c.out << "payoff " << payoff << "\ncoefficients";
  for (double v : coeffs) c.out << " " << FormatDouble(v);
  c.out << "\nregion " << RegionString(br.region) << "\n";
  WriteOutputs(c, {{"report.json", JsonText(Report(c, r))},
                   {"hypothesis.json", JsonText(r["hypothesis"])}});
  return kExitOk;
}

template <typename Scalar>
int CmdLearn(Context& c) {
  const Json problem = ReadJsonFile(c.params.Str("problem"));
  if (!problem.is_object() || !problem.contains("distribution") || !problem.contains("classes")) {
    ThrowInput("learn problem needs \"distribution\" and \"classes\"");
  }
  const DistributionSpec dist = DistributionFromJson(problem["distribution"]);
  std::vector<HypothesisClass> classes;
  for (const Json& cls : problem["classes"]) classes.push_back(ClassFromJson(cls));
  std::vector<BetterResponseOracle> oracles;
  if (problem.contains("oracles")) {
    for (const Json& o : problem["oracles"]) oracles.push_back(ParseOracle(o.get<std::string>()));
  }
  std::optional<std::size_t> cap;
  if (c.params.Has("m-cap")) cap = c.params.Size("m-cap");

  const Scalar eps = c.params.Number<Scalar>("epsilon");
  const auto res = LearnEquilibrium<Scalar>(dist, classes, eps, c.params.Double("delta"),
                                            oracles, c.seed, cap, OptionsFor(c));
  const EmpiricalGame game(res.sample, classes);
  const Scalar half = eps / 2;
  const auto verdict = VerifyEpsilonPne<Scalar>(
      game, res.profile, half, oracles.empty() ? DefaultOracles(game) : oracles, OptionsFor(c));

  Json r;
  r["m_required"] = res.m_required;
  r["m_used"] = res.m_used;
  r["capped"] = res.capped;
  r["population_guarantee"] = !res.capped;
  r["d"] = res.d;
  r["steps"] = res.trace.steps.size();
  r["empirical_half_epsilon_pne"] = verdict.holds;
  r["payoffs"] = ScalarList(EmpiricalPayoffs<Scalar>(game, res.profile));
  r["potential"] = FormatScalar(Potential<Scalar>(game, res.profile));
  r["profile"] = ProfileToJson(res.profile);

  c.out << "m_required " << res.m_required << "\n"
        << "m_used " << res.m_used << (res.capped ? " (capped)" : "") << "\n"
        << "steps " << res.trace.steps.size() << "\n";
  WriteOutputs(c, {{"report.json", JsonText(Report(c, r))},
                   {"profile.json", JsonText(ProfileToJson(res.profile))},
                   {"trace.csv", CsvConfigLine(c) + TraceToCsv(res.trace)},
                   {"sample.csv", CsvConfigLine(c) + SampleToCsv(res.sample)}});
  return kExitOk;
}

template <typename Scalar>
int CmdExample41(Context& c) {
  const std::size_t m = c.params.Has("m") ? c.params.Size("m") : 20;
  const std::size_t draws = c.params.Size("draws");
  const Sample sample = DrawSample(Example41Distribution(), m, c.seed);
  const Example41Scenario sc = MakeExample41(sample);
  const EmpiricalGame& game = sc.game;

  const auto pne = EnumeratePureNash<Scalar>(game);
  const std::size_t total = CountProfiles(game, kDefaultProfileBudget);
  bool agree = true;
  Json table = Json::array();
  const auto oracles = DefaultOracles(game);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t d = 0; d < 2; ++d) {
        const IndexProfile idx{a, b, d};
        const auto v = VerifyEpsilonPne<Scalar>(game, game.ProfileFromIndices(idx), Scalar(0),
                                                oracles, OptionsFor(c));
        const bool listed = std::find(pne.begin(), pne.end(), idx) != pne.end();
        agree = agree && (listed == v.holds);
        Json row;
        row["indices"] = IndexList<Scalar>(idx);
        row["pne"] = listed;
        row["verify_holds"] = v.holds;
        table.push_back(std::move(row));
      }
    }
  }
  const auto profile_verdict =
      VerifyEpsilonPne<Scalar>(game, sc.profile, Scalar(0), oracles, OptionsFor(c));
  const MonteCarloEstimate mc =
      MonteCarloPayoffs(sc.population, sc.profile, draws, SubstreamSeed(c.seed, 1));

  Json r;
  r["m"] = m;
  r["empirical_payoffs"] = ScalarList(EmpiricalPayoffs<Scalar>(game, sc.profile));
  r["profile_is_pne"] = profile_verdict.holds;
  r["profiles"] = total;
  r["pne_count"] = pne.size();
  r["enumeration_agrees_with_verify"] = agree;
  r["profile_table"] = std::move(table);
  r["population_payoffs_mc"] = ScalarList(mc.mean);
  r["population_payoffs_se"] = ScalarList(mc.std_error);
  r["population_payoffs_closed_form"] = Json::array({"1/3", "1/3", "1/3"});
  r["draws"] = mc.draws;

  c.out << "empirical_payoffs";
  for (const auto& v : r["empirical_payoffs"]) c.out << " " << v.get<std::string>();
  c.out << "\nprofile_is_pne " << (profile_verdict.holds ? "true" : "false") << "\n"
        << "pne " << pne.size() << " of " << total << "\n"
        << "population_payoffs_mc";
  for (double v : mc.mean) c.out << " " << FormatDouble(v);
  c.out << "\n";
  WriteOutputs(c, {{"report.json", JsonText(Report(c, r))},
                   {"sample.csv", CsvConfigLine(c) + SampleToCsv(sample)}});
  return kExitOk;
}

int CmdClaimA6(Context& c) {
  const std::size_t m = c.params.Has("m") ? c.params.Size("m") : 15;
  const std::size_t trials = c.params.Size("trials");
  const double estimate = SimulateClaimA6(trials, m, c.seed);
  const Rational exact = ClaimA6ExactProbability(m);
  Json r;
  r["m"] = m;
  r["trials"] = trials;
  r["estimate"] = FormatDouble(estimate);
  r["exact"] = FormatScalar(exact);
  r["exact_decimal"] = FormatDouble(exact.get_d());
  c.out << "estimate " << FormatDouble(estimate) << "\n"
        << "exact " << FormatScalar(exact) << "\n";
  WriteOutputs(c, {{"report.json", JsonText(Report(c, r))}});
  return kExitOk;
}

int CmdScenario(Context& c) {
  const std::string name = c.params.Str("name");
  if (name == "example41") {
    return c.mode == ArithmeticMode::kRational ? CmdExample41<Rational>(c)
                                               : CmdExample41<double>(c);
  }
  if (name == "claim-a6") return CmdClaimA6(c);
  ThrowConfig("unknown scenario '" + name + "' (expected example41 or claim-a6)");
}

int CmdRestrictionCount(Context& c) {
  const Sample sample = ReadSampleCsv(c.params.Str("sample"));
  const HypothesisClass cls = ClassFromJson(ReadJsonFile(c.params.Str("class")));
  const std::size_t count = RestrictionCount(cls, sample);
  Json r;
  r["count"] = count;
  r["m"] = sample.size();
  if (cls.declared_pdim()) {
    const double m = static_cast<double>(sample.size());
    r["log_growth_bound"] = FormatDouble(10.0 * *cls.declared_pdim() * std::log(std::exp(1.0) * m));
  }
  c.out << count << "\n";
  WriteOutputs(c, {{"report.json", JsonText(Report(c, r))}});
  return kExitOk;
}

template <template <typename> class F>
Handler ByMode() {
  return [](Context& c) {
    return c.mode == ArithmeticMode::kRational ? F<Rational>::Run(c) : F<double>::Run(c);
  };
}

template <typename S> struct DynamicsFn { static int Run(Context& c) { return CmdDynamics<S>(c); } };
template <typename S> struct PneFn { static int Run(Context& c) { return CmdPneEnumerate<S>(c); } };
template <typename S> struct VerifyFn { static int Run(Context& c) { return CmdVerify<S>(c); } };
template <typename S> struct LearnFn { static int Run(Context& c) { return CmdLearn<S>(c); } };

std::vector<CommandSpec> Commands() {
  const ParamSpec eps{"epsilon", "approximation level"};
  const ParamSpec game{"game", "game descriptor (JSON)", "", true};
  const ParamSpec oracles{"oracles", "comma-separated oracle per player (finite, blr, custom:ID)"};
  const ParamSpec profile{"profile", "profile descriptor (JSON)", "", true};
  return {
      {"sample-size", "minimal sample size m(eps, delta)",
       {eps, {"delta", "failure probability"}, {"d", "sum of pseudo-dimensions", "1"},
        {"players", "number of players N", "1"}},
       CmdSampleSize},
      {"ucb", "uniform convergence bound at sample size m",
       {eps, {"d", "sum of pseudo-dimensions", "1"}, {"players", "number of players N", "1"},
        {"m", "sample size"}},
       CmdUcb},
      {"dynamics", "run epsilon-better-response dynamics",
       {game, eps, profile, oracles,
        {"schedule", "round-robin or random", "round-robin"},
        {"max-iterations", "stop after this many improvement steps"}},
       ByMode<DynamicsFn>()},
      {"pne-enumerate", "list every exact pure Nash equilibrium of a finite game",
       {game, {"budget", "maximum number of profiles", "1000000"}},
       ByMode<PneFn>()},
      {"verify", "check whether a profile is an epsilon-PNE",
       {game, eps, profile, oracles}, ByMode<VerifyFn>()},
      {"blr", "best linear response on a sample",
       {{"sample", "sample CSV", "", true},
        {"opponents", "opponents' profile descriptor (JSON)", "", true},
        {"bias", "augment features with an intercept", "", false, true}},
       CmdBlr},
      {"learn", "draw a sample and learn an approximate equilibrium",
       {{"problem", "distribution and classes (JSON)", "", true}, eps,
        {"delta", "failure probability"}, {"m-cap", "upper limit on the sample size"}},
       ByMode<LearnFn>()},
      {"scenario", "packaged scenarios: example41, claim-a6",
       {{"name", "scenario name", "", false, false, true},
        {"m", "sample size"},
        {"trials", "claim-a6 trial count", "100000"},
        {"draws", "example41 Monte Carlo draws", "1000000"}},
       CmdScenario},
      {"restriction-count", "distinct satisfaction patterns of a class on a sample",
       {{"sample", "sample CSV", "", true}, {"class", "class descriptor (JSON)", "", true}},
       CmdRestrictionCount},
  };
}

int ExitFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return kExitConfig;
    case ErrorKind::kInput: return kExitInput;
    case ErrorKind::kResource: return kExitResource;
    case ErrorKind::kUnsupported: return kExitUnsupported;
    case ErrorKind::kInternal: return kExitInternal;
  }
  return kExitInternal;
}

std::string ResolvePath(const std::string& value, const fs::path& base) {
  const fs::path p(value);
  return (p.is_relative() && !base.empty() ? base / p : p).string();
}

int Dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const std::vector<CommandSpec> commands = Commands();

  CLI::App app{"Competing prediction algorithms: empirical games, dynamics and bounds",
               "predgame"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, seed_text, mode_text = "floating", out_text, threads_text;
  app.add_option("--config", config_path, "JSON file with parameters for the command");
  app.add_option("--seed", seed_text, "random seed (default 0)");
  app.add_option("--mode", mode_text, "arithmetic mode")
      ->check(CLI::IsMember({"rational", "floating"}));
  app.add_option("--out", out_text, "directory for output artifacts");
  app.add_option("--threads", threads_text, "worker threads for parallel kernels");

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, CLI::App*> subs;
  for (const CommandSpec& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    subs[cmd.name] = sub;
    for (const ParamSpec& p : cmd.params) {
      if (p.is_flag) {
        sub->add_flag("--" + p.name, flags[cmd.name][p.name], p.help);
      } else {
        sub->add_option(p.positional ? p.name : "--" + p.name, values[cmd.name][p.name], p.help);
      }
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << ErrorKindName(ErrorKind::kConfig) << ": " << e.what() << "\n";
    return kExitConfig;
  }

  const CommandSpec* cmd = nullptr;
  for (const CommandSpec& c : commands) {
    if (subs[c.name]->parsed()) cmd = &c;
  }
  if (cmd == nullptr) ThrowInternal("no subcommand selected");

  // Config file first, then command-line values on top.
  Json from_file = Json::object();
  fs::path config_dir;
  if (!config_path.empty()) {
    from_file = ReadJsonFile(config_path);
    if (!from_file.is_object()) ThrowConfig("config file must hold a JSON object");
    config_dir = fs::path(config_path).parent_path();
    if (from_file.contains("command") && from_file["command"] != cmd->name) {
      ThrowConfig("config file is for command '" +
                  from_file["command"].get<std::string>() + "'");
    }
  }
  static const std::vector<std::string> kGlobal = {"command", "seed", "mode", "out", "threads"};
  for (const auto& [key, value] : from_file.items()) {
    const bool known =
        std::find(kGlobal.begin(), kGlobal.end(), key) != kGlobal.end() ||
        std::any_of(cmd->params.begin(), cmd->params.end(),
                    [&](const ParamSpec& p) { return p.name == key; });
    if (!known) ThrowConfig("unknown config key '" + key + "' for " + cmd->name);
  }
  auto global = [&](const std::string& key, const std::string& cli_value,
                    bool cli_set) -> std::optional<std::string> {
    if (cli_set) return cli_value;
    if (from_file.contains(key)) return Params(from_file).Str(key);
    return std::nullopt;
  };

  Json resolved = Json::object();
  for (const ParamSpec& p : cmd->params) {
    CLI::App* sub = subs[cmd->name];
    const std::string flag = p.positional ? p.name : "--" + p.name;
    if (sub->count(flag) > 0) {
      resolved[p.name] = p.is_flag ? Json(flags[cmd->name][p.name])
                                   : Json(values[cmd->name][p.name]);
    } else if (from_file.contains(p.name)) {
      Json v = from_file[p.name];
      if (p.is_path && v.is_string()) v = ResolvePath(v.get<std::string>(), config_dir);
      resolved[p.name] = v;
    } else if (!p.fallback.empty()) {
      resolved[p.name] = p.fallback;
    }
  }

  const auto seed = global("seed", seed_text, app.count("--seed") > 0);
  const auto mode = global("mode", mode_text, app.count("--mode") > 0);
  const auto out_dir = global("out", out_text, app.count("--out") > 0);
  const auto threads = global("threads", threads_text, app.count("--threads") > 0);
  resolved["seed"] = seed.value_or("0");
  resolved["mode"] = mode.value_or("floating");

  Context ctx{cmd->name, Params(resolved), ParseArithmeticMode(resolved["mode"].get<std::string>()),
              0, std::nullopt, out};
  ctx.seed = ctx.params.U64("seed");
  if (out_dir) ctx.out_dir = fs::path(*out_dir);
  if (threads) {
    const std::size_t n = Params(Json{{"threads", *threads}}).Size("threads");
    if (n < 1) ThrowConfig("--threads must be >= 1");
    omp_set_num_threads(static_cast<int>(n));
  }
  return cmd->run(ctx);
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return Dispatch(args, out, err);
  } catch (const Error& e) {
    err << "error: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return ExitFor(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << ErrorKindName(ErrorKind::kInput) << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << ErrorKindName(ErrorKind::kInput) << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::bad_alloc&) {
    err << "error: " << ErrorKindName(ErrorKind::kResource) << ": out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << ErrorKindName(ErrorKind::kInternal) << ": " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace predgame::cli
