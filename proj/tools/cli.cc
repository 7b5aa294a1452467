// Copyright 2026 The mip-lab Authors
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

#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "mip/io.h"

namespace mip::cli {
namespace {

// Bad flags, unreadable inputs and malformed files: exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string contents;
  std::string default_name;
  int code = kExitOk;
};

std::vector<long long> ParseList(const std::string& text, const std::string& flag) {
  std::vector<long long> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      throw ConfigError(flag + ": '" + item + "' is not an integer");
    }
    out.push_back(v);
  }
  return out;
}

Json LoadJson(const std::string& path, std::string* text_out) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (text_out) *text_out = text;
  return ParseJsonText(text, path);
}

// Loading errors other than syntax errors still count as bad input.
template <typename F>
auto Loading(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw ConfigError(e.what());
  }
}

std::string ConfigHash(const Json& run_config) { return Sha256Hex(run_config.dump()); }

Json Header(const char* command) {
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  out["command"] = command;
  return out;
}

Output ErrorRecord(Json record, const Error& e, const Json& run_config,
                   const std::string& name) {
  Json err = Json::object();
  err["code"] = std::string(ErrorCodeName(e.code()));
  err["message"] = e.detail();
  record["error"] = std::move(err);
  record["config_hash"] = ConfigHash(run_config);
  record["run_config"] = run_config;
  return {record.dump(2) + "\n", name, kExitFailure};
}

std::string CsvPreamble(const Json& run_config, const std::string& input_hash) {
  std::string out = "# run_config=" + run_config.dump() + "\n";
  if (!input_hash.empty()) out += "# input_sha256=" + input_hash + "\n";
  out += "# config_hash=" + ConfigHash(run_config) + "\n";
  return out;
}

// ---- measure

struct MeasureArgs {
  std::string mi;
  std::string bmi;
  std::string joint;
};

Output RunMeasure(const MeasureArgs& a) {
  if (a.mi.empty() == a.bmi.empty()) {
    throw ConfigError("exactly one of --mi or --bmi is required");
  }
  const std::string name = a.mi.empty() ? a.bmi : a.mi;
  const auto measure = ParseMeasure(name);
  const bool want_f = !a.mi.empty();
  if (!measure || std::holds_alternative<ConvexGenerator>(*measure) != want_f) {
    throw ConfigError("unknown " + std::string(want_f ? "--mi" : "--bmi") +
                      " measure '" + name + "'");
  }
  Json rc = Json::object();
  rc["command"] = "measure";
  rc[want_f ? "mi" : "bmi"] = name;
  rc["joint"] = a.joint;

  std::string text;
  const Json doc = LoadJson(a.joint, &text);
  const JointDistribution joint = Loading([&] { return JointFromJson(doc); });
  const bool nats = std::holds_alternative<ScoringRule>(*measure)
                        ? std::get<ScoringRule>(*measure) == ScoringRule::kLog
                        : std::get<ConvexGenerator>(*measure) == kKL;

  Json rec = Header("measure");
  rec["measure"] = MeasureName(*measure);
  rec["quantity"] = joint.rank() == 2 ? "mutual_information"
                                      : "conditional_mutual_information";
  rec["input_sha256"] = Sha256Hex(text);
  try {
    const double v = joint.rank() == 2 ? MutualInformation(joint, *measure)
                                       : ConditionalMI(joint, *measure);
    rec["value"] = NumberJson(v);
  } catch (const Error& e) {
    return ErrorRecord(std::move(rec), e, rc, "measure.json");
  }
  rec["units"] = nats ? "nats" : "dimensionless";
  rec["config_hash"] = ConfigHash(rc);
  rec["run_config"] = rc;
  return {rec.dump(2) + "\n", "measure.json", kExitOk};
}

// ---- mechanism

struct MechanismArgs {
  std::string scenario;
  std::string mechanism;
  std::string measure;
  std::string mode = "exact";
  long long questions = 1000;
  std::uint64_t seed = 1;
  int d = 1;
  double alpha = 2.0;
  std::string pairing = "all-pairs";
  std::optional<double> smoothing;
  std::string format = "json";
};

std::string DefaultMeasure(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kFmi:
    case MechanismKind::kBts:
      return "kl";
    case MechanismKind::kBmi:
    case MechanismKind::kSppm:
      return "log";
    case MechanismKind::kMd:
    case MechanismKind::kCa:
      return "";
  }
  return "";
}

// Pr[report of agent j | own signal of agent i], the optimal prediction.
Distribution OptimalPrediction(const Scenario& sc, int i, int signal) {
  const int n = sc.agents();
  const int j = (i + 1) % n;
  const int m = sc.alphabet_size();
  const JointDistribution joint =
      ReportJoint(sc.PriorFor(i), i, j, Strategy::Truth(m), sc.strategies[j],
                  nullptr, sc.EffortFor(j));
  std::vector<double> row(m, 0.0);
  std::vector<double> col(m, 0.0);
  double mass = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) col[b] += joint.at(a, b);
  }
  for (int b = 0; b < m; ++b) {
    row[b] = joint.at(signal, b);
    mass += row[b];
  }
  return MakeDistribution(mass > 0.0 ? row : col);
}

PaymentReport EmpiricalPayments(const ScenarioFile& file, MechanismKind kind,
                                const std::optional<Measure>& measure,
                                const MechanismArgs& a) {
  const Scenario& sc = file.scenario;
  Rng master(RngSeed{a.seed});
  const RngSeed report_seed = master.Fork();
  PairingOptions pairing;
  pairing.mode = a.pairing == "seeded-random" ? Pairing::kSeededRandomReference
                                              : Pairing::kAllPairsAverage;
  pairing.seed = master.Fork();
  const RngSeed mechanism_seed = master.Fork();
  const int questions = static_cast<int>(a.questions);

  switch (kind) {
    case MechanismKind::kFmi:
      return FmiMechanismPayments(GenerateReports(sc, questions, report_seed),
                                  std::get<ConvexGenerator>(*measure), pairing);
    case MechanismKind::kBmi:
      return BmiMechanismPayments(GenerateReports(sc, questions, report_seed),
                                  std::get<ScoringRule>(*measure), pairing);
    case MechanismKind::kMd:
      return MdPayments(GenerateReports(sc, questions, report_seed), a.d,
                        mechanism_seed, pairing);
    case MechanismKind::kCa:
      return CaPayments(GenerateReports(sc, questions, report_seed), a.d,
                        mechanism_seed, pairing);
    case MechanismKind::kSppm: {
      const ReportMatrix reports = GenerateReports(sc, questions, report_seed);
      const int n = sc.agents();
      PaymentReport total;
      total.mode = PaymentReport::Mode::kEmpirical;
      total.seed = RngSeed{a.seed};
      total.agents.assign(n, AgentPayment{});
      Rng per_question(pairing.seed);
      std::vector<int> signals(n);
      for (int q = 0; q < questions; ++q) {
        for (int i = 0; i < n; ++i) signals[i] = reports.at(i, q);
        PairingOptions p = pairing;
        p.seed = per_question.Fork();
        const PaymentReport r =
            SppmPayments(signals, sc.PriorFor(0), std::get<ScoringRule>(*measure), p);
        for (int i = 0; i < n; ++i) total.agents[i].payment += r.agents[i].payment;
        for (const auto& w : r.warnings) {
          if (std::find(total.warnings.begin(), total.warnings.end(), w) ==
              total.warnings.end()) {
            total.warnings.push_back(w);
          }
        }
      }
      for (auto& agent : total.agents) {
        agent.payment /= questions;
        agent.utility = agent.payment;
      }
      return total;
    }
    case MechanismKind::kBts: {
      std::vector<BtsReport> profile;
      if (file.bts_profile) {
        profile = *file.bts_profile;
      } else {
        const ReportMatrix reports = GenerateReports(sc, 1, report_seed);
        // Predictions condition on the private signal, which the generated
        // matrix does not keep; regenerate signals from the same seed.
        Rng rng(report_seed);
        const std::vector<int> signals =
            sc.PriorFor(0).SampleSignals(sc.agents(), rng);
        for (int i = 0; i < sc.agents(); ++i) {
          profile.push_back({reports.at(i, 0), OptimalPrediction(sc, i, signals[i])});
        }
      }
      BtsOptions options;
      options.alpha = a.alpha;
      options.pairing = pairing;
      options.smoothing = a.smoothing;
      return BtsPayments(profile, options);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unhandled mechanism");
}

Output RunMechanism(const MechanismArgs& a) {
  const auto kind = ParseMechanism(a.mechanism);
  if (!kind) throw ConfigError("unknown mechanism '" + a.mechanism + "'");
  const std::string measure_name = a.measure.empty() ? DefaultMeasure(*kind) : a.measure;
  std::optional<Measure> measure;
  if (!measure_name.empty()) {
    measure = ParseMeasure(measure_name);
    if (!measure) throw ConfigError("unknown measure '" + measure_name + "'");
    const bool is_f = std::holds_alternative<ConvexGenerator>(*measure);
    if ((*kind == MechanismKind::kFmi && !is_f) ||
        ((*kind == MechanismKind::kBmi || *kind == MechanismKind::kSppm) && is_f)) {
      throw ConfigError("measure '" + measure_name + "' does not fit mechanism '" +
                        a.mechanism + "'");
    }
    if (*kind == MechanismKind::kBts && !is_f &&
        std::get<ScoringRule>(*measure) == ScoringRule::kQuadratic) {
      throw ConfigError("bts takes an f-divergence or the log rule");
    }
  }
  if (a.questions < 1) throw ConfigError("--T must be at least 1");
  if (a.d < 1) throw ConfigError("--d must be at least 1");
  const bool empirical = a.mode == "empirical";

  Json rc = Json::object();
  rc["command"] = "mechanism";
  rc["scenario"] = a.scenario;
  rc["mechanism"] = a.mechanism;
  if (!a.measure.empty()) rc["measure"] = a.measure;
  rc["mode"] = a.mode;
  rc["T"] = a.questions;
  rc["seed"] = a.seed;
  rc["d"] = a.d;
  rc["alpha"] = a.alpha;
  rc["pairing"] = a.pairing;
  if (a.smoothing) rc["smoothing"] = *a.smoothing;
  rc["format"] = a.format;

  std::string text;
  const Json doc = LoadJson(a.scenario, &text);
  const ScenarioFile file = Loading([&] { return ScenarioFromJson(doc); });
  const std::string input_hash = Sha256Hex(text);
  const std::string name = "mechanism-" + a.mechanism + "." + a.format;

  Json rec = Header("mechanism");
  rec["mechanism"] = a.mechanism;
  rec["measure"] = measure_name.empty() ? "none" : measure_name;
  rec["mode"] = a.mode;
  rec["T"] = a.questions;
  rec["seed"] = a.seed;
  rec["input_sha256"] = input_hash;

  PaymentReport report;
  try {
    if (empirical) {
      report = EmpiricalPayments(file, *kind, measure, a);
    } else {
      ExactOptions options;
      options.alpha = a.alpha;
      report = ExactPayments(file.scenario, *kind,
                             measure ? *measure : Measure{kKL}, options);
    }
  } catch (const Error& e) {
    return ErrorRecord(std::move(rec), e, rc,
                       "mechanism-" + a.mechanism + ".json");
  }

  if (a.format == "csv") {
    return {CsvPreamble(rc, input_hash) + PaymentReportCsv(report), name, kExitOk};
  }
  rec["config_hash"] = ConfigHash(rc);
  rec["run_config"] = rc;
  rec["report"] = PaymentReportToJson(report);
  return {rec.dump(2) + "\n", name, kExitOk};
}

// ---- verify

struct VerifyArgs {
  std::string suite;
  int instances = 0;
  std::uint64_t seed = 1;
  std::string alphabets = "2,3,4";
  std::string agents = "2,3,6";
  double tol_equality = 1e-10;
  double tol_strictness = 1e-10;
  double ci_level = 0.95;
  std::string instance_seeds;
};

std::vector<int> IntList(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (long long v : ParseList(text, flag)) out.push_back(static_cast<int>(v));
  return out;
}

Output RunVerify(const VerifyArgs& a) {
  const auto suite = CanonicalSuiteId(a.suite);
  if (!suite) throw ConfigError("unknown suite '" + a.suite + "'");
  SuiteConfig config;
  config.suite = *suite;
  config.instances = a.instances == 0 ? DefaultInstances(*suite) : a.instances;
  config.seed = a.seed;
  config.alphabet_sizes = IntList(a.alphabets, "--alphabets");
  config.agent_counts = IntList(a.agents, "--agents");
  config.tolerances = {a.tol_equality, a.tol_strictness, a.ci_level};
  for (long long s : ParseList(a.instance_seeds, "--instance-seeds")) {
    config.instance_seeds.push_back(static_cast<std::uint64_t>(s));
  }
  Loading([&] {
    ValidateConfig(config);
    return 0;
  });

  Json rc = Json::object();
  rc["command"] = "verify";
  rc["suite"] = *suite;
  rc["instances"] = config.instances;
  rc["seed"] = a.seed;
  rc["alphabets"] = a.alphabets;
  rc["agents"] = a.agents;
  rc["tol-equality"] = a.tol_equality;
  rc["tol-strictness"] = a.tol_strictness;
  rc["ci-level"] = a.ci_level;
  if (!a.instance_seeds.empty()) rc["instance-seeds"] = a.instance_seeds;

  const SuiteVerdict verdict = RunSuite(config);
  Json rec = VerdictToJson(verdict);
  rec["config_hash"] = ConfigHash(rc);
  rec["run_config"] = rc;
  return {rec.dump(2) + "\n", "verdict-" + *suite + ".json",
          verdict.pass ? kExitOk : kExitFailure};
}

// ---- sweep

struct SweepArgs {
  std::string kind;
  std::string questions = "1000,10000,100000";
  std::string agents = "10,100,1000";
  int seeds = 20;
  std::uint64_t seed = 1;
  int jobs = 1;
  int samples = 50;
  double smoothing = 0.5;
};

Output RunSweep(const SweepArgs& a) {
  if (a.kind != "fmi-gap" && a.kind != "bts-gap") {
    throw ConfigError("unknown sweep '" + a.kind + "' (fmi-gap, bts-gap)");
  }
  if (a.seeds < 0 || a.jobs < 1 || a.samples < 1 || a.smoothing < 0.0) {
    throw ConfigError("--seeds, --jobs, --samples and --smoothing must be positive");
  }
  const bool fmi = a.kind == "fmi-gap";
  const auto grid = ParseList(fmi ? a.questions : a.agents, fmi ? "--T" : "--n");
  for (long long g : grid) {
    if (g < (fmi ? 1 : 3)) {
      throw ConfigError(fmi ? "--T entries must be >= 1" : "--n entries must be >= 3");
    }
  }
  // --jobs changes scheduling only, so it is left out of the embedded config.
  Json rc = Json::object();
  rc["command"] = "sweep";
  rc["kind"] = a.kind;
  if (fmi) {
    rc["T"] = a.questions;
  } else {
    rc["n"] = a.agents;
    rc["samples"] = a.samples;
    rc["smoothing"] = a.smoothing;
  }
  rc["seeds"] = a.seeds;
  rc["seed"] = a.seed;

  const auto rows = fmi ? FmiGapSweep(grid, a.seeds, a.seed, a.jobs)
                        : BtsGapSweep(grid, a.seeds, a.seed, a.jobs, a.samples,
                                      a.smoothing);
  return {CsvPreamble(rc, "") + SweepCsv(fmi ? "T" : "n", rows),
          "sweep-" + a.kind + ".csv", kExitOk};
}

// ---- rerun

std::string ArgValue(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return FormatDouble(v.get<double>());
  return v.dump();
}

std::vector<std::string> ArgsFromRunConfig(const Json& rc) {
  if (!rc.is_object() || !rc.contains("command") || !rc["command"].is_string()) {
    throw ConfigError("embedded run_config has no command");
  }
  const std::string command = rc["command"].get<std::string>();
  std::vector<std::string> args{command};
  const char* positional = command == "verify" ? "suite"
                           : command == "sweep" ? "kind"
                                                : nullptr;
  if (positional) {
    if (!rc.contains(positional)) throw ConfigError("embedded run_config is incomplete");
    args.push_back(ArgValue(rc[positional]));
  }
  for (const auto& [key, value] : rc.items()) {
    if (key == "command" || (positional && key == positional)) continue;
    args.push_back("--" + key);
    args.push_back(ArgValue(value));
  }
  return args;
}

struct Embedded {
  Json run_config;
  std::string input_hash;
};

Embedded ReadEmbedded(const std::string& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  Embedded out;
  if (text.rfind("#", 0) == 0) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line) && line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "run_config") out.run_config = ParseJsonText(value, path);
      if (key == "input_sha256") out.input_hash = value;
    }
  } else {
    const Json doc = ParseJsonText(text, path);
    if (doc.is_object() && doc.contains("run_config")) out.run_config = doc["run_config"];
    if (doc.is_object() && doc.contains("input_sha256") &&
        doc["input_sha256"].is_string()) {
      out.input_hash = doc["input_sha256"].get<std::string>();
    }
  }
  if (out.run_config.is_null()) throw ConfigError(path + ": no embedded run_config");
  return out;
}

// ---- dispatch

void Emit(const Output& output, const std::string& out_path, std::ostream& out,
          std::ostream& err) {
  std::string path = out_path;
  if (path.empty()) {
    if (const char* dir = std::getenv("MIP_OUTPUT_DIR"); dir && *dir) {
      path = std::string(dir) + "/" + output.default_name;
    }
  }
  if (path.empty()) {
    out << output.contents;
    out.flush();
  } else {
    try {
      WriteFile(path, output.contents);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    err << "wrote " << path << "\n";
  }
}

int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err, int depth);

int Execute(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, int depth) {
  CLI::App app{"Mutual-information peer prediction lab", "mipctl"};
  app.require_subcommand(1);
  std::string out_path;

  MeasureArgs measure;
  auto* m = app.add_subcommand("measure", "Mutual information of a joint or tensor");
  m->add_option("--mi", measure.mi, "f-MI generator: kl, tvd, chi2, hellinger");
  m->add_option("--bmi", measure.bmi, "Bregman MI scoring rule: log, quadratic");
  m->add_option("--joint", measure.joint, "Joint or tensor JSON file")->required();
  m->add_option("--out", out_path, "Output file");

  MechanismArgs mech;
  auto* c = app.add_subcommand("mechanism", "Per-agent payments for a scenario");
  c->add_option("--scenario", mech.scenario, "Scenario JSON file")->required();
  c->add_option("--mechanism", mech.mechanism, "fmi, bmi, md, ca, sppm, bts")->required();
  c->add_option("--measure", mech.measure, "Generator or scoring rule");
  c->add_option("--mode", mech.mode, "exact or empirical")
      ->check(CLI::IsMember({"exact", "empirical"}));
  c->add_option("--T", mech.questions, "Questions in empirical mode");
  c->add_option("--seed", mech.seed, "Base seed");
  c->add_option("--d", mech.d, "Subset size for md and ca");
  c->add_option("--alpha", mech.alpha, "BTS prediction weight");
  c->add_option("--pairing", mech.pairing, "all-pairs or seeded-random")
      ->check(CLI::IsMember({"all-pairs", "seeded-random"}));
  c->add_option("--smoothing", mech.smoothing, "BTS additive smoothing");
  c->add_option("--format", mech.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  c->add_option("--out", out_path, "Output file");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run a property suite");
  v->add_option("suite", verify.suite, "Suite id")->required();
  v->add_option("--instances", verify.instances, "Instance count (0: suite default)");
  v->add_option("--seed", verify.seed, "Base seed");
  v->add_option("--alphabets", verify.alphabets, "Comma-separated alphabet sizes");
  v->add_option("--agents", verify.agents, "Comma-separated agent counts");
  v->add_option("--tol-equality", verify.tol_equality);
  v->add_option("--tol-strictness", verify.tol_strictness);
  v->add_option("--ci-level", verify.ci_level);
  v->add_option("--instance-seeds", verify.instance_seeds,
                "Comma-separated explicit instance seeds");
  v->add_option("--out", out_path, "Output file");

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Convergence tables");
  s->add_option("kind", sweep.kind, "fmi-gap or bts-gap")->required();
  s->add_option("--T", sweep.questions, "Comma-separated question counts");
  s->add_option("--n", sweep.agents, "Comma-separated agent counts");
  s->add_option("--seeds", sweep.seeds, "Seeds per grid point");
  s->add_option("--seed", sweep.seed, "Base seed");
  s->add_option("--jobs", sweep.jobs, "Worker threads");
  s->add_option("--samples", sweep.samples, "BTS profiles per seed");
  s->add_option("--smoothing", sweep.smoothing, "BTS additive smoothing");
  s->add_option("--out", out_path, "Output file");

  std::string rerun_file;
  auto* r = app.add_subcommand("rerun", "Reproduce an output from its embedded config");
  r->add_option("file", rerun_file, "Output file written by mipctl")->required();
  r->add_option("--out", out_path, "Output file");

  std::vector<std::string> argv_storage{"mipctl"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, err, err) == 0 ? kExitOk : kExitConfig;
  }

  if (r->parsed()) {
    if (depth > 0) throw ConfigError("nested rerun");
    const Embedded emb = ReadEmbedded(rerun_file);
    std::vector<std::string> replay = ArgsFromRunConfig(emb.run_config);
    for (const char* key : {"scenario", "joint"}) {
      if (emb.run_config.contains(key) && !emb.input_hash.empty()) {
        std::string text;
        try {
          text = ReadFile(emb.run_config[key].get<std::string>());
        } catch (const Error& e) {
          throw ConfigError(e.what());
        }
        if (Sha256Hex(text) != emb.input_hash) {
          throw ConfigError("input " + emb.run_config[key].get<std::string>() +
                            " changed since the recorded run");
        }
      }
    }
    if (!out_path.empty()) {
      replay.push_back("--out");
      replay.push_back(out_path);
    }
    return Dispatch(replay, out, err, depth + 1);
  }

  Output output;
  if (m->parsed()) {
    output = RunMeasure(measure);
  } else if (c->parsed()) {
    output = RunMechanism(mech);
  } else if (v->parsed()) {
    output = RunVerify(verify);
  } else {
    output = RunSweep(sweep);
  }
  Emit(output, out_path, out, err);
  if (output.code != kExitOk) {
    err << "mipctl: " << (v->parsed() ? "suite reported violations" : "error record written")
        << "\n";
  }
  return output.code;
}

int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err, int depth) {
  try {
    return Execute(args, out, err, depth);
  } catch (const ConfigError& e) {
    err << "mipctl: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "mipctl: " << e.what() << "\n";
    return e.code() == ErrorCode::kParseError ? kExitConfig : kExitFailure;
  } catch (const std::exception& e) {
    err << "mipctl: internal error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  return Dispatch(args, out, err, 0);
}

}  // namespace mip::cli
