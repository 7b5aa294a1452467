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

#include "mip/io.h"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace mip {
namespace {

[[noreturn]] void SchemaError(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParseError, (where.empty() ? "/" : where) + ": " + what);
}

const Json& Field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) SchemaError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) SchemaError(where, std::string("missing field '") + key + "'");
  return *it;
}

double Number(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  SchemaError(where, "expected a number");
}

int Integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) SchemaError(where, "expected an integer");
  return j.get<int>();
}

std::vector<double> Vector(const Json& j, const std::string& where) {
  if (!j.is_array()) SchemaError(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(Number(j[k], where + "/" + std::to_string(k)));
  }
  return out;
}

std::vector<std::vector<double>> Matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) SchemaError(where, "expected a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < j.size(); ++k) {
    rows.push_back(Vector(j[k], where + "/" + std::to_string(k)));
    if (rows.back().size() != rows.front().size()) {
      SchemaError(where + "/" + std::to_string(k), "ragged rows");
    }
  }
  return rows;
}

std::vector<int> IntVector(const Json& j, const std::string& where) {
  if (!j.is_array()) SchemaError(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(Integer(j[k], where + "/" + std::to_string(k)));
  }
  return out;
}

void CheckVersion(const Json& j, const std::string& where) {
  const Json& v = Field(j, "schema_version", where);
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
    SchemaError(where + "/schema_version",
                "unsupported schema version (expected " +
                    std::to_string(kSchemaVersion) + ")");
  }
}

Json VectorJson(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(NumberJson(x));
  return out;
}

Json RowsJson(std::span<const double> flat, int rows, int cols) {
  Json out = Json::array();
  for (int r = 0; r < rows; ++r) out.push_back(VectorJson(flat.subspan(r * cols, cols)));
  return out;
}

// Library errors raised while building objects from parsed fields keep
// their code but gain the location.
template <typename F>
auto At(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw Error(e.code(), (where.empty() ? "/" : where) + ": " + e.detail());
  }
}

Json StrategyToJson(const Strategy& s) {
  if (s.is_truth() && s.label == "truth") return "truth";
  Json out = Json::object();
  out["matrix"] = RowsJson(s.channel.entries(), s.channel.rows(), s.channel.cols());
  out["label"] = s.label;
  return out;
}

Strategy StrategyFromJson(const Json& j, int m, const std::string& where) {
  if (j.is_string()) {
    if (j.get_ref<const std::string&>() != "truth") {
      SchemaError(where, "the only named strategy is \"truth\"");
    }
    return Strategy::Truth(m);
  }
  if (j.contains("permutation")) {
    auto perm = IntVector(j["permutation"], where + "/permutation");
    return At(where, [&] {
      if (!IsPermutation(perm, m)) {
        throw Error(ErrorCode::kInvalidArgument, "not a permutation of the alphabet");
      }
      return Strategy::FromPermutation(perm);
    });
  }
  auto rows = Matrix(Field(j, "matrix", where), where + "/matrix");
  Strategy s{At(where, [&] { return TransitionMatrix(rows); }), "custom"};
  if (j.contains("label")) {
    if (!j["label"].is_string()) SchemaError(where + "/label", "expected a string");
    s.label = j["label"].get<std::string>();
  }
  return s;
}

std::string Where(const std::string& base, std::size_t k) {
  return base + "/" + std::to_string(k);
}

}  // namespace

Json ParseJsonText(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1, col = 1;
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    const auto pos = what.find("syntax error");
    if (pos != std::string::npos) what = what.substr(pos);
    throw Error(ErrorCode::kParseError, std::string(source) + ":" +
                                            std::to_string(line) + ":" +
                                            std::to_string(col) + ": " + what);
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kInvalidArgument, "write failed for " + path);
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "sha256 failed");
  }
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (unsigned int k = 0; k < len; ++k) out << std::setw(2) << static_cast<int>(digest[k]);
  return out.str();
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

Json NumberJson(double value) {
  if (std::isfinite(value)) return value;
  return FormatDouble(value);
}

JointDistribution JointFromJson(const Json& j) {
  CheckVersion(j, "");
  if (j.contains("table")) {
    auto rows = Matrix(j["table"], "/table");
    return At("/table", [&] { return JointDistribution::Pairwise(rows); });
  }
  if (j.contains("tensor")) {
    const Json& t = j["tensor"];
    if (!t.is_array() || t.empty()) SchemaError("/tensor", "expected a non-empty array");
    std::vector<double> flat;
    int x = 0, y = 0;
    for (std::size_t z = 0; z < t.size(); ++z) {
      auto slab = Matrix(t[z], Where("/tensor", z));
      if (z == 0) {
        x = static_cast<int>(slab.size());
        y = static_cast<int>(slab.front().size());
      } else if (static_cast<int>(slab.size()) != x ||
                 static_cast<int>(slab.front().size()) != y) {
        SchemaError(Where("/tensor", z), "slices differ in shape");
      }
      for (const auto& row : slab) flat.insert(flat.end(), row.begin(), row.end());
    }
    return At("/tensor", [&] {
      return JointDistribution::Conditional(static_cast<int>(t.size()), x, y, flat);
    });
  }
  SchemaError("", "expected a 'table' or 'tensor' field");
}

Json JointToJson(const JointDistribution& joint) {
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  if (joint.mode() == JointDistribution::Mode::kPairwise) {
    out["table"] = RowsJson(joint.values(), joint.rows(), joint.cols());
  } else {
    Json t = Json::array();
    const int slab = joint.rows() * joint.cols();
    for (int z = 0; z < joint.z_size(); ++z) {
      t.push_back(RowsJson(joint.values().subspan(z * slab, slab), joint.rows(),
                           joint.cols()));
    }
    out["tensor"] = std::move(t);
  }
  return out;
}

Json PriorToJson(const Prior& prior) {
  Json out = Json::object();
  out["mode"] = std::string(prior.mode_name());
  switch (prior.mode()) {
    case Prior::Mode::kPairwise: {
      const auto& q = prior.pairwise_joint();
      out["symmetric"] = prior.symmetric_flag();
      out["table"] = RowsJson(q.values(), q.rows(), q.cols());
      break;
    }
    case Prior::Mode::kFullJoint:
      out["agents"] = *prior.agents();
      out["alphabet"] = prior.alphabet_size();
      out["table"] = VectorJson(prior.full_table());
      break;
    case Prior::Mode::kWorldModel: {
      out["world"] = VectorJson(prior.world().weights());
      Json states = Json::array();
      for (const auto& s : prior.states()) states.push_back(VectorJson(s.weights()));
      out["states"] = std::move(states);
      break;
    }
  }
  if (!prior.relabels().empty()) out["relabels"] = prior.relabels();
  return out;
}

namespace {

Prior PriorAt(const Json& j, const std::string& where) {
  const Json& mode = Field(j, "mode", where);
  if (!mode.is_string()) SchemaError(where + "/mode", "expected a string");
  const std::string m = mode.get<std::string>();
  Prior base;
  if (m == "pairwise") {
    auto rows = Matrix(Field(j, "table", where), where + "/table");
    bool symmetric = true;
    if (j.contains("symmetric")) {
      if (!j["symmetric"].is_boolean()) SchemaError(where + "/symmetric", "expected a boolean");
      symmetric = j["symmetric"].get<bool>();
    }
    base = At(where, [&] {
      return Prior::Pairwise(JointDistribution::Pairwise(rows), symmetric);
    });
  } else if (m == "full_joint") {
    const int agents = Integer(Field(j, "agents", where), where + "/agents");
    const int alphabet = Integer(Field(j, "alphabet", where), where + "/alphabet");
    auto table = Vector(Field(j, "table", where), where + "/table");
    base = At(where, [&] { return Prior::FullJoint(agents, alphabet, table); });
  } else if (m == "world_model") {
    auto world = Vector(Field(j, "world", where), where + "/world");
    auto states = Matrix(Field(j, "states", where), where + "/states");
    base = At(where, [&] {
      std::vector<Distribution> ds;
      for (auto& s : states) ds.emplace_back(std::move(s));
      return Prior::WorldModel(Distribution(world), std::move(ds));
    });
  } else {
    SchemaError(where + "/mode", "unknown prior mode '" + m + "'");
  }
  if (j.contains("relabels")) {
    const Json& r = j["relabels"];
    if (!r.is_array()) SchemaError(where + "/relabels", "expected an array");
    std::vector<Permutation> perms;
    for (std::size_t k = 0; k < r.size(); ++k) {
      perms.push_back(IntVector(r[k], Where(where + "/relabels", k)));
    }
    base = At(where + "/relabels", [&] { return base.WithRelabels(perms); });
  }
  return base;
}

}  // namespace

Prior PriorFromJson(const Json& j) { return PriorAt(j, ""); }

ScenarioFile ScenarioFromJson(const Json& j) {
  CheckVersion(j, "");
  ScenarioFile file;
  Scenario& sc = file.scenario;
  if (j.contains("prior")) {
    sc.priors.push_back(PriorAt(j["prior"], "/prior"));
  } else if (j.contains("priors")) {
    const Json& ps = j["priors"];
    if (!ps.is_array() || ps.empty()) SchemaError("/priors", "expected a non-empty array");
    for (std::size_t k = 0; k < ps.size(); ++k) {
      sc.priors.push_back(PriorAt(ps[k], Where("/priors", k)));
    }
  } else {
    SchemaError("", "expected a 'prior' or 'priors' field");
  }
  const int m = sc.priors.front().alphabet_size();
  const Json& ss = Field(j, "strategies", "");
  if (!ss.is_array()) SchemaError("/strategies", "expected an array");
  for (std::size_t k = 0; k < ss.size(); ++k) {
    sc.strategies.push_back(StrategyFromJson(ss[k], m, Where("/strategies", k)));
  }
  if (j.contains("efforts")) {
    const Json& es = j["efforts"];
    if (!es.is_array()) SchemaError("/efforts", "expected an array");
    for (std::size_t k = 0; k < es.size(); ++k) {
      const std::string w = Where("/efforts", k);
      const double lambda = Number(Field(es[k], "lambda", w), w + "/lambda");
      const double cost =
          es[k].contains("cost") ? Number(es[k]["cost"], w + "/cost") : 0.0;
      std::optional<std::vector<double>> ner;
      if (es[k].contains("no_effort_report")) {
        ner = Vector(es[k]["no_effort_report"], w + "/no_effort_report");
      }
      sc.efforts.push_back(At(w, [&] {
        return EffortStrategy::Make(lambda, cost,
                                    ner ? Distribution(*ner) : Distribution::Uniform(m));
      }));
    }
  }
  if (j.contains("bts_profile")) {
    const Json& bp = j["bts_profile"];
    if (!bp.is_array()) SchemaError("/bts_profile", "expected an array");
    std::vector<BtsReport> profile;
    for (std::size_t k = 0; k < bp.size(); ++k) {
      const std::string w = Where("/bts_profile", k);
      BtsReport r;
      r.signal = Integer(Field(bp[k], "signal", w), w + "/signal");
      auto pred = Vector(Field(bp[k], "prediction", w), w + "/prediction");
      r.prediction = At(w, [&] { return Distribution(pred); });
      profile.push_back(std::move(r));
    }
    file.bts_profile = std::move(profile);
  }
  At("", [&] {
    sc.Validate();
    return 0;
  });
  return file;
}

Json ScenarioToJson(const ScenarioFile& file) {
  const Scenario& sc = file.scenario;
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  if (sc.priors.size() == 1) {
    out["prior"] = PriorToJson(sc.priors.front());
  } else {
    Json ps = Json::array();
    for (const auto& p : sc.priors) ps.push_back(PriorToJson(p));
    out["priors"] = std::move(ps);
  }
  Json ss = Json::array();
  for (const auto& s : sc.strategies) ss.push_back(StrategyToJson(s));
  out["strategies"] = std::move(ss);
  if (!sc.efforts.empty()) {
    Json es = Json::array();
    for (const auto& e : sc.efforts) {
      Json ej = Json::object();
      ej["lambda"] = NumberJson(e.lambda);
      ej["cost"] = NumberJson(e.cost);
      ej["no_effort_report"] = VectorJson(e.no_effort_report.weights());
      es.push_back(std::move(ej));
    }
    out["efforts"] = std::move(es);
  }
  if (file.bts_profile) {
    Json bp = Json::array();
    for (const auto& r : *file.bts_profile) {
      Json rj = Json::object();
      rj["signal"] = r.signal;
      rj["prediction"] = VectorJson(r.prediction.weights());
      bp.push_back(std::move(rj));
    }
    out["bts_profile"] = std::move(bp);
  }
  return out;
}

namespace {

Json OptionalNumber(const std::optional<double>& v) {
  return v ? NumberJson(*v) : Json(nullptr);
}

}  // namespace

Json PaymentReportToJson(const PaymentReport& report) {
  Json out = Json::object();
  out["mode"] = std::string(PaymentModeName(report.mode));
  out["seed"] = report.seed ? Json(report.seed->value) : Json(nullptr);
  Json agents = Json::array();
  for (std::size_t k = 0; k < report.agents.size(); ++k) {
    const auto& a = report.agents[k];
    Json aj = Json::object();
    aj["agent"] = k;
    aj["payment"] = NumberJson(a.payment);
    aj["information_score"] = OptionalNumber(a.information_score);
    aj["prediction_score"] = OptionalNumber(a.prediction_score);
    aj["effort_cost"] = NumberJson(a.effort_cost);
    aj["utility"] = NumberJson(a.utility);
    agents.push_back(std::move(aj));
  }
  out["agents"] = std::move(agents);
  out["welfare"] = NumberJson(AgentWelfare(report));
  out["warnings"] = report.warnings;
  return out;
}

std::string PaymentReportCsv(const PaymentReport& report) {
  std::ostringstream out;
  out << "agent,payment,information_score,prediction_score,effort_cost,utility\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? FormatDouble(*v) : std::string();
  };
  for (std::size_t k = 0; k < report.agents.size(); ++k) {
    const auto& a = report.agents[k];
    out << k << ',' << FormatDouble(a.payment) << ',' << opt(a.information_score)
        << ',' << opt(a.prediction_score) << ',' << FormatDouble(a.effort_cost)
        << ',' << FormatDouble(a.utility) << '\n';
  }
  return out.str();
}

Json SuiteConfigToJson(const SuiteConfig& config) {
  Json out = Json::object();
  out["suite"] = config.suite;
  out["instances"] = config.instances;
  out["alphabet_sizes"] = config.alphabet_sizes;
  out["agent_counts"] = config.agent_counts;
  out["seed"] = config.seed;
  Json tol = Json::object();
  tol["equality"] = config.tolerances.equality;
  tol["strictness"] = config.tolerances.strictness;
  tol["monte_carlo_ci"] = config.tolerances.monte_carlo_ci;
  out["tolerances"] = std::move(tol);
  if (!config.instance_seeds.empty()) out["instance_seeds"] = config.instance_seeds;
  return out;
}

namespace {

Json ViolationJson(const Violation& v) {
  Json out = Json::object();
  out["instance"] = v.instance;
  out["instance_seed"] = v.instance_seed;
  out["check"] = v.check;
  Json values = Json::object();
  for (const auto& [k, x] : v.values) values[k] = NumberJson(x);
  out["values"] = std::move(values);
  out["detail"] = v.detail;
  return out;
}

}  // namespace

Json VerdictToJson(const SuiteVerdict& verdict) {
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  out["suite"] = verdict.suite;
  out["config"] = SuiteConfigToJson(verdict.config);
  out["instances"] = verdict.instances;
  Json vs = Json::array();
  for (const auto& v : verdict.violations) vs.push_back(ViolationJson(v));
  out["violations"] = std::move(vs);
  out["strictness_histogram"] = verdict.strictness_histogram;
  Json stats = Json::object();
  for (const auto& [k, x] : verdict.statistics) stats[k] = NumberJson(x);
  out["statistics"] = std::move(stats);
  Json fs = Json::array();
  for (const auto& f : verdict.findings) fs.push_back(ViolationJson(f));
  out["findings"] = std::move(fs);
  out["tags"] = verdict.tags;
  Json meta = Json::object();
  for (const auto& [k, v] : verdict.metadata) meta[k] = v;
  out["metadata"] = std::move(meta);
  out["pass"] = verdict.pass;
  return out;
}

std::string SweepCsv(std::string_view grid_name,
                     const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << grid_name << ",seed,value,gap\n";
  for (const auto& r : rows) {
    out << r.grid << ',' << r.seed << ',' << FormatDouble(r.value) << ','
        << FormatDouble(r.gap) << '\n';
  }
  return out.str();
}

}  // namespace mip
