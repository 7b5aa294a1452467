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

// File formats. Structured objects are JSON carrying "schema_version";
// tables are CSV. Doubles are written so that they parse back to the same
// value; non-finite values are written as the strings "inf" / "-inf".

#ifndef MIP_IO_H_
#define MIP_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mip/agents.h"
#include "mip/lab.h"
#include "mip/mechanisms.h"

namespace mip {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Parses JSON text; syntax errors become kParseError with line and column.
Json ParseJsonText(std::string_view text, std::string_view source = "input");
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

std::string Sha256Hex(std::string_view data);
// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string FormatDouble(double value);
Json NumberJson(double value);

// {"schema_version": 1, "table": [[...]]} or {"schema_version": 1,
// "tensor": [[[...]]]} (axes Z, X, Y).
JointDistribution JointFromJson(const Json& j);
Json JointToJson(const JointDistribution& joint);

Json PriorToJson(const Prior& prior);
Prior PriorFromJson(const Json& j);

struct ScenarioFile {
  Scenario scenario;
  // Optional realized BTS reports for empirical runs.
  std::optional<std::vector<BtsReport>> bts_profile;
};

// {"schema_version": 1, "prior": {...} | "priors": [...],
//  "strategies": ["truth" | {"matrix": [[...]], "label": "..."}, ...],
//  "efforts": [{"lambda": .., "cost": .., "no_effort_report": [...]}],
//  "bts_profile": [{"signal": .., "prediction": [...]}]}
ScenarioFile ScenarioFromJson(const Json& j);
Json ScenarioToJson(const ScenarioFile& file);

Json PaymentReportToJson(const PaymentReport& report);
// One row per agent: agent,payment,information_score,prediction_score,
// effort_cost,utility. Absent scores are empty fields.
std::string PaymentReportCsv(const PaymentReport& report);

Json SuiteConfigToJson(const SuiteConfig& config);
Json VerdictToJson(const SuiteVerdict& verdict);

// Long-format table: grid,seed,value,gap.
std::string SweepCsv(std::string_view grid_name, const std::vector<SweepRow>& rows);

}  // namespace mip

#endif  // MIP_IO_H_
