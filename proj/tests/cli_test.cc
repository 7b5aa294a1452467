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

#include <gtest/gtest.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "mip/io.h"
#include "test_util.h"

namespace mip::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mipctl_test_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("MIP_OUTPUT_DIR");
  }
  void TearDown() override {
    unsetenv("MIP_OUTPUT_DIR");
    fs::remove_all(dir_);
  }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  std::string Write(const std::string& name, const std::string& text) const {
    WriteFile(Path(name), text);
    return Path(name);
  }

  Result Call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::Run(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

const char* kCanonJoint = R"({"schema_version": 1, "table": [[0.4, 0.1], [0.1, 0.4]]})";
const char* kCanonScenario = R"({"schema_version": 1,
  "prior": {"mode": "pairwise", "table": [[0.4, 0.1], [0.1, 0.4]]},
  "strategies": ["truth", "truth"]})";

TEST_F(CliTest, MeasureCanonicalKl) {
  const auto r = Call({"measure", "--mi", "kl", "--joint", Write("ex.json", kCanonJoint)});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = ParseJsonText(r.out);
  EXPECT_NEAR(j["value"].get<double>(), testing::kCanonShannonMi, 1e-12);
  EXPECT_EQ(j["units"], "nats");
  EXPECT_EQ(j["input_sha256"], Sha256Hex(kCanonJoint));
}

TEST_F(CliTest, MeasureIndependentTvdAndTensor) {
  auto r = Call({"measure", "--mi", "tvd", "--joint",
                 Write("i.json", R"({"schema_version": 1, "table": [[0.25, 0.25], [0.25, 0.25]]})")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(ParseJsonText(r.out)["value"].get<double>(), 0.0);
  EXPECT_EQ(ParseJsonText(r.out)["units"], "dimensionless");
  r = Call({"measure", "--bmi", "log", "--joint",
            Write("t.json", R"({"schema_version": 1, "tensor": [[[0.4, 0.1], [0.1, 0.4]]]})")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(ParseJsonText(r.out)["quantity"], "conditional_mutual_information");
  EXPECT_NEAR(ParseJsonText(r.out)["value"].get<double>(), testing::kCanonShannonMi, 1e-12);
}

TEST_F(CliTest, MalformedFileExitsTwoWithPosition) {
  const auto path = Write("bad.json", "{\"schema_version\": 1,\n \"table\": [[0.4, 0.1], [0.1 0.4]]}");
  const auto r = Call({"measure", "--mi", "kl", "--joint", path});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find(path + ":2:"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, BadFlagsExitTwo) {
  EXPECT_EQ(Call({"measure", "--joint", Write("a.json", kCanonJoint)}).code, kExitConfig);
  EXPECT_EQ(Call({"measure", "--mi", "log", "--joint", Path("a.json")}).code, kExitConfig);
  EXPECT_EQ(Call({"measure", "--mi", "kl", "--joint", Path("missing.json")}).code, kExitConfig);
  EXPECT_EQ(Call({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(Call({"mechanism", "--scenario", Write("s.json", kCanonScenario), "--mechanism", "fmi",
                  "--measure", "log"}).code,
            kExitConfig);
}

TEST_F(CliTest, MechanismExactFmiTvd) {
  const auto r = Call({"mechanism", "--scenario", Write("s.json", kCanonScenario), "--mechanism",
                       "fmi", "--measure", "tvd", "--mode", "exact"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = ParseJsonText(r.out);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(j["report"]["agents"][i]["payment"].get<double>(), 0.6, 1e-12);
  }
  EXPECT_EQ(j["mechanism"], "fmi");
  EXPECT_TRUE(j.contains("config_hash"));
}

TEST_F(CliTest, MechanismCsvLayout) {
  const auto r = Call({"mechanism", "--scenario", Write("s.json", kCanonScenario), "--mechanism",
                       "md", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("# run_config=", 0), 0u);
  EXPECT_NE(r.out.find("agent,payment,information_score,prediction_score,effort_cost,utility\n"
                       "0,0.30000000000000004,"),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, DegenerateBtsProfileWritesErrorRecord) {
  const auto path = Write("bts.json", R"({"schema_version": 1,
    "prior": {"mode": "world_model", "world": [0.5, 0.5], "states": [[0.8, 0.2], [0.2, 0.8]]},
    "strategies": ["truth", "truth", "truth", "truth"],
    "bts_profile": [{"signal": 0, "prediction": [0.5, 0.5]}, {"signal": 0, "prediction": [0.5, 0.5]},
                    {"signal": 0, "prediction": [0.5, 0.5]}, {"signal": 1, "prediction": [0.5, 0.5]}]})");
  const auto r = Call({"mechanism", "--scenario", path, "--mechanism", "bts", "--mode", "empirical"});
  EXPECT_EQ(r.code, kExitFailure);
  const Json j = ParseJsonText(r.out);
  EXPECT_EQ(j["error"]["code"], "ZeroFrequency");
  EXPECT_TRUE(j.contains("run_config"));
}

TEST_F(CliTest, EmpiricalRunsAreByteIdentical) {
  const auto s = Write("s.json", kCanonScenario);
  for (const char* mech : {"fmi", "bmi", "md", "ca", "sppm"}) {
    std::vector<std::string> args{"mechanism", "--scenario", s, "--mechanism", mech, "--mode",
                                  "empirical", "--T", "500", "--seed", "9"};
    const auto a = Call(args), b = Call(args);
    ASSERT_EQ(a.code, kExitOk) << mech << a.err;
    EXPECT_EQ(a.out, b.out) << mech;
    args[args.size() - 1] = "10";
    EXPECT_NE(Call(args).out, a.out) << mech;
  }
}

TEST_F(CliTest, EmpiricalFmiApproachesExact) {
  const auto r = Call({"mechanism", "--scenario", Write("s.json", kCanonScenario), "--mechanism",
                       "fmi", "--measure", "tvd", "--mode", "empirical", "--T", "100000"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NEAR(ParseJsonText(r.out)["report"]["agents"][0]["payment"].get<double>(), 0.6, 0.02);
}

TEST_F(CliTest, VerifyContract) {
  EXPECT_EQ(Call({"verify", "nosuch"}).code, kExitConfig);
  auto r = Call({"verify", "dpi", "--instances", "10000", "--seed", "7"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  Json j = ParseJsonText(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["instances"], 10000);
  EXPECT_TRUE(j["violations"].empty());

  r = Call({"verify", "md-equivalence"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  j = ParseJsonText(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_GT(j["strictness_histogram"]["equality"].get<int>(), 0);
  EXPECT_GT(j["strictness_histogram"]["strict_inequality"].get<int>(), 0);

  EXPECT_EQ(Call({"verify", "dpi", "--alphabets", "1"}).code, kExitConfig);
}

TEST_F(CliTest, SweepTables) {
  auto r = Call({"sweep", "fmi-gap", "--T", ""});
  ASSERT_EQ(r.code, kExitOk);
  const auto header = r.out.substr(r.out.find("T,seed"));
  EXPECT_EQ(header, "T,seed,value,gap\n");

  r = Call({"sweep", "fmi-gap", "--T", "1000,10000,100000", "--seeds", "20"});
  ASSERT_EQ(r.code, kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::map<long long, std::vector<double>> gaps;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'T') continue;
    std::stringstream row(line);
    std::string grid, seed, value, gap;
    std::getline(row, grid, ',');
    std::getline(row, seed, ',');
    std::getline(row, value, ',');
    std::getline(row, gap, ',');
    gaps[std::stoll(grid)].push_back(std::stod(gap));
  }
  ASSERT_EQ(gaps.size(), 3u);
  std::vector<double> medians;
  for (auto& [t, g] : gaps) {
    ASSERT_EQ(g.size(), 20u);
    std::sort(g.begin(), g.end());
    medians.push_back(0.5 * (g[9] + g[10]));
  }
  EXPECT_GT(medians[0], medians[1]);
  EXPECT_GT(medians[1], medians[2]);
  EXPECT_LT(medians[2], 0.02);

  const auto one = Call({"sweep", "bts-gap", "--n", "10,30", "--seeds", "3", "--samples", "5", "--jobs", "1"});
  const auto two = Call({"sweep", "bts-gap", "--n", "10,30", "--seeds", "3", "--samples", "5", "--jobs", "2"});
  ASSERT_EQ(one.code, kExitOk);
  EXPECT_EQ(one.out, two.out);
  EXPECT_EQ(Call({"sweep", "nosuch"}).code, kExitConfig);
}

TEST_F(CliTest, RerunReproducesOutputs) {
  const auto s = Write("s.json", kCanonScenario);
  ASSERT_EQ(Call({"mechanism", "--scenario", s, "--mechanism", "fmi", "--mode", "empirical",
                  "--T", "300", "--format", "csv", "--out", Path("a.csv")}).code,
            kExitOk);
  ASSERT_EQ(Call({"rerun", Path("a.csv"), "--out", Path("b.csv")}).code, kExitOk);
  EXPECT_EQ(ReadFile(Path("a.csv")), ReadFile(Path("b.csv")));

  ASSERT_EQ(Call({"verify", "effort", "--instances", "20", "--out", Path("v.json")}).code, kExitOk);
  ASSERT_EQ(Call({"rerun", Path("v.json"), "--out", Path("w.json")}).code, kExitOk);
  EXPECT_EQ(ReadFile(Path("v.json")), ReadFile(Path("w.json")));

  ASSERT_EQ(Call({"sweep", "bts-gap", "--n", "5", "--seeds", "2", "--samples", "3", "--out",
                  Path("x.csv")}).code,
            kExitOk);
  ASSERT_EQ(Call({"rerun", Path("x.csv"), "--out", Path("y.csv")}).code, kExitOk);
  EXPECT_EQ(ReadFile(Path("x.csv")), ReadFile(Path("y.csv")));

  // A changed input is refused rather than silently reproduced differently.
  Write("s.json", R"({"schema_version": 1,
    "prior": {"mode": "pairwise", "table": [[0.3, 0.2], [0.2, 0.3]]},
    "strategies": ["truth", "truth"]})");
  EXPECT_EQ(Call({"rerun", Path("a.csv")}).code, kExitConfig);
}

TEST_F(CliTest, OutputDirectoryFromEnvironment) {
  setenv("MIP_OUTPUT_DIR", dir_.c_str(), 1);
  const auto r = Call({"measure", "--mi", "tvd", "--joint", Write("ex.json", kCanonJoint)});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("measure.json"), std::string::npos);
  EXPECT_NEAR(ParseJsonText(ReadFile(Path("measure.json")))["value"].get<double>(), 0.6, 1e-12);
}

TEST_F(CliTest, InputsAreNotModified) {
  const auto s = Write("s.json", kCanonScenario);
  Call({"mechanism", "--scenario", s, "--mechanism", "bts", "--mode", "exact"});
  EXPECT_EQ(ReadFile(s), kCanonScenario);
}

}  // namespace
}  // namespace mip::cli
