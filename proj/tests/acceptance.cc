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

// Acceptance run: one PASS/FAIL line per criterion, each under its time
// budget. Exit status is non-zero if any criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mip/io.h"
#include "mip/lab.h"
#include "mip/mechanisms.h"
#include "mip/measures.h"

#ifndef MIPCTL_PATH
#error "MIPCTL_PATH must name the mipctl binary"
#endif

namespace {

using namespace mip;

struct Outcome {
  bool ok = true;
  std::string detail;
  void Require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string Num(double x) { return FormatDouble(x); }

std::string Failures(const SuiteVerdict& v) {
  std::ostringstream out;
  out << v.violations.size() << " violations";
  for (std::size_t k = 0; k < v.violations.size() && k < 3; ++k) {
    out << " [" << v.violations[k].check << " " << v.violations[k].detail << "]";
  }
  return out.str();
}

int Hist(const SuiteVerdict& v, const std::string& key) {
  auto it = v.strictness_histogram.find(key);
  return it == v.strictness_histogram.end() ? 0 : it->second;
}

SuiteVerdict Suite(const std::string& id, int instances, std::uint64_t seed) {
  SuiteConfig c;
  c.suite = id;
  c.instances = instances;
  c.seed = seed;
  return RunSuite(c);
}

// Binary joint with J(0,0) J(1,1) >= J(0,1) J(1,0).
JointDistribution PositiveBinary(Rng& rng) {
  auto w = rng.Simplex(4);
  if (w[0] * w[3] < w[1] * w[2]) {
    std::swap(w[0], w[1]);
    std::swap(w[2], w[3]);
  }
  return JointDistribution::Pairwise(2, 2, w);
}

Outcome MdEquality() {
  Outcome o;
  const auto canon = CanonicalJoint();
  const double md = MdExpectedReward(canon);
  const double half = 0.5 * FMutualInformation(canon, kTVD);
  o.Require(std::abs(md - 0.3) <= 1e-12 && std::abs(half - 0.3) <= 1e-12,
            "canonical md=" + Num(md) + " half_tvd=" + Num(half));
  Rng rng(RngSeed{2024});
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto j = PositiveBinary(rng);
    worst = std::max(worst, std::abs(MdExpectedReward(j) - 0.5 * FMutualInformation(j, kTVD)));
  }
  o.Require(worst <= 1e-12, "max gap " + Num(worst));
  o.detail = o.ok ? "canonical 0.3 = 0.3; 1000 priors, max gap " + Num(worst) : o.detail;
  return o;
}

Outcome LogBridge() {
  Outcome o;
  Rng rng(RngSeed{2025});
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto j = RandomJoint(rng, 2 + rng.Index(3), 2 + rng.Index(3));
    const double s = ShannonMI(j);
    worst = std::max({worst, std::abs(BregmanMI(j, ScoringRule::kLog) - s),
                      std::abs(FMutualInformation(j, kKL) - s)});
  }
  o.Require(worst <= 1e-10, "max gap " + Num(worst));
  if (o.ok) o.detail = "1000 joints, max gap " + Num(worst);
  return o;
}

Outcome AccuracyGain() {
  Outcome o;
  const auto v = Suite("accuracy-gain", 1000, 2026);
  o.Require(v.pass && v.instances == 1000, Failures(v));
  if (o.ok) o.detail = "1000 tensors, 0 violations";
  return o;
}

Outcome Dpi() {
  Outcome o;
  const auto v = Suite("dpi", 10000, 2027);
  o.Require(v.pass && v.instances == 10000, Failures(v));
  const int eligible = Hist(v, "fine_grained_nonpermutation");
  const int strict = Hist(v, "fine_grained_nonpermutation_strict");
  o.Require(eligible > 0 && eligible == strict,
            "strict " + std::to_string(strict) + "/" + std::to_string(eligible));
  if (o.ok) {
    o.detail = "10000 triples, 0 violations; strict on " + std::to_string(strict) + "/" +
               std::to_string(eligible) + " fine-grained non-permutation cases";
  }
  return o;
}

Outcome Dominance() {
  Outcome o;
  const auto v = Suite("dominant-truthfulness", 1000, 2028);
  o.Require(v.pass && v.instances == 1000, Failures(v));
  o.Require(Hist(v, "not_strict") == 0 && Hist(v, "strict") > 0, "strictness histogram");
  o.Require(Hist(v, "permutation_equal") > 0, "no permutation deviations sampled");
  if (o.ok) {
    o.detail = "1000 deviations, 0 violations; " + std::to_string(Hist(v, "permutation_equal")) +
               " permutation (equal), " + std::to_string(Hist(v, "strict")) + " strict";
  }
  return o;
}

// Grid search over lambda in [0, 1] for agent 0 against a truthful peer.
double LambdaStar(double cost) {
  const auto prior = Prior::Pairwise(CanonicalJoint());
  double best = -1.0, best_u = -1e300;
  for (int k = 0; k <= 100; ++k) {
    const double lambda = k / 100.0;
    const auto sc = Scenario::Common(
        prior, {Strategy::Truth(2), Strategy::Truth(2)},
        {EffortStrategy::Make(lambda, cost, Distribution::Uniform(2)), EffortStrategy::Full(2)});
    const double u = MipExpectedPayments(sc, Measure{kTVD}).agents[0].utility;
    if (u > best_u + 1e-12) {
      best_u = u;
      best = lambda;
    }
  }
  return best;
}

Outcome Effort() {
  Outcome o;
  const double high = LambdaStar(0.7), low = LambdaStar(0.2);
  o.Require(high == 0.0, "lambda*(0.7) = " + Num(high));
  o.Require(low == 1.0, "lambda*(0.2) = " + Num(low));
  const auto v = Suite("effort", 1000, 2029);
  o.Require(v.pass && v.instances == 1000, Failures(v));
  if (o.ok) o.detail = "lambda*=0 at cost 0.7, lambda*=1 at cost 0.2; 1000 instances monotone";
  return o;
}

Outcome Convergence() {
  Outcome o;
  const auto med = GapMedians(FmiGapSweep({1000, 10000, 100000}, 20, 2030));
  o.Require(med.size() == 3, "grid size");
  if (!o.ok) return o;
  o.Require(med[0].second > med[1].second && med[1].second > med[2].second,
            "medians not decreasing");
  o.Require(med[2].second < 0.02, "final median " + Num(med[2].second));
  o.detail = (o.ok ? std::string() : o.detail + "; ") + "medians " + Num(med[0].second) + ", " +
             Num(med[1].second) + ", " + Num(med[2].second);
  return o;
}

// Brute force over the eight atoms (w, a, b) of the two-state model.
double EnumeratedWorldInformation() {
  const double pw[2] = {0.5, 0.5};
  const double s[2][2] = {{0.8, 0.2}, {0.2, 0.8}};
  double p[2][2][2];
  for (int w = 0; w < 2; ++w) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) p[w][a][b] = pw[w] * s[w][a] * s[w][b];
    }
  }
  double total = 0.0;
  for (int b = 0; b < 2; ++b) {
    double pb = 0.0, pwb[2] = {0, 0}, pab[2] = {0, 0};
    for (int w = 0; w < 2; ++w) {
      for (int a = 0; a < 2; ++a) {
        pb += p[w][a][b];
        pwb[w] += p[w][a][b];
        pab[a] += p[w][a][b];
      }
    }
    for (int w = 0; w < 2; ++w) {
      for (int a = 0; a < 2; ++a) {
        total += p[w][a][b] * std::log(p[w][a][b] * pb / (pwb[w] * pab[a]));
      }
    }
  }
  return total;
}

Outcome Bts() {
  Outcome o;
  const double oracle = EnumeratedWorldInformation();
  const auto truth = BtsIdealized(CanonicalWorldPrior(),
                                  std::vector<Strategy>(3, Strategy::Truth(2)), Measure{kKL});
  o.Require(std::abs(oracle - 0.1264670) <= 1e-6, "oracle " + Num(oracle));
  o.Require(std::abs(truth.information - oracle) <= 1e-6, "information " + Num(truth.information));
  o.Require(std::abs(truth.prediction + truth.information) <= 1e-12, "prediction identity");
  const auto v = Suite("bts", 1000, 2031);
  o.Require(v.pass && v.instances == 1000, Failures(v));
  if (o.ok) {
    o.detail = "information " + Num(truth.information) + " (oracle " + Num(oracle) +
               "); 1000 profiles, 0 violations";
  }
  return o;
}

Outcome Equivalence() {
  Outcome o;
  const auto v = Suite("scenario-equivalence", 100, 2032);
  o.Require(v.pass && v.instances == 100, Failures(v));
  if (o.ok) {
    o.detail = "100 scenarios x 10 lists, " + std::to_string(Hist(v, "comparisons")) +
               " payment comparisons equal";
  }
  return o;
}

Outcome Determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("mip_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string joint = (dir / "joint.json").string();
  const std::string scenario = (dir / "scenario.json").string();
  WriteFile(joint, R"({"schema_version": 1, "table": [[0.4, 0.1], [0.1, 0.4]]})");
  WriteFile(scenario, R"({"schema_version": 1,
    "prior": {"mode": "world_model", "world": [0.5, 0.5], "states": [[0.8, 0.2], [0.2, 0.8]]},
    "strategies": ["truth", "truth", "truth", "truth", "truth"]})");

  const std::vector<std::string> runs = {
      "measure --mi kl --joint " + joint,
      "mechanism --scenario " + scenario + " --mechanism bts --mode empirical --seed 3 --smoothing 0.5",
      "mechanism --scenario " + scenario + " --mechanism ca --mode empirical --T 400 --format csv",
      "mechanism --scenario " + scenario + " --mechanism fmi --measure tvd --mode exact",
      "verify dominant-truthfulness --instances 200 --seed 5",
      "sweep fmi-gap --T 100,1000 --seeds 4 --jobs 2",
  };
  int identical = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const std::string out = (dir / ("out" + std::to_string(k) + "_" + std::to_string(rep))).string();
      const std::string cmd = std::string(MIPCTL_PATH) + " " + runs[k] + " --out " + out +
                              " 2>/dev/null";
      const int status = std::system(cmd.c_str());
      if (status != 0) {
        o.Require(false, "'" + runs[k] + "' exited " + std::to_string(status));
        break;
      }
      outputs[rep] = ReadFile(out);
    }
    if (!outputs[0].empty() && outputs[0] == outputs[1]) {
      ++identical;
    } else {
      o.Require(false, "'" + runs[k] + "' differs");
    }
  }
  fs::remove_all(dir);
  if (o.ok) o.detail = std::to_string(identical) + " commands, byte-identical reruns";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "agreement reward equals half TVD mutual information", 1.0, MdEquality},
      {2, "log-rule Bregman MI equals Shannon and KL f-MI", 5.0, LogBridge},
      {3, "expected accuracy gain equals conditional information", 10.0, AccuracyGain},
      {4, "data processing inequality with strictness", 30.0, Dpi},
      {5, "dominant truthfulness in exact mode", 30.0, Dominance},
      {6, "zero-one effort structure", 30.0, Effort},
      {7, "empirical f-MI payment convergence", 120.0, Convergence},
      {8, "idealized BTS information score", 60.0, Bts},
      {9, "scenario equivalence under permutation lists", 60.0, Equivalence},
      {10, "byte-identical CLI reruns", 600.0, Determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      o.ok = false;
      o.detail += "; over time budget";
    }
    failed += !o.ok;
    std::printf("[%s] criterion %d: %s (%.2fs / %.0fs budget) %s\n", o.ok ? "PASS" : "FAIL", c.id,
                c.name, seconds, c.budget_seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
