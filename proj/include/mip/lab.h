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

// Property suites over randomized instances. Every suite is a pure function
// of its SuiteConfig: instance k draws from its own seed, derived from the
// base seed, so a single instance can be replayed in isolation.

#ifndef MIP_LAB_H_
#define MIP_LAB_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mip/agents.h"
#include "mip/mechanisms.h"
#include "mip/measures.h"

namespace mip {

struct Tolerances {
  double equality = 1e-10;
  double strictness = 1e-10;
  double monte_carlo_ci = 0.95;
};

struct SuiteConfig {
  std::string suite;
  // 0 selects the suite default.
  int instances = 0;
  std::vector<int> alphabet_sizes{2, 3, 4};
  std::vector<int> agent_counts{2, 3, 6};
  std::uint64_t seed = 1;
  Tolerances tolerances;
  // Explicit instance seeds; when set they replace the derived ones.
  std::vector<std::uint64_t> instance_seeds;
};

struct Violation {
  std::uint64_t instance_seed = 0;
  int instance = 0;
  std::string check;
  std::vector<std::pair<std::string, double>> values;
  std::string detail;
};

struct SuiteVerdict {
  std::string suite;
  SuiteConfig config;
  int instances = 0;
  // Sorted by (instance seed, check).
  std::vector<Violation> violations;
  // Recorded observations that are not failures, such as second-entry
  // witnesses for Bregman MI.
  std::vector<Violation> findings;
  std::map<std::string, int> strictness_histogram;
  std::map<std::string, double> statistics;
  std::vector<std::string> tags;
  std::vector<std::pair<std::string, std::string>> metadata;
  bool pass = false;
};

const std::vector<std::string>& SuiteIds();
// Accepts ids with '-' or '_' separators.
std::optional<std::string> CanonicalSuiteId(std::string_view id);
int DefaultInstances(std::string_view suite);
// Throws kInvalidArgument for unknown suites or bad counts and tolerances.
void ValidateConfig(const SuiteConfig& config);
SuiteVerdict RunSuite(const SuiteConfig& config);

std::uint64_t InstanceSeed(std::uint64_t base, int index);

// The binary joint [[0.4, 0.1], [0.1, 0.4]].
JointDistribution CanonicalJoint();
// Two equiprobable worlds with signal distributions (0.8, 0.2), (0.2, 0.8).
Prior CanonicalWorldPrior();

JointDistribution RandomJoint(Rng& rng, int rows, int cols);
// Binary pair joint from a common ground truth where each agent sees it with
// probability at least 1/2; non-binary alphabets spread errors uniformly.
JointDistribution GroundTruthJoint(Rng& rng, int m);

double Median(std::vector<double> values);

struct SweepRow {
  long long grid = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
  double gap = 0.0;
};

// Empirical TVD f-MI payment on the canonical two-agent example against
// the exact payment, for each T and seed.
std::vector<SweepRow> FmiGapSweep(const std::vector<long long>& questions,
                                  int seeds, std::uint64_t base_seed,
                                  int jobs = 1);
// Average finite-n BTS information score under truth-telling on the
// canonical world model against the idealized value, for each n and seed.
std::vector<SweepRow> BtsGapSweep(const std::vector<long long>& agents,
                                  int seeds, std::uint64_t base_seed,
                                  int jobs = 1, int samples = 50,
                                  double smoothing = 0.5);

// Per-grid-point medians of the gap column, in grid order.
std::vector<std::pair<long long, double>> GapMedians(
    const std::vector<SweepRow>& rows);

}  // namespace mip

#endif  // MIP_LAB_H_
