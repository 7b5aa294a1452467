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

#include "mip/agents.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_util.h"

namespace mip {
namespace {

using testing::Canon;

const Permutation kSwap{1, 0};

Prior TwoStateWorld() {
  return Prior::WorldModel(Distribution(std::vector<double>{0.5, 0.5}),
                           {Distribution(std::vector<double>{0.8, 0.2}),
                            Distribution(std::vector<double>{0.2, 0.8})});
}

// One of four prior kinds with n agents over m signals.
Prior AnyPrior(Rng& rng, int n, int m) {
  switch (rng.Index(4)) {
    case 0: {
      auto j = testing::AnyJoint(rng, m, m);
      return Prior::Pairwise(j, false);
    }
    case 1: {
      const auto j = testing::AnyJoint(rng, m, m);
      return Prior::Pairwise(Mix(0.5, j, j.Transposed()), true);
    }
    case 2: {
      int size = 1;
      for (int a = 0; a < n; ++a) size *= m;
      return Prior::FullJoint(n, m, testing::Weights(rng, size));
    }
    default: {
      const int worlds = 2 + rng.Index(2);
      std::vector<Distribution> states;
      for (int w = 0; w < worlds; ++w) states.emplace_back(testing::Weights(rng, m));
      return Prior::WorldModel(Distribution(testing::Weights(rng, worlds)), states);
    }
  }
}

Strategy AnyStrategy(Rng& rng, int m) {
  switch (rng.Index(3)) {
    case 0: return Strategy::Truth(m);
    case 1: return Strategy::FromPermutation(testing::AnyPermutation(rng, m));
    default: return Strategy{testing::AnyChannel(rng, m, m), "custom"};
  }
}

PermutationList AnyList(Rng& rng, int n, int m) {
  std::vector<Permutation> perms;
  for (int i = 0; i < n; ++i) perms.push_back(testing::AnyPermutation(rng, m));
  return PermutationList(perms, m);
}

TEST(ReportJoint, TruthfulFullEffortIsPrior) {
  const auto prior = Prior::Pairwise(Canon());
  const auto j = ReportJoint(prior, 0, 1, Strategy::Truth(2), Strategy::Truth(2));
  EXPECT_EQ(MaxAbsDiff(j, Canon()), 0.0);
}

TEST(ReportJoint, NoEffortGivesProduct) {
  const auto prior = Prior::Pairwise(Canon());
  const Distribution noise(std::vector<double>{0.9, 0.1});
  const auto lazy = EffortStrategy::Make(0.0, 0.3, noise);
  const auto j = ReportJoint(prior, 0, 1, Strategy::Truth(2), Strategy::Truth(2), &lazy, nullptr);
  const auto want = JointDistribution::Product(noise, Distribution::Uniform(2));
  EXPECT_LE(MaxAbsDiff(j, want), 1e-15);
}

TEST(ReportJoint, SwapOnSymmetricPrior) {
  const auto prior = Prior::Pairwise(Canon());
  const auto j = ReportJoint(prior, 0, 1, Strategy::FromPermutation(kSwap), Strategy::Truth(2));
  EXPECT_LE(MaxAbsDiff(j, JointDistribution::Pairwise({{0.1, 0.4}, {0.4, 0.1}})), 1e-15);
}

TEST(ReportJoint, EffortIsLinearMixture) {
  Rng rng(RngSeed{3});
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + rng.Index(3);
    const auto prior = Prior::Pairwise(testing::AnyJoint(rng, m, m), false);
    const auto si = AnyStrategy(rng, m), sj = AnyStrategy(rng, m);
    const Distribution noise(testing::Weights(rng, m));
    const double lambda = rng.Uniform();
    const auto eff = EffortStrategy::Make(lambda, 0.0, noise);
    const auto full = ReportJoint(prior, 0, 1, si, sj);
    const auto none = JointDistribution::Product(noise, Marginals(full).second);
    const auto mixed = ReportJoint(prior, 0, 1, si, sj, &eff, nullptr);
    EXPECT_LE(MaxAbsDiff(mixed, Mix(lambda, full, none)), 1e-15);
  }
}

TEST(Prior, SymmetricFlagIsChecked) {
  EXPECT_THROW(Prior::Pairwise(JointDistribution::Pairwise({{0.4, 0.2}, {0.1, 0.3}}), true),
               Error);
  EXPECT_NO_THROW(Prior::Pairwise(JointDistribution::Pairwise({{0.4, 0.2}, {0.1, 0.3}}), false));
}

TEST(Prior, PairJointOrientation) {
  const auto q = JointDistribution::Pairwise({{0.4, 0.2}, {0.1, 0.3}});
  const auto prior = Prior::Pairwise(q, false);
  EXPECT_EQ(MaxAbsDiff(prior.PairJoint(0, 1), q), 0.0);
  EXPECT_EQ(MaxAbsDiff(prior.PairJoint(2, 0), q.Transposed()), 0.0);
}

TEST(Prior, FullJointMarginalizes) {
  // Three binary agents; agent 0 most significant.
  std::vector<double> t{0.1, 0.05, 0.15, 0.2, 0.05, 0.1, 0.3, 0.05};
  const auto prior = Prior::FullJoint(3, 2, t);
  const auto j02 = prior.PairJoint(0, 2);
  EXPECT_NEAR(j02.at(0, 0), 0.1 + 0.15, 1e-15);
  EXPECT_NEAR(j02.at(0, 1), 0.05 + 0.2, 1e-15);
  EXPECT_NEAR(j02.at(1, 0), 0.05 + 0.3, 1e-15);
  EXPECT_NEAR(j02.at(1, 1), 0.1 + 0.05, 1e-15);
}

TEST(WorldTensor, TruthKeepsStatesAndSwapSwapsThem) {
  const auto prior = TwoStateWorld();
  const auto truth = BuildWorldTensor(prior, {Strategy::Truth(2), Strategy::Truth(2)});
  for (int w = 0; w < 2; ++w) EXPECT_EQ(truth.reported_states[w], prior.states()[w]);
  const auto swapped = BuildWorldTensor(
      prior, {Strategy::FromPermutation(kSwap), Strategy::FromPermutation(kSwap)});
  for (int w = 0; w < 2; ++w) {
    EXPECT_NEAR(swapped.reported_states[w][0], prior.states()[w][1], 1e-15);
    EXPECT_NEAR(swapped.reported_states[w][1], prior.states()[w][0], 1e-15);
  }
}

TEST(GenerateReports, PointMassPriorIsConstant) {
  const auto prior = Prior::Pairwise(JointDistribution::Pairwise({{0, 0}, {0, 1}}));
  const auto r = GenerateReports(Scenario::Common(prior, {Strategy::Truth(2), Strategy::Truth(2)}),
                                 50, RngSeed{9});
  for (int i = 0; i < 2; ++i) {
    for (int q = 0; q < 50; ++q) EXPECT_EQ(r.at(i, q), 1);
  }
}

TEST(GenerateReports, EmptyAndDeterministic) {
  const auto sc = Scenario::Common(Prior::Pairwise(Canon()), {Strategy::Truth(2), Strategy::Truth(2)});
  EXPECT_EQ(GenerateReports(sc, 0, RngSeed{1}).questions(), 0);
  EXPECT_EQ(GenerateReports(sc, 100, RngSeed{4}), GenerateReports(sc, 100, RngSeed{4}));
}

TEST(GenerateReports, PairwisePriorNeedsTwoAgents) {
  const auto sc = Scenario::Common(Prior::Pairwise(Canon()),
                                   {Strategy::Truth(2), Strategy::Truth(2), Strategy::Truth(2)});
  EXPECT_THROW(GenerateReports(sc, 10, RngSeed{1}), Error);
}

TEST(GenerateReports, EmpiricalJointConverges) {
  Rng rng(RngSeed{21});
  const auto prior = Prior::Pairwise(Canon());
  const auto sc = Scenario::Common(
      prior, {Strategy{testing::AnyChannel(rng, 2, 2), "custom"}, Strategy::Truth(2)});
  const auto exact = ReportJoint(sc, 0, 1);
  double previous = 1.0;
  for (int questions : {100, 1000, 10000}) {
    std::vector<double> gaps;
    for (int s = 0; s < 20; ++s) {
      const auto r = GenerateReports(sc, questions, RngSeed{1000u + s});
      gaps.push_back(MaxAbsDiff(EmpiricalPairJoint(r, 0, 1), exact));
    }
    std::nth_element(gaps.begin(), gaps.begin() + 10, gaps.end());
    EXPECT_LT(gaps[10], previous);
    EXPECT_LT(gaps[10], 2.0 / std::sqrt(questions));
    previous = gaps[10];
  }
}

TEST(EmpiricalPairJoint, Examples) {
  const auto same = ReportMatrix::FromRows({{0, 1, 0, 1}, {0, 1, 0, 1}}, 2);
  EXPECT_EQ(MaxAbsDiff(EmpiricalPairJoint(same, 0, 1),
                       JointDistribution::Pairwise({{0.5, 0}, {0, 0.5}})),
            0.0);
  const auto opposite = ReportMatrix::FromRows({{0, 0, 1, 1}, {1, 1, 0, 0}}, 2);
  EXPECT_EQ(MaxAbsDiff(EmpiricalPairJoint(opposite, 0, 1),
                       JointDistribution::Pairwise({{0, 0.5}, {0.5, 0}})),
            0.0);
}

TEST(EmpiricalPairJoint, NoOverlap) {
  ReportMatrix r(2, 2, 2);
  r.Set(0, 0, 1);
  r.Set(1, 1, 0);
  try {
    EmpiricalPairJoint(r, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoOverlap);
  }
}

TEST(PermuteScenario, IdentityListChangesNothing) {
  const auto sc = Scenario::Common(Prior::Pairwise(Canon()),
                                   {Strategy::Truth(2), Strategy::FromPermutation(kSwap)});
  const auto out = PermuteScenario(sc, PermutationList::Identity(2, 2));
  EXPECT_EQ(out.priors, sc.priors);
  for (int i = 0; i < 2; ++i) EXPECT_EQ(out.strategies[i].channel, sc.strategies[i].channel);
}

TEST(PermuteScenario, SymmetricSwapFixesSymmetricPrior) {
  const TransitionMatrix s({{0.7, 0.3}, {0.2, 0.8}});
  const auto sc = Scenario::Common(Prior::Pairwise(Canon()), {Strategy{s, "custom"}, Strategy::Truth(2)});
  const auto out = PermuteScenario(sc, PermutationList::Symmetric(kSwap, 2));
  EXPECT_EQ(out.priors.front().PairJoint(0, 1), Canon());
  // The new strategy reads the relabeled signal: row s is old row swap(s).
  EXPECT_EQ(out.strategies[0].channel, TransitionMatrix({{0.2, 0.8}, {0.7, 0.3}}));
  EXPECT_EQ(out.strategies[1].channel, TransitionMatrix::FromPermutation(kSwap));
}

TEST(PermuteScenario, OrderTwoListIsInvolution) {
  Rng rng(RngSeed{77});
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + rng.Index(3), m = 2;
    const auto prior = AnyPrior(rng, n, m);
    std::vector<Strategy> s;
    for (int i = 0; i < n; ++i) s.push_back(AnyStrategy(rng, m));
    const auto sc = Scenario::Common(prior, s);
    const auto list = AnyList(rng, n, m);
    const auto twice = PermuteScenario(PermuteScenario(sc, list), list);
    EXPECT_EQ(twice.priors, sc.priors);
    for (int i = 0; i < n; ++i) EXPECT_EQ(twice.strategies[i].channel, sc.strategies[i].channel);
  }
}

TEST(PermuteScenario, RoundTripAndReportJointsPreserved) {
  Rng rng(RngSeed{78});
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + rng.Index(3), m = 2 + rng.Index(3);
    const auto prior = AnyPrior(rng, n, m);
    std::vector<Strategy> s;
    for (int i = 0; i < n; ++i) s.push_back(AnyStrategy(rng, m));
    const auto sc = Scenario::Common(prior, s);
    const auto list = AnyList(rng, n, m);
    const auto moved = PermuteScenario(sc, list);
    const auto back = PermuteScenario(moved, list.Inverse());
    EXPECT_EQ(back.priors, sc.priors);
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(back.strategies[i].channel, sc.strategies[i].channel);
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        EXPECT_LE(MaxAbsDiff(ReportJoint(moved, i, j), ReportJoint(sc, i, j)), 1e-12);
      }
    }
  }
}

TEST(PermuteScenario, DimensionMismatch) {
  const auto sc = Scenario::Common(Prior::Pairwise(Canon()), {Strategy::Truth(2), Strategy::Truth(2)});
  EXPECT_THROW(PermuteScenario(sc, PermutationList::Identity(3, 2)), Error);
  EXPECT_THROW(PermuteScenario(sc, PermutationList::Identity(2, 3)), Error);
}

TEST(RandomStrategy, Kinds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto p = RandomStrategy(RngSeed{seed}, 2, StrategyKind::kPermutation);
    EXPECT_TRUE(p.channel == TransitionMatrix::Identity(2) ||
                p.channel == TransitionMatrix::FromPermutation(kSwap));
    const auto c = RandomStrategy(RngSeed{seed}, 4, StrategyKind::kConstant);
    for (int r = 1; r < 4; ++r) {
      for (int k = 0; k < 4; ++k) EXPECT_EQ(c.channel.at(r, k), c.channel.at(0, k));
    }
    const auto d = RandomStrategy(RngSeed{seed}, 3, StrategyKind::kDense);
    EXPECT_EQ(d.channel.rows(), 3);
  }
}

TEST(RandomMixedStrategy, KindRatios) {
  Rng rng(RngSeed{88});
  int dense = 0;
  const int draws = 20000;
  for (int t = 0; t < draws; ++t) {
    const auto s = RandomMixedStrategy(rng, 4);
    dense += s.label == "dense";
  }
  EXPECT_NEAR(static_cast<double>(dense) / draws, 0.4, 0.02);
}

TEST(PriorIndexedStrategy, ResolvesAndPermutes) {
  const auto a = Prior::Pairwise(Canon());
  const auto b = TwoStateWorld();
  const TransitionMatrix ma({{0.6, 0.4}, {0.1, 0.9}});
  PriorIndexedStrategy table{{{a, ma}, {b, TransitionMatrix::Identity(2)}},
                             TransitionMatrix::Identity(2)};
  EXPECT_EQ(table.Resolve(a), ma);
  EXPECT_EQ(table.Resolve(Prior::Pairwise(JointDistribution::Pairwise({{0.3, 0.2}, {0.2, 0.3}}))),
            TransitionMatrix::Identity(2));
  // perms(s)(sig, perms(Q)) = s(perm(sig), Q) for the permuted table.
  const auto list = PermutationList({kSwap, kSwap}, 2);
  const auto permuted = table.Permuted(list, 0);
  const auto& got = permuted.Resolve(a.Relabeled(list.Inverse()));
  for (int sig = 0; sig < 2; ++sig) {
    for (int r = 0; r < 2; ++r) EXPECT_EQ(got.at(sig, r), ma.at(kSwap[sig], r));
  }
}

}  // namespace
}  // namespace mip
