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

#include "mip/prob.h"

#include <gtest/gtest.h>

#include <numeric>

#include "test_util.h"

namespace mip {
namespace {

using testing::Canon;

void ExpectDist(const Distribution& d, std::vector<double> want, double tol = 1e-15) {
  ASSERT_EQ(d.size(), static_cast<int>(want.size()));
  for (int k = 0; k < d.size(); ++k) EXPECT_NEAR(d[k], want[k], tol) << k;
}

void ExpectJoint(const JointDistribution& j, std::vector<std::vector<double>> want,
                 double tol = 1e-15) {
  ASSERT_EQ(j.rows(), static_cast<int>(want.size()));
  for (int x = 0; x < j.rows(); ++x) {
    for (int y = 0; y < j.cols(); ++y) EXPECT_NEAR(j.at(x, y), want[x][y], tol);
  }
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(MakeDistribution, Normalizes) {
  const std::vector<double> a{1, 1}, b{2, 0, 2}, c{0.4, 0.1, 0.1, 0.4};
  ExpectDist(MakeDistribution(a), {0.5, 0.5});
  ExpectDist(MakeDistribution(b), {0.5, 0.0, 0.5});
  ExpectDist(MakeDistribution(c), {0.4, 0.1, 0.1, 0.4});
}

TEST(MakeDistribution, RejectsBadWeights) {
  const std::vector<double> neg{1, -1}, zero{0, 0}, empty{};
  EXPECT_EQ(CodeOf([&] { MakeDistribution(neg); }), ErrorCode::kNegativeWeight);
  EXPECT_EQ(CodeOf([&] { MakeDistribution(zero); }), ErrorCode::kZeroMass);
  EXPECT_EQ(CodeOf([&] { MakeDistribution(empty); }), ErrorCode::kEmptyAlphabet);
  EXPECT_EQ(CodeOf([] { Distribution(std::vector<double>{0.5, 0.6}); }),
            ErrorCode::kNotNormalized);
}

TEST(Marginals, Examples) {
  auto [px, py] = Marginals(Canon());
  ExpectDist(px, {0.5, 0.5});
  ExpectDist(py, {0.5, 0.5});
  auto [ax, ay] = Marginals(JointDistribution::Pairwise({{1, 0}, {0, 0}}));
  ExpectDist(ax, {1, 0});
  ExpectDist(ay, {1, 0});
  auto [ux, uy] = Marginals(JointDistribution::Pairwise({{0.25, 0.25}, {0.25, 0.25}}));
  ExpectDist(ux, {0.5, 0.5});
  ExpectDist(uy, {0.5, 0.5});
}

TEST(ProductOfMarginals, Examples) {
  ExpectJoint(ProductOfMarginals(Canon()), {{0.25, 0.25}, {0.25, 0.25}});
  ExpectJoint(ProductOfMarginals(JointDistribution::Pairwise({{1, 0}, {0, 0}})),
              {{1, 0}, {0, 0}});
}

TEST(ProductOfMarginals, IndependentJointIsFixedPoint) {
  Rng rng(RngSeed{11});
  for (int t = 0; t < 200; ++t) {
    const int r = 2 + rng.Index(3), c = 2 + rng.Index(3);
    const auto px = Distribution(testing::Weights(rng, r));
    const auto py = Distribution(testing::Weights(rng, c));
    const auto j = JointDistribution::Product(px, py);
    EXPECT_LE(MaxAbsDiff(ProductOfMarginals(j), j), 1e-15);
  }
}

TEST(PushFirst, Examples) {
  ExpectJoint(PushFirst(Canon(), TransitionMatrix::Identity(2)), {{0.4, 0.1}, {0.1, 0.4}});
  const std::vector<int> swap{1, 0};
  ExpectJoint(PushFirst(Canon(), TransitionMatrix::FromPermutation(swap)),
              {{0.1, 0.4}, {0.4, 0.1}});
  ExpectJoint(PushFirst(Canon(), TransitionMatrix({{0.5, 0.5}, {0.5, 0.5}})),
              {{0.25, 0.25}, {0.25, 0.25}});
}

TEST(PushFirst, PreservesMassAndSecondMarginal) {
  Rng rng(RngSeed{3});
  for (int t = 0; t < 300; ++t) {
    const int r = 2 + rng.Index(3), c = 2 + rng.Index(3), out = 1 + rng.Index(4);
    const auto j = testing::AnyJoint(rng, r, c, 0.2);
    const auto pushed = PushFirst(j, testing::AnyChannel(rng, r, out));
    EXPECT_EQ(pushed.rows(), out);
    const auto& v = pushed.values();
    EXPECT_NEAR(std::accumulate(v.begin(), v.end(), 0.0), 1.0, 1e-12);
    const auto before = Marginals(j).second, after = Marginals(pushed).second;
    for (int y = 0; y < c; ++y) EXPECT_NEAR(before[y], after[y], 1e-14);
  }
}

TEST(PushFirst, DimensionMismatch) {
  EXPECT_EQ(CodeOf([] { PushFirst(Canon(), TransitionMatrix::Identity(3)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(ApplyChannel, Examples) {
  const Distribution d(std::vector<double>{0.3, 0.7});
  const std::vector<int> swap{1, 0};
  ExpectDist(ApplyChannel(d, TransitionMatrix::Identity(2)), {0.3, 0.7});
  ExpectDist(ApplyChannel(d, TransitionMatrix::FromPermutation(swap)), {0.7, 0.3});
  ExpectDist(ApplyChannel(d, TransitionMatrix({{0.5, 0.5}, {0.5, 0.5}})), {0.5, 0.5});
}

TEST(TransitionMatrix, RejectsNonStochasticRows) {
  EXPECT_EQ(CodeOf([] { TransitionMatrix({{0.5, 0.4}, {0, 1}}); }),
            ErrorCode::kNotNormalized);
  EXPECT_EQ(CodeOf([] { TransitionMatrix({{1.5, -0.5}, {0, 1}}); }),
            ErrorCode::kNegativeWeight);
}

TEST(ConditionOn, UniformTensorGivesUniformJoint) {
  const auto t = JointDistribution::Conditional(2, 2, 2, std::vector<double>(8, 0.125));
  for (int z = 0; z < 2; ++z) ExpectJoint(ConditionOn(t, z), {{0.25, 0.25}, {0.25, 0.25}});
}

TEST(ConditionOn, ZeroMassSlice) {
  const auto t = JointDistribution::Conditional(
      2, 2, 2, std::vector<double>{0.25, 0.25, 0.25, 0.25, 0, 0, 0, 0});
  EXPECT_EQ(CodeOf([&] { ConditionOn(t, 1); }), ErrorCode::kZeroConditioningEvent);
}

TEST(ConditionOn, WorldTensorSliceIsProduct) {
  // Axes (W, signal i, signal j) for the two-state model; the expected slice
  // is the outer product computed by direct division.
  const double world[2] = {0.5, 0.5};
  const double states[2][2] = {{0.8, 0.2}, {0.2, 0.8}};
  std::vector<double> t;
  for (int w = 0; w < 2; ++w) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) t.push_back(world[w] * states[w][a] * states[w][b]);
    }
  }
  const auto slice = ConditionOn(JointDistribution::Conditional(2, 2, 2, t), 0);
  ExpectJoint(slice, {{0.64, 0.16}, {0.16, 0.04}}, 1e-15);
}

TEST(ConditionOn, RequiresTensor) {
  EXPECT_EQ(CodeOf([] { ConditionOn(Canon(), 0); }), ErrorCode::kWrongRank);
}

TEST(Sample, PointMassIsConstant) {
  const auto d = Distribution::PointMass(3, 1);
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    EXPECT_EQ(Sample(d, RngSeed{seed}, 5), std::vector<int>(5, 1));
  }
}

TEST(Sample, LawOfLargeNumbers) {
  const auto s = Sample(Distribution::Uniform(2), RngSeed{42}, 100000);
  const double zeros = static_cast<double>(std::count(s.begin(), s.end(), 0)) / s.size();
  EXPECT_NEAR(zeros, 0.5, 0.01);
}

TEST(Sample, Reproducible) {
  const Distribution d(std::vector<double>{0.2, 0.3, 0.5});
  EXPECT_EQ(Sample(d, RngSeed{7}, 1000), Sample(d, RngSeed{7}, 1000));
  EXPECT_NE(Sample(d, RngSeed{7}, 1000), Sample(d, RngSeed{8}, 1000));
}

TEST(Rng, FirstDrawsAreFrozen) {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  Rng rng(RngSeed{5489});
  for (int k = 0; k < 9999; ++k) rng.NextU64();
  EXPECT_EQ(rng.NextU64(), 9981545732273789042ull);
}

TEST(Rng, SimplexSumsToOne) {
  Rng rng(RngSeed{17});
  for (int t = 0; t < 500; ++t) {
    const auto w = rng.Simplex(1 + rng.Index(8));
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
    for (double x : w) EXPECT_GE(x, 0.0);
  }
}

TEST(Mix, EndpointsAndLinearity) {
  Rng rng(RngSeed{23});
  const auto a = testing::AnyJoint(rng, 3, 2), b = testing::AnyJoint(rng, 3, 2);
  EXPECT_EQ(MaxAbsDiff(Mix(1.0, a, b), a), 0.0);
  EXPECT_EQ(MaxAbsDiff(Mix(0.0, a, b), b), 0.0);
  const auto half = Mix(0.5, a, b);
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 2; ++y) EXPECT_NEAR(half.at(x, y), 0.5 * (a.at(x, y) + b.at(x, y)), 1e-16);
  }
}

}  // namespace
}  // namespace mip
