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

// Finite-alphabet probability primitives. Signals are indices 0..m-1.

#ifndef MIP_PROB_H_
#define MIP_PROB_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "mip/error.h"

namespace mip {

inline constexpr double kNormalizationTol = 1e-9;
inline constexpr double kIdentityTol = 1e-12;

class Distribution {
 public:
  Distribution() = default;
  // Validates the weights without renormalizing them.
  explicit Distribution(std::vector<double> weights);

  static Distribution Uniform(int size);
  static Distribution PointMass(int size, int index);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  bool operator==(const Distribution&) const = default;

 private:
  std::vector<double> weights_;
};

// Normalizes arbitrary non-negative weights.
Distribution MakeDistribution(std::span<const double> weights);

// Pairwise mode holds a dims[0] x dims[1] table (X rows, Y columns).
// Conditional mode holds a dims[0] x dims[1] x dims[2] tensor indexed
// (Z, X, Y). Storage is row-major.
class JointDistribution {
 public:
  enum class Mode { kPairwise, kConditional };

  JointDistribution() = default;
  static JointDistribution Pairwise(int rows, int cols,
                                    std::vector<double> table);
  static JointDistribution Pairwise(
      const std::vector<std::vector<double>>& rows);
  static JointDistribution Conditional(int z, int x, int y,
                                       std::vector<double> tensor);
  // Outer product px (x) py.
  static JointDistribution Product(const Distribution& px,
                                   const Distribution& py);

  Mode mode() const { return mode_; }
  int rank() const { return mode_ == Mode::kPairwise ? 2 : 3; }
  int rows() const;
  int cols() const;
  int z_size() const;
  std::span<const double> values() const { return values_; }

  double at(int x, int y) const;
  double at(int z, int x, int y) const;

  JointDistribution Transposed() const;

  bool operator==(const JointDistribution&) const = default;

 private:
  Mode mode_ = Mode::kPairwise;
  std::vector<int> dims_;
  std::vector<double> values_;
};

// Row-stochastic matrix. rows() inputs, cols() outputs.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  TransitionMatrix(int rows, int cols, std::vector<double> entries);
  explicit TransitionMatrix(const std::vector<std::vector<double>>& rows);

  static TransitionMatrix Identity(int m);
  // Row x is the point mass at perm[x].
  static TransitionMatrix FromPermutation(std::span<const int> perm);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int i, int j) const { return entries_[i * cols_ + j]; }
  std::span<const double> row(int i) const {
    return std::span<const double>(entries_).subspan(i * cols_, cols_);
  }
  std::span<const double> entries() const { return entries_; }

  bool is_permutation() const { return is_permutation_; }
  bool is_identity() const;
  // The permutation images when is_permutation(); empty otherwise.
  std::vector<int> AsPermutation() const;

  TransitionMatrix Then(const TransitionMatrix& next) const;

  bool operator==(const TransitionMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> entries_;
  bool is_permutation_ = false;
};

struct RngSeed {
  std::uint64_t value = 0;
};

// Deterministic random source: std::mt19937_64 (fully specified by the
// standard) with uniforms built from the top 53 bits, so streams do not
// depend on library-specific distribution implementations.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform integer in [0, n).
  int Index(int n);
  // Exponential(1) variate, used for Dirichlet draws.
  double Exponential();
  int Categorical(std::span<const double> weights);
  // Dirichlet(1,...,1) sample.
  std::vector<double> Simplex(int size);
  void Shuffle(std::vector<int>& items);

  // Derives an independent seed for sub-streams.
  RngSeed Fork() { return RngSeed{NextU64()}; }

 private:
  std::mt19937_64 engine_;
};

std::pair<Distribution, Distribution> Marginals(const JointDistribution& joint);
JointDistribution ProductOfMarginals(const JointDistribution& joint);
// Joint of (M(X), Y) where the channel acts on X.
JointDistribution PushFirst(const JointDistribution& joint,
                            const TransitionMatrix& channel);
// Joint of (X, M(Y)) where the channel acts on Y.
JointDistribution PushSecond(const JointDistribution& joint,
                             const TransitionMatrix& channel);
Distribution ApplyChannel(const Distribution& dist,
                          const TransitionMatrix& channel);
double ZMass(const JointDistribution& tensor, int z);
JointDistribution ConditionOn(const JointDistribution& tensor, int z);
std::vector<int> Sample(const Distribution& dist, RngSeed seed, int count);

// Mixture weight * a + (1 - weight) * b, entrywise.
JointDistribution Mix(double weight, const JointDistribution& a,
                      const JointDistribution& b);

double MaxAbsDiff(const JointDistribution& a, const JointDistribution& b);

}  // namespace mip

#endif  // MIP_PROB_H_
