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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mip {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyAlphabet: return "EmptyAlphabet";
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kZeroMass: return "ZeroMass";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kWrongRank: return "WrongRank";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroConditioningEvent: return "ZeroConditioningEvent";
    case ErrorCode::kLogOfZero: return "LogOfZero";
    case ErrorCode::kInadmissibleSupport: return "InadmissibleSupport";
    case ErrorCode::kModeMismatch: return "ModeMismatch";
    case ErrorCode::kUnsupportedPriorMode: return "UnsupportedPriorMode";
    case ErrorCode::kNoOverlap: return "NoOverlap";
    case ErrorCode::kNonBinaryAlphabet: return "NonBinaryAlphabet";
    case ErrorCode::kZeroFrequency: return "ZeroFrequency";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

void CheckProbabilityTable(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyAlphabet, "no entries");
  double total = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kNegativeWeight,
                  "entry " + std::to_string(v) + " is not a probability");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kNormalizationTol) {
    throw Error(ErrorCode::kNotNormalized,
                "entries sum to " + std::to_string(total));
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> weights)
    : weights_(std::move(weights)) {
  CheckProbabilityTable(weights_);
}

Distribution Distribution::Uniform(int size) {
  if (size <= 0) throw Error(ErrorCode::kEmptyAlphabet, "size must be > 0");
  return Distribution(std::vector<double>(size, 1.0 / size));
}

Distribution Distribution::PointMass(int size, int index) {
  if (index < 0 || index >= size) {
    throw Error(ErrorCode::kInvalidArgument, "point mass index out of range");
  }
  std::vector<double> w(size, 0.0);
  w[index] = 1.0;
  return Distribution(std::move(w));
}

Distribution MakeDistribution(std::span<const double> weights) {
  if (weights.empty()) throw Error(ErrorCode::kEmptyAlphabet, "no weights");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::kNegativeWeight,
                  "weight " + std::to_string(w) + " is negative or not finite");
    }
    total += w;
  }
  if (total <= 0.0) throw Error(ErrorCode::kZeroMass, "weights sum to zero");
  std::vector<double> out(weights.begin(), weights.end());
  for (double& w : out) w /= total;
  return Distribution(std::move(out));
}

JointDistribution JointDistribution::Pairwise(int rows, int cols,
                                              std::vector<double> table) {
  if (rows <= 0 || cols <= 0) {
    throw Error(ErrorCode::kEmptyAlphabet, "joint has an empty axis");
  }
  if (static_cast<int>(table.size()) != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch, "table size != rows * cols");
  }
  CheckProbabilityTable(table);
  JointDistribution j;
  j.mode_ = Mode::kPairwise;
  j.dims_ = {rows, cols};
  j.values_ = std::move(table);
  return j;
}

JointDistribution JointDistribution::Pairwise(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::kEmptyAlphabet, "joint has an empty axis");
  }
  const int cols = static_cast<int>(rows.front().size());
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged joint table");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Pairwise(static_cast<int>(rows.size()), cols, std::move(flat));
}

JointDistribution JointDistribution::Conditional(int z, int x, int y,
                                                 std::vector<double> tensor) {
  if (z <= 0 || x <= 0 || y <= 0) {
    throw Error(ErrorCode::kEmptyAlphabet, "tensor has an empty axis");
  }
  if (static_cast<int>(tensor.size()) != z * x * y) {
    throw Error(ErrorCode::kDimensionMismatch, "tensor size != z * x * y");
  }
  CheckProbabilityTable(tensor);
  JointDistribution j;
  j.mode_ = Mode::kConditional;
  j.dims_ = {z, x, y};
  j.values_ = std::move(tensor);
  return j;
}

JointDistribution JointDistribution::Product(const Distribution& px,
                                             const Distribution& py) {
  std::vector<double> t(px.size() * py.size());
  for (int x = 0; x < px.size(); ++x) {
    for (int y = 0; y < py.size(); ++y) t[x * py.size() + y] = px[x] * py[y];
  }
  return Pairwise(px.size(), py.size(), std::move(t));
}

int JointDistribution::rows() const {
  return mode_ == Mode::kPairwise ? dims_[0] : dims_[1];
}

int JointDistribution::cols() const {
  return mode_ == Mode::kPairwise ? dims_[1] : dims_[2];
}

int JointDistribution::z_size() const {
  return mode_ == Mode::kPairwise ? 1 : dims_[0];
}

double JointDistribution::at(int x, int y) const {
  return values_[x * dims_[1] + y];
}

double JointDistribution::at(int z, int x, int y) const {
  return values_[(z * dims_[1] + x) * dims_[2] + y];
}

JointDistribution JointDistribution::Transposed() const {
  if (mode_ != Mode::kPairwise) {
    throw Error(ErrorCode::kWrongRank, "transpose needs a pairwise joint");
  }
  std::vector<double> t(values_.size());
  for (int x = 0; x < rows(); ++x) {
    for (int y = 0; y < cols(); ++y) t[y * rows() + x] = at(x, y);
  }
  JointDistribution j;
  j.dims_ = {cols(), rows()};
  j.values_ = std::move(t);
  return j;
}

TransitionMatrix::TransitionMatrix(int rows, int cols,
                                   std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows <= 0 || cols <= 0) {
    throw Error(ErrorCode::kEmptyAlphabet, "channel has an empty axis");
  }
  if (static_cast<int>(entries_.size()) != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch, "entries != rows * cols");
  }
  for (int i = 0; i < rows; ++i) CheckProbabilityTable(row(i));

  // Exactly one 1 per row and per column.
  is_permutation_ = rows_ == cols_;
  std::vector<int> column_hits(cols_, 0);
  for (int i = 0; i < rows_ && is_permutation_; ++i) {
    int ones = 0;
    for (int j = 0; j < cols_; ++j) {
      const double v = at(i, j);
      if (v == 1.0) {
        ++ones;
        ++column_hits[j];
      } else if (v != 0.0) {
        is_permutation_ = false;
      }
    }
    if (ones != 1) is_permutation_ = false;
  }
  if (is_permutation_) {
    is_permutation_ = std::all_of(column_hits.begin(), column_hits.end(),
                                  [](int h) { return h == 1; });
  }
}

TransitionMatrix::TransitionMatrix(const std::vector<std::vector<double>>& rows)
    : TransitionMatrix(
          static_cast<int>(rows.size()),
          rows.empty() ? 0 : static_cast<int>(rows.front().size()),
          [&rows] {
            std::vector<double> flat;
            for (const auto& r : rows) {
              if (r.size() != rows.front().size()) {
                throw Error(ErrorCode::kDimensionMismatch, "ragged channel");
              }
              flat.insert(flat.end(), r.begin(), r.end());
            }
            return flat;
          }()) {}

TransitionMatrix TransitionMatrix::Identity(int m) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  return FromPermutation(perm);
}

TransitionMatrix TransitionMatrix::FromPermutation(std::span<const int> perm) {
  const int m = static_cast<int>(perm.size());
  std::vector<double> e(m * m, 0.0);
  for (int x = 0; x < m; ++x) {
    if (perm[x] < 0 || perm[x] >= m) {
      throw Error(ErrorCode::kInvalidArgument, "permutation image out of range");
    }
    e[x * m + perm[x]] = 1.0;
  }
  TransitionMatrix t(m, m, std::move(e));
  if (!t.is_permutation()) {
    throw Error(ErrorCode::kInvalidArgument, "not a permutation");
  }
  return t;
}

bool TransitionMatrix::is_identity() const {
  if (!is_permutation_) return false;
  for (int i = 0; i < rows_; ++i) {
    if (at(i, i) != 1.0) return false;
  }
  return true;
}

std::vector<int> TransitionMatrix::AsPermutation() const {
  if (!is_permutation_) return {};
  std::vector<int> perm(rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      if (at(i, j) == 1.0) perm[i] = j;
    }
  }
  return perm;
}

TransitionMatrix TransitionMatrix::Then(const TransitionMatrix& next) const {
  if (cols_ != next.rows_) {
    throw Error(ErrorCode::kDimensionMismatch, "channel composition");
  }
  std::vector<double> e(rows_ * next.cols_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const double a = at(i, k);
      if (a == 0.0) continue;
      for (int j = 0; j < next.cols_; ++j) {
        e[i * next.cols_ + j] += a * next.at(k, j);
      }
    }
  }
  return TransitionMatrix(rows_, next.cols_, std::move(e));
}

int Rng::Index(int n) {
  if (n <= 0) throw Error(ErrorCode::kInvalidArgument, "Index(n) needs n > 0");
  // Multiply-shift on the top 32 bits; bias is below 2^-32 for small n.
  const std::uint64_t r = engine_() >> 32;
  return static_cast<int>((r * static_cast<std::uint64_t>(n)) >> 32);
}

double Rng::Exponential() { return -std::log1p(-Uniform()); }

int Rng::Categorical(std::span<const double> weights) {
  const double u = Uniform();
  double acc = 0.0;
  int last_positive = -1;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    acc += weights[i];
    if (u < acc) return i;
  }
  // Rounding left u above the accumulated mass.
  return last_positive;
}

std::vector<double> Rng::Simplex(int size) {
  std::vector<double> w(size);
  double total = 0.0;
  for (double& v : w) {
    v = Exponential();
    total += v;
  }
  for (double& v : w) v /= total;
  return w;
}

void Rng::Shuffle(std::vector<int>& items) {
  for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
    std::swap(items[i], items[Index(i + 1)]);
  }
}

std::pair<Distribution, Distribution> Marginals(const JointDistribution& joint) {
  if (joint.mode() != JointDistribution::Mode::kPairwise) {
    throw Error(ErrorCode::kWrongRank, "marginals need a pairwise joint");
  }
  std::vector<double> px(joint.rows(), 0.0), py(joint.cols(), 0.0);
  for (int x = 0; x < joint.rows(); ++x) {
    for (int y = 0; y < joint.cols(); ++y) {
      px[x] += joint.at(x, y);
      py[y] += joint.at(x, y);
    }
  }
  return {Distribution(std::move(px)), Distribution(std::move(py))};
}

JointDistribution ProductOfMarginals(const JointDistribution& joint) {
  auto [px, py] = Marginals(joint);
  return JointDistribution::Product(px, py);
}

JointDistribution PushFirst(const JointDistribution& joint,
                            const TransitionMatrix& channel) {
  if (joint.mode() != JointDistribution::Mode::kPairwise) {
    throw Error(ErrorCode::kWrongRank, "push_first needs a pairwise joint");
  }
  if (channel.rows() != joint.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "channel rows != X alphabet size");
  }
  const int out_rows = channel.cols();
  const int cols = joint.cols();
  std::vector<double> out(out_rows * cols, 0.0);
  for (int x = 0; x < joint.rows(); ++x) {
    for (int xp = 0; xp < out_rows; ++xp) {
      const double m = channel.at(x, xp);
      if (m == 0.0) continue;
      for (int y = 0; y < cols; ++y) out[xp * cols + y] += m * joint.at(x, y);
    }
  }
  return JointDistribution::Pairwise(out_rows, cols, std::move(out));
}

JointDistribution PushSecond(const JointDistribution& joint,
                             const TransitionMatrix& channel) {
  return PushFirst(joint.Transposed(), channel).Transposed();
}

Distribution ApplyChannel(const Distribution& dist,
                          const TransitionMatrix& channel) {
  if (channel.rows() != dist.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "channel rows != alphabet size");
  }
  std::vector<double> out(channel.cols(), 0.0);
  for (int i = 0; i < dist.size(); ++i) {
    for (int j = 0; j < channel.cols(); ++j) out[j] += channel.at(i, j) * dist[i];
  }
  return Distribution(std::move(out));
}

double ZMass(const JointDistribution& tensor, int z) {
  if (tensor.mode() != JointDistribution::Mode::kConditional) {
    throw Error(ErrorCode::kWrongRank, "conditioning needs a rank-3 tensor");
  }
  if (z < 0 || z >= tensor.z_size()) {
    throw Error(ErrorCode::kInvalidArgument, "conditioning index out of range");
  }
  double mass = 0.0;
  for (int x = 0; x < tensor.rows(); ++x) {
    for (int y = 0; y < tensor.cols(); ++y) mass += tensor.at(z, x, y);
  }
  return mass;
}

JointDistribution ConditionOn(const JointDistribution& tensor, int z) {
  const double mass = ZMass(tensor, z);
  if (mass <= 0.0) {
    throw Error(ErrorCode::kZeroConditioningEvent,
                "Pr[Z=" + std::to_string(z) + "] = 0");
  }
  std::vector<double> slice(tensor.rows() * tensor.cols());
  double total = 0.0;
  for (int x = 0; x < tensor.rows(); ++x) {
    for (int y = 0; y < tensor.cols(); ++y) {
      slice[x * tensor.cols() + y] = tensor.at(z, x, y) / mass;
      total += slice[x * tensor.cols() + y];
    }
  }
  // Absorb the division rounding so the slice sums to 1 within 1e-12.
  for (double& v : slice) v /= total;
  return JointDistribution::Pairwise(tensor.rows(), tensor.cols(),
                                     std::move(slice));
}

std::vector<int> Sample(const Distribution& dist, RngSeed seed, int count) {
  if (count < 0) throw Error(ErrorCode::kInvalidArgument, "negative count");
  Rng rng(seed);
  std::vector<int> out(count);
  for (int& v : out) v = rng.Categorical(dist.weights());
  return out;
}

JointDistribution Mix(double weight, const JointDistribution& a,
                      const JointDistribution& b) {
  if (a.mode() != JointDistribution::Mode::kPairwise ||
      b.mode() != JointDistribution::Mode::kPairwise) {
    throw Error(ErrorCode::kWrongRank, "mixing needs pairwise joints");
  }
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "mixing joints of unequal shape");
  }
  std::vector<double> out(a.values().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = weight * a.values()[k] + (1.0 - weight) * b.values()[k];
  }
  return JointDistribution::Pairwise(a.rows(), a.cols(), std::move(out));
}

double MaxAbsDiff(const JointDistribution& a, const JointDistribution& b) {
  if (a.values().size() != b.values().size()) {
    throw Error(ErrorCode::kDimensionMismatch, "shape mismatch");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  }
  return m;
}

}  // namespace mip
