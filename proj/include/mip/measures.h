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

// Divergences, proper scoring rules and the mutual information measures
// built on them. All logarithms are natural; entropic values are in nats.
//
// Values that may be unbounded are returned as double with +infinity as the
// only non-finite value (ExtendedReal).

#ifndef MIP_MEASURES_H_
#define MIP_MEASURES_H_

#include <optional>
#include <string_view>
#include <utility>
#include <variant>

#include "mip/prob.h"

namespace mip {

using ExtendedReal = double;

inline constexpr double kDpiTol = 1e-10;
inline constexpr double kFineGrainedTol = 1e-9;

enum class Generator { kKL, kTVD, kChiSquared, kSquaredHellinger };

// Convex f with f(1) = 0, used as D_f(p, q) = sum_s p(s) f(q(s) / p(s)).
class ConvexGenerator {
 public:
  constexpr explicit ConvexGenerator(Generator kind) : kind_(kind) {}

  Generator kind() const { return kind_; }
  std::string_view name() const;
  // TVD is convex but not strictly convex.
  bool strictly_convex() const { return kind_ != Generator::kTVD; }

  double operator()(double x) const;
  // lim_{x -> 0+} f(x): the weight of a cell with p > 0, q = 0.
  double AtZero() const;
  // lim_{x -> inf} f(x) / x: the weight of a cell with p = 0, q > 0.
  double Slope() const;

  bool operator==(const ConvexGenerator&) const = default;

 private:
  Generator kind_;
};

inline constexpr ConvexGenerator kKL{Generator::kKL};
inline constexpr ConvexGenerator kTVD{Generator::kTVD};
inline constexpr ConvexGenerator kChiSquared{Generator::kChiSquared};
inline constexpr ConvexGenerator kSquaredHellinger{Generator::kSquaredHellinger};

enum class ScoringRule { kLog, kQuadratic };

std::string_view ScoringRuleName(ScoringRule rule);

// Either an f-mutual information or a Bregman mutual information.
using Measure = std::variant<ConvexGenerator, ScoringRule>;

std::string MeasureName(const Measure& measure);
// Accepts kl, tvd, chi2, hellinger (f-MI) and log, quadratic (Bregman MI).
std::optional<Measure> ParseMeasure(std::string_view name);

ExtendedReal FDivergence(const Distribution& p, const Distribution& q,
                         const ConvexGenerator& f);
// Same as FDivergence on flattened tables of equal shape.
ExtendedReal FDivergence(std::span<const double> p, std::span<const double> q,
                         const ConvexGenerator& f);

// PS(signal, report). Throws kLogOfZero for a Log score of a zero report.
double ProperScore(int signal, const Distribution& report, ScoringRule rule);
// Extended PS(p, q) = E_{s ~ p} PS(s, q).
double ExpectedScore(const Distribution& p, const Distribution& q,
                     ScoringRule rule);
double BregmanDivergence(const Distribution& p, const Distribution& q,
                         ScoringRule rule);

ExtendedReal FMutualInformation(const JointDistribution& joint,
                                const ConvexGenerator& f);
double ShannonMI(const JointDistribution& joint);
// E_X D_PS(Pr[Y|X], Pr[Y]), rows are X.
double BregmanMI(const JointDistribution& joint, ScoringRule rule);
ExtendedReal MutualInformation(const JointDistribution& joint,
                               const Measure& measure);

// sum_z Pr[Z=z] MI(X;Y | Z=z) over a (Z, X, Y) tensor.
ExtendedReal ConditionalMI(const JointDistribution& tensor,
                           const Measure& measure);
double ConditionalBregmanMI(const JointDistribution& tensor, ScoringRule rule);

struct Cell {
  int x = 0;
  int y = 0;
  bool operator==(const Cell&) const = default;
};

struct FineGrainedResult {
  bool fine_grained = false;
  // First violating pair in row-major scan order when not fine-grained.
  std::optional<std::pair<Cell, Cell>> witness;
};

FineGrainedResult IsFineGrained(const JointDistribution& joint,
                                double tol = kFineGrainedTol);

// Whether p, q can tell apart two entries that theta merges into a common
// output: the witness condition under which information monotonicity is
// strict for strictly convex f.
bool StrictMonotonicityWitness(std::span<const double> p,
                               std::span<const double> q,
                               const TransitionMatrix& theta,
                               double tol = kFineGrainedTol);
// The same condition for MI after M acts on X, i.e. theta = M (x) I.
bool StrictDpiWitness(const JointDistribution& joint,
                      const TransitionMatrix& channel,
                      double tol = kFineGrainedTol);

struct DpiReport {
  ExtendedReal before = 0.0;
  ExtendedReal after = 0.0;
  bool holds = false;
  bool strict = false;
};

DpiReport CheckDpi(const JointDistribution& joint,
                   const TransitionMatrix& channel, const Measure& measure,
                   double tol = kDpiTol);

}  // namespace mip

#endif  // MIP_MEASURES_H_
