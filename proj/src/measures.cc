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

#include "mip/measures.h"

#include <cmath>
#include <limits>
#include <string>

namespace mip {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void RequirePairwise(const JointDistribution& joint, const char* op) {
  if (joint.mode() != JointDistribution::Mode::kPairwise) {
    throw Error(ErrorCode::kWrongRank, std::string(op) + " needs a pairwise joint");
  }
}

void RequireConditional(const JointDistribution& tensor, const char* op) {
  if (tensor.mode() != JointDistribution::Mode::kConditional) {
    throw Error(ErrorCode::kWrongRank, std::string(op) + " needs a rank-3 tensor");
  }
}

// Pr[Y | X = x] for a row with positive mass.
Distribution RowConditional(const JointDistribution& joint, int x,
                            double row_mass) {
  std::vector<double> c(joint.cols());
  double total = 0.0;
  for (int y = 0; y < joint.cols(); ++y) {
    c[y] = joint.at(x, y) / row_mass;
    total += c[y];
  }
  for (double& v : c) v /= total;
  return Distribution(std::move(c));
}

}  // namespace

std::string_view ConvexGenerator::name() const {
  switch (kind_) {
    case Generator::kKL: return "kl";
    case Generator::kTVD: return "tvd";
    case Generator::kChiSquared: return "chi2";
    case Generator::kSquaredHellinger: return "hellinger";
  }
  return "?";
}

double ConvexGenerator::operator()(double x) const {
  switch (kind_) {
    case Generator::kKL: return x == 0.0 ? kInf : -std::log(x);
    case Generator::kTVD: return std::abs(x - 1.0);
    case Generator::kChiSquared: return (x - 1.0) * (x - 1.0);
    case Generator::kSquaredHellinger: {
      const double r = std::sqrt(x) - 1.0;
      return r * r;
    }
  }
  return 0.0;
}

double ConvexGenerator::AtZero() const {
  return kind_ == Generator::kKL ? kInf : 1.0;
}

double ConvexGenerator::Slope() const {
  switch (kind_) {
    case Generator::kKL: return 0.0;
    case Generator::kTVD: return 1.0;
    case Generator::kChiSquared: return kInf;
    case Generator::kSquaredHellinger: return 1.0;
  }
  return 0.0;
}

std::string_view ScoringRuleName(ScoringRule rule) {
  return rule == ScoringRule::kLog ? "log" : "quadratic";
}

std::string MeasureName(const Measure& measure) {
  if (const auto* f = std::get_if<ConvexGenerator>(&measure)) {
    return std::string(f->name());
  }
  return std::string(ScoringRuleName(std::get<ScoringRule>(measure)));
}

std::optional<Measure> ParseMeasure(std::string_view name) {
  if (name == "kl" || name == "shannon") return Measure{kKL};
  if (name == "tvd") return Measure{kTVD};
  if (name == "chi2") return Measure{kChiSquared};
  if (name == "hellinger") return Measure{kSquaredHellinger};
  if (name == "log") return Measure{ScoringRule::kLog};
  if (name == "quadratic" || name == "brier") return Measure{ScoringRule::kQuadratic};
  return std::nullopt;
}

ExtendedReal FDivergence(std::span<const double> p, std::span<const double> q,
                         const ConvexGenerator& f) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "divergence of unequal alphabets");
  }
  double sum = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    const double ps = p[s];
    const double qs = q[s];
    if (ps > 0.0 && qs > 0.0) {
      sum += ps * f(qs / ps);
    } else if (ps > 0.0) {
      sum += ps * f.AtZero();
    } else if (qs > 0.0) {
      // Perspective limit p f(q/p) -> q * f'(inf) as p -> 0.
      sum += f.Slope() == kInf ? kInf : qs * f.Slope();
    }
    if (sum == kInf) return kInf;
  }
  // Rounding can leave tiny negatives for near-identical inputs.
  return sum < 0.0 ? 0.0 : sum;
}

ExtendedReal FDivergence(const Distribution& p, const Distribution& q,
                         const ConvexGenerator& f) {
  return FDivergence(p.weights(), q.weights(), f);
}

double ProperScore(int signal, const Distribution& report, ScoringRule rule) {
  if (signal < 0 || signal >= report.size()) {
    throw Error(ErrorCode::kInvalidArgument, "signal out of range");
  }
  if (rule == ScoringRule::kLog) {
    if (report[signal] <= 0.0) {
      throw Error(ErrorCode::kLogOfZero,
                  "report assigns 0 to signal " + std::to_string(signal));
    }
    return std::log(report[signal]);
  }
  double sq = 0.0;
  for (double v : report.weights()) sq += v * v;
  return 2.0 * report[signal] - sq;
}

double ExpectedScore(const Distribution& p, const Distribution& q,
                     ScoringRule rule) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "score of unequal alphabets");
  }
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) s += p[i] * ProperScore(i, q, rule);
  }
  return s;
}

double BregmanDivergence(const Distribution& p, const Distribution& q,
                         ScoringRule rule) {
  const double d = ExpectedScore(p, p, rule) - ExpectedScore(p, q, rule);
  return d < 0.0 ? 0.0 : d;
}

ExtendedReal FMutualInformation(const JointDistribution& joint,
                                const ConvexGenerator& f) {
  RequirePairwise(joint, "f-mutual information");
  const JointDistribution v = ProductOfMarginals(joint);
  return FDivergence(joint.values(), v.values(), f);
}

double ShannonMI(const JointDistribution& joint) {
  const double mi = FMutualInformation(joint, kKL);
  // U > 0 implies V > 0, so the KL orientation D(U, V) is always finite.
  if (!std::isfinite(mi)) {
    throw Error(ErrorCode::kInadmissibleSupport, "Shannon MI diverged");
  }
  return mi;
}

double BregmanMI(const JointDistribution& joint, ScoringRule rule) {
  RequirePairwise(joint, "Bregman mutual information");
  auto [px, py] = Marginals(joint);
  double total = 0.0;
  for (int x = 0; x < joint.rows(); ++x) {
    if (px[x] <= 0.0) continue;
    const Distribution posterior = RowConditional(joint, x, px[x]);
    try {
      total += px[x] * BregmanDivergence(posterior, py, rule);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kLogOfZero) throw;
      throw Error(ErrorCode::kInadmissibleSupport,
                  "posterior puts mass where the prior has none");
    }
  }
  return total;
}

ExtendedReal MutualInformation(const JointDistribution& joint,
                               const Measure& measure) {
  if (const auto* f = std::get_if<ConvexGenerator>(&measure)) {
    return FMutualInformation(joint, *f);
  }
  return BregmanMI(joint, std::get<ScoringRule>(measure));
}

ExtendedReal ConditionalMI(const JointDistribution& tensor,
                           const Measure& measure) {
  RequireConditional(tensor, "conditional MI");
  double total = 0.0;
  for (int z = 0; z < tensor.z_size(); ++z) {
    const double mass = ZMass(tensor, z);
    if (mass <= 0.0) continue;
    const double mi = MutualInformation(ConditionOn(tensor, z), measure);
    if (mi == kInf) return kInf;
    total += mass * mi;
  }
  return total;
}

double ConditionalBregmanMI(const JointDistribution& tensor, ScoringRule rule) {
  return ConditionalMI(tensor, Measure{rule});
}

FineGrainedResult IsFineGrained(const JointDistribution& joint, double tol) {
  RequirePairwise(joint, "fine-grained check");
  const JointDistribution v = ProductOfMarginals(joint);
  const int rows = joint.rows();
  const int cols = joint.cols();
  const int cells = rows * cols;
  auto cell_of = [cols](int k) { return Cell{k / cols, k % cols}; };
  for (int a = 0; a < cells; ++a) {
    for (int b = a + 1; b < cells; ++b) {
      const double ua = joint.values()[a];
      const double ub = joint.values()[b];
      bool ok = ua > tol && ub > tol;
      if (ok) {
        const double ra = v.values()[a] / ua;
        const double rb = v.values()[b] / ub;
        ok = std::abs(ra - rb) > tol;
      }
      if (!ok) return {false, std::make_pair(cell_of(a), cell_of(b))};
    }
  }
  return {true, std::nullopt};
}

bool StrictMonotonicityWitness(std::span<const double> p,
                               std::span<const double> q,
                               const TransitionMatrix& theta, double tol) {
  if (p.size() != q.size() || static_cast<int>(p.size()) != theta.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "witness dimensions");
  }
  const int n = theta.rows();
  for (int out = 0; out < theta.cols(); ++out) {
    for (int a = 0; a < n; ++a) {
      if (theta.at(a, out) <= 0.0 || p[a] <= tol) continue;
      for (int b = a + 1; b < n; ++b) {
        if (theta.at(b, out) <= 0.0 || p[b] <= tol) continue;
        if (std::abs(q[a] / p[a] - q[b] / p[b]) > tol) return true;
      }
    }
  }
  return false;
}

bool StrictDpiWitness(const JointDistribution& joint,
                      const TransitionMatrix& channel, double tol) {
  RequirePairwise(joint, "DPI witness");
  if (channel.rows() != joint.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "channel rows != X alphabet size");
  }
  // theta((x, y), (x', y')) = M(x, x') [y == y'], so only cells sharing a
  // column can be merged.
  const JointDistribution v = ProductOfMarginals(joint);
  for (int y = 0; y < joint.cols(); ++y) {
    for (int out = 0; out < channel.cols(); ++out) {
      for (int a = 0; a < joint.rows(); ++a) {
        const double ua = joint.at(a, y);
        if (channel.at(a, out) <= 0.0 || ua <= tol) continue;
        for (int b = a + 1; b < joint.rows(); ++b) {
          const double ub = joint.at(b, y);
          if (channel.at(b, out) <= 0.0 || ub <= tol) continue;
          if (std::abs(v.at(a, y) / ua - v.at(b, y) / ub) > tol) return true;
        }
      }
    }
  }
  return false;
}

DpiReport CheckDpi(const JointDistribution& joint,
                   const TransitionMatrix& channel, const Measure& measure,
                   double tol) {
  DpiReport r;
  r.before = MutualInformation(joint, measure);
  r.after = MutualInformation(PushFirst(joint, channel), measure);
  if (r.before == kInf) {
    r.holds = true;
    r.strict = r.after != kInf;
  } else {
    r.holds = r.after <= r.before + tol;
    r.strict = r.before - r.after > tol;
  }
  return r;
}

}  // namespace mip
