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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mip {
namespace {

bool IsIdentity(const Permutation& perm) {
  for (int i = 0; i < static_cast<int>(perm.size()); ++i) {
    if (perm[i] != i) return false;
  }
  return true;
}

Permutation IdentityPermutation(int m) {
  Permutation p(m);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Distribution RelabelDistribution(const Distribution& d, const Permutation& p) {
  std::vector<double> out(d.size());
  for (int s = 0; s < d.size(); ++s) out[p[s]] = d[s];
  return Distribution(std::move(out));
}

// Strides for a row-major m^n table with agent 0 most significant.
std::vector<int> Strides(int n, int m) {
  std::vector<int> strides(n, 1);
  for (int a = n - 2; a >= 0; --a) strides[a] = strides[a + 1] * m;
  return strides;
}

}  // namespace

Permutation InversePermutation(const Permutation& perm) {
  Permutation inv(perm.size());
  for (int i = 0; i < static_cast<int>(perm.size()); ++i) inv[perm[i]] = i;
  return inv;
}

bool IsPermutation(const Permutation& perm, int m) {
  if (static_cast<int>(perm.size()) != m) return false;
  std::vector<bool> seen(m, false);
  for (int v : perm) {
    if (v < 0 || v >= m || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

PermutationList::PermutationList(std::vector<Permutation> perms, int m)
    : perms_(std::move(perms)), m_(m) {
  for (const auto& p : perms_) {
    if (!IsPermutation(p, m)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "permutation list entry is not a permutation of the alphabet");
    }
  }
}

PermutationList PermutationList::Identity(int n, int m) {
  return PermutationList(std::vector<Permutation>(n, IdentityPermutation(m)), m);
}

PermutationList PermutationList::Symmetric(const Permutation& perm, int n) {
  return PermutationList(std::vector<Permutation>(n, perm),
                         static_cast<int>(perm.size()));
}

bool PermutationList::symmetric() const {
  return std::all_of(perms_.begin(), perms_.end(),
                     [this](const Permutation& p) { return p == perms_[0]; });
}

PermutationList PermutationList::Inverse() const {
  std::vector<Permutation> inv;
  inv.reserve(perms_.size());
  for (const auto& p : perms_) inv.push_back(InversePermutation(p));
  return PermutationList(std::move(inv), m_);
}

PermutationList PermutationList::Compose(const PermutationList& other) const {
  if (other.agents() != agents() || other.m_ != m_) {
    throw Error(ErrorCode::kDimensionMismatch, "composing unequal lists");
  }
  std::vector<Permutation> out(perms_.size(), Permutation(m_));
  for (int i = 0; i < agents(); ++i) {
    for (int s = 0; s < m_; ++s) out[i][s] = perms_[i][other.perms_[i][s]];
  }
  return PermutationList(std::move(out), m_);
}

Prior Prior::Pairwise(JointDistribution joint, bool symmetric) {
  if (joint.mode() != JointDistribution::Mode::kPairwise) {
    throw Error(ErrorCode::kWrongRank, "pairwise prior needs a pairwise joint");
  }
  if (joint.rows() != joint.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "pairwise prior must be square");
  }
  if (symmetric && MaxAbsDiff(joint, joint.Transposed()) > kIdentityTol) {
    throw Error(ErrorCode::kInvalidArgument,
                "prior flagged symmetric but Q != Q^T");
  }
  Prior p;
  p.mode_ = Mode::kPairwise;
  p.m_ = joint.rows();
  p.symmetric_ = symmetric;
  p.joint_ = std::move(joint);
  return p;
}

Prior Prior::FullJoint(int agents, int m, std::vector<double> table) {
  if (agents < 2) throw Error(ErrorCode::kInvalidArgument, "need >= 2 agents");
  if (agents > 6) {
    throw Error(ErrorCode::kInvalidArgument, "full joints are limited to 6 agents");
  }
  std::size_t expected = 1;
  for (int a = 0; a < agents; ++a) expected *= m;
  if (table.size() != expected) {
    throw Error(ErrorCode::kDimensionMismatch, "full joint table size != m^n");
  }
  // Reuses the table validation of Distribution.
  Distribution check(table);
  Prior p;
  p.mode_ = Mode::kFullJoint;
  p.m_ = m;
  p.symmetric_ = false;
  p.agents_ = agents;
  p.table_ = std::move(table);
  return p;
}

Prior Prior::WorldModel(Distribution world, std::vector<Distribution> states) {
  if (static_cast<int>(states.size()) != world.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "one signal distribution per world state is required");
  }
  const int m = states.front().size();
  for (const auto& s : states) {
    if (s.size() != m) {
      throw Error(ErrorCode::kDimensionMismatch, "state alphabets differ");
    }
  }
  Prior p;
  p.mode_ = Mode::kWorldModel;
  p.m_ = m;
  p.world_ = std::move(world);
  p.states_ = std::move(states);
  return p;
}

std::string_view Prior::mode_name() const {
  switch (mode_) {
    case Mode::kPairwise: return "pairwise";
    case Mode::kFullJoint: return "full_joint";
    case Mode::kWorldModel: return "world_model";
  }
  return "?";
}

std::optional<int> Prior::agents() const {
  if (mode_ == Mode::kFullJoint) return agents_;
  return std::nullopt;
}

int Prior::Relabel(int agent, int s) const {
  if (agent >= static_cast<int>(relabels_.size())) return s;
  return relabels_[agent][s];
}

Distribution Prior::StateFor(int i, int w) const {
  if (mode_ != Mode::kWorldModel) {
    throw Error(ErrorCode::kModeMismatch, "world states need a world model");
  }
  if (i < static_cast<int>(relabels_.size())) {
    return RelabelDistribution(states_[w], relabels_[i]);
  }
  return states_[w];
}

JointDistribution Prior::PairJoint(int i, int j) const {
  if (i == j || i < 0 || j < 0) {
    throw Error(ErrorCode::kInvalidArgument, "pair joint needs distinct agents");
  }
  std::vector<double> out(m_ * m_, 0.0);
  switch (mode_) {
    case Mode::kPairwise: {
      for (int a = 0; a < m_; ++a) {
        for (int b = 0; b < m_; ++b) {
          const double v = i < j ? joint_.at(a, b) : joint_.at(b, a);
          out[Relabel(i, a) * m_ + Relabel(j, b)] = v;
        }
      }
      break;
    }
    case Mode::kFullJoint: {
      if (i >= agents_ || j >= agents_) {
        throw Error(ErrorCode::kInvalidArgument, "agent outside the full joint");
      }
      const auto strides = Strides(agents_, m_);
      for (std::size_t idx = 0; idx < table_.size(); ++idx) {
        const int a = static_cast<int>(idx / strides[i]) % m_;
        const int b = static_cast<int>(idx / strides[j]) % m_;
        out[a * m_ + b] += table_[idx];
      }
      break;
    }
    case Mode::kWorldModel: {
      for (int w = 0; w < world_.size(); ++w) {
        const Distribution si = StateFor(i, w);
        const Distribution sj = StateFor(j, w);
        for (int a = 0; a < m_; ++a) {
          for (int b = 0; b < m_; ++b) out[a * m_ + b] += world_[w] * si[a] * sj[b];
        }
      }
      break;
    }
  }
  return JointDistribution::Pairwise(m_, m_, std::move(out));
}

Distribution Prior::SignalMarginal(int i) const {
  if (mode_ == Mode::kWorldModel) {
    std::vector<double> out(m_, 0.0);
    for (int w = 0; w < world_.size(); ++w) {
      const Distribution s = StateFor(i, w);
      for (int a = 0; a < m_; ++a) out[a] += world_[w] * s[a];
    }
    return Distribution(std::move(out));
  }
  return Marginals(PairJoint(i, i == 0 ? 1 : 0)).first;
}

Prior Prior::Relabeled(const PermutationList& perms) const {
  if (perms.alphabet_size() != m_) {
    throw Error(ErrorCode::kDimensionMismatch, "permutation alphabet != prior alphabet");
  }
  Prior out = *this;
  if (mode_ == Mode::kFullJoint) {
    if (perms.agents() != agents_) {
      throw Error(ErrorCode::kDimensionMismatch, "permutation list length != agents");
    }
    const auto strides = Strides(agents_, m_);
    for (std::size_t idx = 0; idx < table_.size(); ++idx) {
      std::size_t target = 0;
      for (int a = 0; a < agents_; ++a) {
        const int s = static_cast<int>(idx / strides[a]) % m_;
        target += static_cast<std::size_t>(perms[a][s]) * strides[a];
      }
      out.table_[target] = table_[idx];
    }
    return out;
  }

  if (perms.agents() > 0 && perms.symmetric() && relabels_.empty()) {
    const Permutation& p = perms[0];
    if (mode_ == Mode::kPairwise) {
      std::vector<double> t(m_ * m_);
      for (int a = 0; a < m_; ++a) {
        for (int b = 0; b < m_; ++b) t[p[a] * m_ + p[b]] = joint_.at(a, b);
      }
      out.joint_ = JointDistribution::Pairwise(m_, m_, std::move(t));
    } else {
      for (auto& s : out.states_) s = RelabelDistribution(s, p);
    }
    return out;
  }

  const int n = std::max(perms.agents(), static_cast<int>(relabels_.size()));
  out.relabels_.assign(n, IdentityPermutation(m_));
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < m_; ++s) {
      const int inner = Relabel(i, s);
      out.relabels_[i][s] = i < perms.agents() ? perms[i][inner] : inner;
    }
  }
  if (std::all_of(out.relabels_.begin(), out.relabels_.end(), IsIdentity)) {
    out.relabels_.clear();
  }
  return out;
}

Prior Prior::WithRelabels(std::vector<Permutation> relabels) const {
  if (mode_ == Mode::kFullJoint && !relabels.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "full joints carry no relabelings");
  }
  for (const auto& p : relabels) {
    if (!IsPermutation(p, m_)) {
      throw Error(ErrorCode::kInvalidArgument, "relabeling is not a permutation");
    }
  }
  Prior out = *this;
  out.relabels_ = std::move(relabels);
  if (std::all_of(out.relabels_.begin(), out.relabels_.end(), IsIdentity)) {
    out.relabels_.clear();
  }
  return out;
}

bool Prior::generative(int n) const {
  switch (mode_) {
    case Mode::kPairwise: return n == 2;
    case Mode::kFullJoint: return n == agents_;
    case Mode::kWorldModel: return n >= 1;
  }
  return false;
}

std::vector<int> Prior::SampleSignals(int n, Rng& rng) const {
  if (!generative(n)) {
    throw Error(ErrorCode::kUnsupportedPriorMode,
                std::string(mode_name()) + " prior cannot generate " +
                    std::to_string(n) + " agents' signals");
  }
  std::vector<int> out(n);
  switch (mode_) {
    case Mode::kPairwise: {
      const int cell = rng.Categorical(joint_.values());
      out[0] = Relabel(0, cell / m_);
      out[1] = Relabel(1, cell % m_);
      break;
    }
    case Mode::kFullJoint: {
      const int idx = rng.Categorical(table_);
      const auto strides = Strides(agents_, m_);
      for (int a = 0; a < n; ++a) out[a] = (idx / strides[a]) % m_;
      break;
    }
    case Mode::kWorldModel: {
      const int w = rng.Categorical(world_.weights());
      for (int a = 0; a < n; ++a) {
        out[a] = Relabel(a, rng.Categorical(states_[w].weights()));
      }
      break;
    }
  }
  return out;
}

Strategy Strategy::Truth(int m) {
  return {TransitionMatrix::Identity(m), "truth"};
}

Strategy Strategy::FromPermutation(const Permutation& perm) {
  return {TransitionMatrix::FromPermutation(perm),
          IsIdentity(perm) ? "truth" : "permutation"};
}

Strategy Strategy::Constant(const Distribution& report, int m) {
  std::vector<double> e;
  e.reserve(m * report.size());
  for (int i = 0; i < m; ++i) {
    e.insert(e.end(), report.weights().begin(), report.weights().end());
  }
  return {TransitionMatrix(m, report.size(), std::move(e)), "constant"};
}

EffortStrategy EffortStrategy::Make(double lambda, double cost,
                                    Distribution no_effort_report) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must lie in [0, 1]");
  }
  if (!(cost >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "effort cost must be >= 0");
  }
  return {lambda, cost, std::move(no_effort_report)};
}

EffortStrategy EffortStrategy::Full(int m, double cost) {
  return Make(1.0, cost, Distribution::Uniform(m));
}

int Scenario::alphabet_size() const {
  return priors.empty() ? 0 : priors.front().alphabet_size();
}

const Prior& Scenario::PriorFor(int agent) const {
  return priors.size() == 1 ? priors.front() : priors.at(agent);
}

const EffortStrategy* Scenario::EffortFor(int agent) const {
  return efforts.empty() ? nullptr : &efforts.at(agent);
}

void Scenario::Validate() const {
  const int n = agents();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 agents");
  if (priors.size() != 1 && static_cast<int>(priors.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "need one common prior or one prior per agent");
  }
  const int m = alphabet_size();
  for (const auto& p : priors) {
    if (p.alphabet_size() != m) {
      throw Error(ErrorCode::kDimensionMismatch, "prior alphabets differ");
    }
    if (p.agents() && *p.agents() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "full joint agent count != agents");
    }
  }
  for (const auto& s : strategies) {
    if (s.channel.rows() != m) {
      throw Error(ErrorCode::kDimensionMismatch, "strategy input alphabet != m");
    }
    if (s.channel.cols() != strategies.front().channel.cols()) {
      throw Error(ErrorCode::kDimensionMismatch, "report alphabets differ");
    }
  }
  if (!efforts.empty()) {
    if (static_cast<int>(efforts.size()) != n) {
      throw Error(ErrorCode::kDimensionMismatch, "one effort entry per agent");
    }
    for (const auto& e : efforts) {
      if (e.no_effort_report.size() != strategies.front().channel.cols()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "no-effort report alphabet != report alphabet");
      }
    }
  }
}

Scenario Scenario::Common(Prior prior, std::vector<Strategy> strategies,
                          std::vector<EffortStrategy> efforts) {
  Scenario s{{std::move(prior)}, std::move(strategies), std::move(efforts)};
  s.Validate();
  return s;
}

ReportMatrix::ReportMatrix(int agents, int questions, int alphabet)
    : agents_(agents),
      questions_(questions),
      alphabet_(alphabet),
      entries_(static_cast<std::size_t>(agents) * questions, 0),
      mask_(static_cast<std::size_t>(agents) * questions, 0) {
  if (agents < 0 || questions < 0 || alphabet <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "bad report matrix shape");
  }
}

ReportMatrix ReportMatrix::FromRows(const std::vector<std::vector<int>>& rows,
                                    int alphabet) {
  const int t = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  ReportMatrix r(static_cast<int>(rows.size()), t, alphabet);
  for (int i = 0; i < r.agents(); ++i) {
    if (static_cast<int>(rows[i].size()) != t) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged report rows");
    }
    for (int k = 0; k < t; ++k) r.Set(i, k, rows[i][k]);
  }
  return r;
}

void ReportMatrix::Set(int agent, int question, int signal) {
  if (signal < 0 || signal >= alphabet_) {
    throw Error(ErrorCode::kInvalidArgument, "report outside the alphabet");
  }
  entries_[agent * questions_ + question] = signal;
  mask_[agent * questions_ + question] = 1;
}

void ReportMatrix::ClearAnswer(int agent, int question) {
  entries_[agent * questions_ + question] = 0;
  mask_[agent * questions_ + question] = 0;
}

std::vector<int> ReportMatrix::Answered(int agent) const {
  std::vector<int> out;
  for (int k = 0; k < questions_; ++k) {
    if (answered(agent, k)) out.push_back(k);
  }
  return out;
}

std::vector<int> ReportMatrix::Shared(int i, int j) const {
  std::vector<int> out;
  for (int k = 0; k < questions_; ++k) {
    if (answered(i, k) && answered(j, k)) out.push_back(k);
  }
  return out;
}

JointDistribution ReportJoint(const Prior& prior, int i, int j,
                              const Strategy& si, const Strategy& sj,
                              const EffortStrategy* eff_i,
                              const EffortStrategy* eff_j) {
  if (si.channel.rows() != prior.alphabet_size() ||
      sj.channel.rows() != prior.alphabet_size()) {
    throw Error(ErrorCode::kDimensionMismatch, "strategy alphabet != prior alphabet");
  }
  const JointDistribution q = prior.PairJoint(i, j);
  const JointDistribution full = PushSecond(PushFirst(q, si.channel), sj.channel);
  const double li = eff_i ? eff_i->lambda : 1.0;
  const double lj = eff_j ? eff_j->lambda : 1.0;
  if (li == 1.0 && lj == 1.0) return full;

  auto [ri, rj] = Marginals(full);
  const Distribution& xi = eff_i ? eff_i->no_effort_report : ri;
  const Distribution& xj = eff_j ? eff_j->no_effort_report : rj;
  if (xi.size() != ri.size() || xj.size() != rj.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "no-effort report alphabet");
  }
  const JointDistribution ei_nj = JointDistribution::Product(ri, xj);
  const JointDistribution ni_ej = JointDistribution::Product(xi, rj);
  const JointDistribution ni_nj = JointDistribution::Product(xi, xj);
  std::vector<double> out(full.values().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = li * lj * full.values()[k] + li * (1 - lj) * ei_nj.values()[k] +
             (1 - li) * lj * ni_ej.values()[k] +
             (1 - li) * (1 - lj) * ni_nj.values()[k];
  }
  return JointDistribution::Pairwise(full.rows(), full.cols(), std::move(out));
}

JointDistribution ReportJoint(const Scenario& scenario, int i, int j) {
  return ReportJoint(scenario.PriorFor(i), i, j, scenario.strategies.at(i),
                     scenario.strategies.at(j), scenario.EffortFor(i),
                     scenario.EffortFor(j));
}

WorldTensor BuildWorldTensor(const Prior& prior,
                             const std::vector<Strategy>& strategies,
                             int reference) {
  if (prior.mode() != Prior::Mode::kWorldModel) {
    throw Error(ErrorCode::kModeMismatch, "world tensor needs a world model prior");
  }
  if (strategies.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no strategies");
  }
  const int m = prior.alphabet_size();
  const int worlds = prior.world().size();
  const int r = strategies.front().channel.cols();
  const int n = static_cast<int>(strategies.size());

  WorldTensor out;
  for (int w = 0; w < worlds; ++w) {
    std::vector<double> agg(r, 0.0);
    for (int i = 0; i < n; ++i) {
      const Distribution rep = ApplyChannel(prior.StateFor(i, w), strategies[i].channel);
      for (int y = 0; y < r; ++y) agg[y] += rep[y] / n;
    }
    out.reported_states.push_back(MakeDistribution(agg));
  }
  std::vector<double> t(static_cast<std::size_t>(m) * worlds * r, 0.0);
  for (int w = 0; w < worlds; ++w) {
    const Distribution ref = prior.StateFor(reference, w);
    for (int z = 0; z < m; ++z) {
      for (int y = 0; y < r; ++y) {
        t[(z * worlds + w) * r + y] =
            prior.world()[w] * ref[z] * out.reported_states[w][y];
      }
    }
  }
  out.tensor = JointDistribution::Conditional(m, worlds, r, std::move(t));
  return out;
}

JointDistribution WorldSignalTensor(const Prior& prior, int reference, int other) {
  if (prior.mode() != Prior::Mode::kWorldModel) {
    throw Error(ErrorCode::kModeMismatch, "world tensor needs a world model prior");
  }
  const int m = prior.alphabet_size();
  const int worlds = prior.world().size();
  std::vector<double> t(static_cast<std::size_t>(m) * worlds * m, 0.0);
  for (int w = 0; w < worlds; ++w) {
    const Distribution ref = prior.StateFor(reference, w);
    const Distribution oth = prior.StateFor(other, w);
    for (int z = 0; z < m; ++z) {
      for (int y = 0; y < m; ++y) {
        t[(z * worlds + w) * m + y] = prior.world()[w] * ref[z] * oth[y];
      }
    }
  }
  return JointDistribution::Conditional(m, worlds, m, std::move(t));
}

ReportMatrix GenerateReports(const Scenario& scenario, int questions,
                             RngSeed seed) {
  scenario.Validate();
  if (questions < 0) throw Error(ErrorCode::kInvalidArgument, "negative T");
  if (scenario.priors.size() != 1) {
    throw Error(ErrorCode::kUnsupportedPriorMode,
                "sampling needs a single common prior");
  }
  const Prior& prior = scenario.priors.front();
  const int n = scenario.agents();
  if (!prior.generative(n)) {
    throw Error(ErrorCode::kUnsupportedPriorMode,
                std::string(prior.mode_name()) +
                    " prior is not generative for this many agents");
  }
  const int r = scenario.strategies.front().channel.cols();
  ReportMatrix reports(n, questions, r);
  Rng rng(seed);
  for (int k = 0; k < questions; ++k) {
    const std::vector<int> signals = prior.SampleSignals(n, rng);
    for (int i = 0; i < n; ++i) {
      const EffortStrategy* eff = scenario.EffortFor(i);
      const bool effort = eff == nullptr || rng.Uniform() < eff->lambda;
      const int report =
          effort ? rng.Categorical(scenario.strategies[i].channel.row(signals[i]))
                 : rng.Categorical(eff->no_effort_report.weights());
      reports.Set(i, k, report);
    }
  }
  return reports;
}

JointDistribution EmpiricalPairJoint(const ReportMatrix& reports, int i, int j) {
  const int m = reports.alphabet_size();
  std::vector<double> counts(m * m, 0.0);
  int shared = 0;
  for (int k = 0; k < reports.questions(); ++k) {
    if (!reports.answered(i, k) || !reports.answered(j, k)) continue;
    counts[reports.at(i, k) * m + reports.at(j, k)] += 1.0;
    ++shared;
  }
  if (shared == 0) {
    throw Error(ErrorCode::kNoOverlap, "agents " + std::to_string(i) + " and " +
                                           std::to_string(j) +
                                           " share no answered question");
  }
  for (double& c : counts) c /= shared;
  return JointDistribution::Pairwise(m, m, std::move(counts));
}

Strategy PermuteStrategy(const Strategy& strategy, const Permutation& perm) {
  const TransitionMatrix& c = strategy.channel;
  if (static_cast<int>(perm.size()) != c.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "permutation size != strategy inputs");
  }
  std::vector<double> e;
  e.reserve(c.entries().size());
  for (int s = 0; s < c.rows(); ++s) {
    const auto row = c.row(perm[s]);
    e.insert(e.end(), row.begin(), row.end());
  }
  TransitionMatrix out(c.rows(), c.cols(), std::move(e));
  std::string label = strategy.label;
  if (out.is_identity()) {
    label = "truth";
  } else if (label == "truth") {
    label = "permutation";
  }
  return {std::move(out), std::move(label)};
}

Scenario PermuteScenario(const Scenario& scenario, const PermutationList& perms) {
  scenario.Validate();
  if (perms.agents() != scenario.agents() ||
      perms.alphabet_size() != scenario.alphabet_size()) {
    throw Error(ErrorCode::kDimensionMismatch, "permutation list does not fit scenario");
  }
  const PermutationList inverse = perms.Inverse();
  Scenario out;
  for (const auto& p : scenario.priors) out.priors.push_back(p.Relabeled(inverse));
  for (int i = 0; i < scenario.agents(); ++i) {
    out.strategies.push_back(PermuteStrategy(scenario.strategies[i], perms[i]));
  }
  out.efforts = scenario.efforts;
  return out;
}

Permutation RandomPermutation(Rng& rng, int m) {
  Permutation p = IdentityPermutation(m);
  rng.Shuffle(p);
  return p;
}

Strategy RandomStrategy(Rng& rng, int m, StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kDense: {
      std::vector<double> e;
      for (int s = 0; s < m; ++s) {
        const auto row = rng.Simplex(m);
        e.insert(e.end(), row.begin(), row.end());
      }
      return {TransitionMatrix(m, m, std::move(e)), "dense"};
    }
    case StrategyKind::kSparse: {
      std::vector<double> e(m * m, 0.0);
      for (int s = 0; s < m; ++s) {
        Permutation order = RandomPermutation(rng, m);
        const int support = 1 + rng.Index(m);
        const auto w = rng.Simplex(support);
        for (int k = 0; k < support; ++k) e[s * m + order[k]] = w[k];
      }
      Strategy out{TransitionMatrix(m, m, std::move(e)), "sparse"};
      if (out.channel.is_permutation()) {
        out.label = out.channel.is_identity() ? "truth" : "permutation";
      }
      return out;
    }
    case StrategyKind::kPermutation:
      return Strategy::FromPermutation(RandomPermutation(rng, m));
    case StrategyKind::kConstant:
      return Strategy::Constant(Distribution(rng.Simplex(m)), m);
  }
  return Strategy::Truth(m);
}

Strategy RandomStrategy(RngSeed seed, int m, StrategyKind kind) {
  Rng rng(seed);
  return RandomStrategy(rng, m, kind);
}

Strategy RandomMixedStrategy(Rng& rng, int m) {
  const double u = rng.Uniform();
  if (u < 0.4) return RandomStrategy(rng, m, StrategyKind::kDense);
  if (u < 0.6) return RandomStrategy(rng, m, StrategyKind::kSparse);
  if (u < 0.8) return RandomStrategy(rng, m, StrategyKind::kPermutation);
  return RandomStrategy(rng, m, StrategyKind::kConstant);
}

const TransitionMatrix& PriorIndexedStrategy::Resolve(const Prior& prior) const {
  for (const auto& [key, channel] : entries) {
    if (key == prior) return channel;
  }
  return fallback;
}

PriorIndexedStrategy PriorIndexedStrategy::Permuted(const PermutationList& perms,
                                                    int agent) const {
  const PermutationList inverse = perms.Inverse();
  PriorIndexedStrategy out;
  for (const auto& [key, channel] : entries) {
    out.entries.emplace_back(key.Relabeled(inverse),
                             PermuteStrategy({channel, ""}, perms[agent]).channel);
  }
  out.fallback = PermuteStrategy({fallback, ""}, perms[agent]).channel;
  return out;
}

}  // namespace mip
