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

// Agent models: priors over private signals, reporting strategies, the
// zero-one effort model, and the permutation-list operators that relabel a
// whole scenario.

#ifndef MIP_AGENTS_H_
#define MIP_AGENTS_H_

#include <optional>
#include <string>
#include <vector>

#include "mip/prob.h"

namespace mip {

using Permutation = std::vector<int>;

Permutation InversePermutation(const Permutation& perm);
bool IsPermutation(const Permutation& perm, int m);

// One permutation of the signal alphabet per agent.
class PermutationList {
 public:
  PermutationList() = default;
  PermutationList(std::vector<Permutation> perms, int m);

  static PermutationList Identity(int n, int m);
  static PermutationList Symmetric(const Permutation& perm, int n);

  int agents() const { return static_cast<int>(perms_.size()); }
  int alphabet_size() const { return m_; }
  const Permutation& operator[](int i) const { return perms_[i]; }
  TransitionMatrix Matrix(int i) const {
    return TransitionMatrix::FromPermutation(perms_[i]);
  }
  bool symmetric() const;

  PermutationList Inverse() const;
  // (this . other)_i(s) = this_i(other_i(s)).
  PermutationList Compose(const PermutationList& other) const;

 private:
  std::vector<Permutation> perms_;
  int m_ = 0;
};

// Agents' belief model over private signals.
//
// Every mode can carry a per-agent relabeling: agent i observes
// relabel_i(s) where s is the signal drawn from the base model. Symmetric
// relabelings are folded into the base tables so that permuting a
// symmetric prior by a symmetric list yields a plain prior again.
class Prior {
 public:
  enum class Mode { kPairwise, kFullJoint, kWorldModel };

  // Q(Psi_i, Psi_j) = joint for i < j and its transpose for i > j.
  static Prior Pairwise(JointDistribution joint, bool symmetric = true);
  // Distribution over signal tuples, row-major with agent 0 most significant.
  static Prior FullJoint(int agents, int m, std::vector<double> table);
  // Signals are i.i.d. from the state distribution given the world state.
  static Prior WorldModel(Distribution world, std::vector<Distribution> states);

  Mode mode() const { return mode_; }
  std::string_view mode_name() const;
  int alphabet_size() const { return m_; }
  // Fixed agent count for full joints.
  std::optional<int> agents() const;
  bool symmetric_flag() const { return symmetric_; }

  const JointDistribution& pairwise_joint() const { return joint_; }
  std::span<const double> full_table() const { return table_; }
  const Distribution& world() const { return world_; }
  const std::vector<Distribution>& states() const { return states_; }
  const std::vector<Permutation>& relabels() const { return relabels_; }

  // Joint of (Psi_i, Psi_j), i != j.
  JointDistribution PairJoint(int i, int j) const;
  Distribution SignalMarginal(int i) const;
  // Agent i's signal distribution given world state w (world model only).
  Distribution StateFor(int i, int w) const;

  // The prior whose signals are perms_i applied to this prior's signals:
  // result(perms_1(s_1), ..., perms_n(s_n)) = this(s_1, ..., s_n).
  Prior Relabeled(const PermutationList& perms) const;
  // The same base model with exactly these per-agent relabelings (used when
  // loading files); all-identity lists are dropped.
  Prior WithRelabels(std::vector<Permutation> relabels) const;

  // Whether signal tuples for n agents can be sampled.
  bool generative(int n) const;
  std::vector<int> SampleSignals(int n, Rng& rng) const;

  bool operator==(const Prior&) const = default;

 private:
  int Relabel(int agent, int s) const;

  Mode mode_ = Mode::kPairwise;
  int m_ = 0;
  bool symmetric_ = true;
  JointDistribution joint_;
  int agents_ = 0;
  std::vector<double> table_;
  Distribution world_;
  std::vector<Distribution> states_;
  std::vector<Permutation> relabels_;
};

struct Strategy {
  TransitionMatrix channel;
  std::string label;

  static Strategy Truth(int m);
  static Strategy FromPermutation(const Permutation& perm);
  // Signal-independent reporting.
  static Strategy Constant(const Distribution& report, int m);

  int alphabet_size() const { return channel.rows(); }
  bool is_truth() const { return channel.is_identity(); }
  bool is_permutation() const { return channel.is_permutation(); }
};

// Zero-one effort: full effort with probability lambda at the given cost,
// otherwise an independent report drawn from no_effort_report.
struct EffortStrategy {
  double lambda = 1.0;
  double cost = 0.0;
  Distribution no_effort_report;

  static EffortStrategy Make(double lambda, double cost,
                             Distribution no_effort_report);
  static EffortStrategy Full(int m, double cost = 0.0);
};

struct Scenario {
  // A single common prior or one prior per agent.
  std::vector<Prior> priors;
  std::vector<Strategy> strategies;
  // Empty, or one entry per agent.
  std::vector<EffortStrategy> efforts;

  int agents() const { return static_cast<int>(strategies.size()); }
  int alphabet_size() const;
  const Prior& PriorFor(int agent) const;
  const EffortStrategy* EffortFor(int agent) const;
  void Validate() const;

  static Scenario Common(Prior prior, std::vector<Strategy> strategies,
                         std::vector<EffortStrategy> efforts = {});
};

// n agents by T questions of reported signals, with an answered mask.
class ReportMatrix {
 public:
  ReportMatrix() = default;
  ReportMatrix(int agents, int questions, int alphabet);
  // Fully answered matrix from explicit rows.
  static ReportMatrix FromRows(const std::vector<std::vector<int>>& rows,
                               int alphabet);

  int agents() const { return agents_; }
  int questions() const { return questions_; }
  int alphabet_size() const { return alphabet_; }

  int at(int agent, int question) const {
    return entries_[agent * questions_ + question];
  }
  bool answered(int agent, int question) const {
    return mask_[agent * questions_ + question] != 0;
  }
  void Set(int agent, int question, int signal);
  void ClearAnswer(int agent, int question);

  // Question indices answered by the agent.
  std::vector<int> Answered(int agent) const;
  std::vector<int> Shared(int i, int j) const;

  bool operator==(const ReportMatrix&) const = default;

 private:
  int agents_ = 0;
  int questions_ = 0;
  int alphabet_ = 0;
  std::vector<int> entries_;
  std::vector<unsigned char> mask_;
};

// Exact joint of (reported_i, reported_j) including the effort mixture.
JointDistribution ReportJoint(const Prior& prior, int i, int j,
                              const Strategy& si, const Strategy& sj,
                              const EffortStrategy* eff_i = nullptr,
                              const EffortStrategy* eff_j = nullptr);
// Agent i's belief about the pair (i, j) in a scenario.
JointDistribution ReportJoint(const Scenario& scenario, int i, int j);

struct WorldTensor {
  // Axes (Z = reference agent's private signal, X = world state,
  // Y = report of a uniformly random agent).
  JointDistribution tensor;
  // Aggregate report distribution per world state: (1/n) sum_i M_i^T w.
  std::vector<Distribution> reported_states;
};

WorldTensor BuildWorldTensor(const Prior& prior,
                             const std::vector<Strategy>& strategies,
                             int reference = 0);
// Same with Z = reference's signal and Y = signal of agent `other`, using
// truthful reports (the W-model joint itself).
JointDistribution WorldSignalTensor(const Prior& prior, int reference,
                                    int other);

ReportMatrix GenerateReports(const Scenario& scenario, int questions,
                             RngSeed seed);
JointDistribution EmpiricalPairJoint(const ReportMatrix& reports, int i, int j);

// The indistinguishable partner of (Q, s): prior perms^{-1}(Q) and
// strategies perms(s), where perms(s)_i(s) = s_i(perms_i(s)).
Scenario PermuteScenario(const Scenario& scenario, const PermutationList& perms);
Strategy PermuteStrategy(const Strategy& strategy, const Permutation& perm);

enum class StrategyKind { kDense, kSparse, kPermutation, kConstant };

Strategy RandomStrategy(RngSeed seed, int m, StrategyKind kind);
Strategy RandomStrategy(Rng& rng, int m, StrategyKind kind);
// Kinds drawn 40/20/20/20 (dense/sparse/permutation/constant).
Strategy RandomMixedStrategy(Rng& rng, int m);
Permutation RandomPermutation(Rng& rng, int m);

// A strategy that depends on the prior as well as the signal: the channel
// of the first entry whose key equals the prior in force, else the fallback.
struct PriorIndexedStrategy {
  std::vector<std::pair<Prior, TransitionMatrix>> entries;
  TransitionMatrix fallback;

  const TransitionMatrix& Resolve(const Prior& prior) const;
  // perms(s)(sig, Q) = s(perm_agent(sig), perms(Q)).
  PriorIndexedStrategy Permuted(const PermutationList& perms, int agent) const;
};

}  // namespace mip

#endif  // MIP_AGENTS_H_
