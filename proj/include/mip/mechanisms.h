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

// Payment engines for peer prediction mechanisms, in exact (expected
// payment) and empirical (realized reports) forms.

#ifndef MIP_MECHANISMS_H_
#define MIP_MECHANISMS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mip/agents.h"
#include "mip/measures.h"

namespace mip {

struct AgentPayment {
  double payment = 0.0;
  std::optional<double> information_score;
  std::optional<double> prediction_score;
  // lambda * cost; zero without an effort profile.
  double effort_cost = 0.0;
  double utility = 0.0;
};

struct PaymentReport {
  enum class Mode { kExact, kEmpirical };

  Mode mode = Mode::kExact;
  std::vector<AgentPayment> agents;
  std::optional<RngSeed> seed;
  std::vector<std::string> warnings;
};

std::string_view PaymentModeName(PaymentReport::Mode mode);

// Sum of the agents' payments.
double AgentWelfare(const PaymentReport& report);

// kAllPairsAverage averages over every reference agent, which is the
// expectation of the uniformly random choice. kSeededRandomReference draws
// one reference per agent.
enum class Pairing { kAllPairsAverage, kSeededRandomReference };

struct PairingOptions {
  Pairing mode = Pairing::kAllPairsAverage;
  RngSeed seed{0};
};

// payment_i = (1/(n-1)) sum_{j != i} MI(reported_i; reported_j).
PaymentReport MipExpectedPayments(const Scenario& scenario,
                                  const Measure& measure);

// Empirical mechanisms over the joint of shared answered questions.
PaymentReport MiMechanismPayments(const ReportMatrix& reports,
                                  const Measure& measure,
                                  const PairingOptions& pairing = {});
PaymentReport FmiMechanismPayments(const ReportMatrix& reports,
                                   const ConvexGenerator& f,
                                   const PairingOptions& pairing = {});
PaymentReport BmiMechanismPayments(const ReportMatrix& reports,
                                   ScoringRule rule,
                                   const PairingOptions& pairing = {});

// Reward of agent i against reference j on every question both answered.
// kBinaryCorrelation is the M_d reward, kAgreement the CA indicator reward.
enum class AgreementReward { kBinaryCorrelation, kAgreement };

std::vector<double> PairRewards(const ReportMatrix& reports, int i, int j,
                                int d, AgreementReward reward, Rng& rng);

PaymentReport MdPayments(const ReportMatrix& reports, int d, RngSeed seed,
                         const PairingOptions& pairing = {});
PaymentReport CaPayments(const ReportMatrix& reports, int d, RngSeed seed,
                         const PairingOptions& pairing = {});

// sum_s (J(s, s) - J_X(s) J_Y(s)): the exact per-question expectation of both
// the M_d and CA rewards.
double MdExpectedReward(const JointDistribution& joint);
PaymentReport MdExpectedPayments(const Scenario& scenario);

// Shifted peer prediction with a prior known to the mechanism:
// PS(peer, q_{own}) - PS(peer, q) where q_s = Pr[peer | own = s].
PaymentReport SppmPayments(std::span<const int> signals, const Prior& known,
                           ScoringRule rule, const PairingOptions& pairing = {});
// Expectation over a report joint (rows: own report, cols: peer report).
double SppmExpectedPayment(const JointDistribution& reports,
                           const JointDistribution& known, ScoringRule rule);
PaymentReport SppmExpectedPayments(const Scenario& scenario, const Prior& known,
                                   ScoringRule rule);

struct BtsReport {
  int signal = 0;
  Distribution prediction;
};

struct BtsOptions {
  double alpha = 2.0;
  PairingOptions pairing;
  // Additive smoothing of realized frequencies. Absent: a zero frequency
  // is an error.
  std::optional<double> smoothing;
};

PaymentReport BtsPayments(const std::vector<BtsReport>& profile,
                          const BtsOptions& options = {});

struct BtsIdealizedScores {
  double information = 0.0;
  double prediction = 0.0;
};

// Infinite-population scores with optimal predictions. The information
// score is the conditional MI of (world, random agent's report) given the
// reference agent's signal; a convex generator replaces the log ratio. The
// prediction score always uses the log rule.
BtsIdealizedScores BtsIdealized(const Prior& world,
                                const std::vector<Strategy>& strategies,
                                const Measure& measure, int scored = 0,
                                int reference = 1);
PaymentReport BtsIdealizedPayments(const Scenario& scenario,
                                   const Measure& measure, double alpha);

// lambda * S + (1 - lambda) * 1 x^T: the report channel of an effort mix.
TransitionMatrix EffectiveChannel(const Strategy& strategy,
                                  const EffortStrategy* effort);

enum class MechanismKind { kFmi, kBmi, kMd, kCa, kSppm, kBts };

std::string_view MechanismName(MechanismKind kind);
std::optional<MechanismKind> ParseMechanism(std::string_view name);

struct ExactOptions {
  // Prior known to the shifted peer prediction mechanism. Defaults to the
  // scenario's common prior.
  std::optional<Prior> mechanism_prior;
  double alpha = 2.0;
};

PaymentReport ExactPayments(const Scenario& scenario, MechanismKind kind,
                            const Measure& measure,
                            const ExactOptions& options = {});

}  // namespace mip

#endif  // MIP_MECHANISMS_H_
