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

#include "mip/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace mip {
namespace {

// Reference agents for agent i under the pairing rule.
std::vector<int> References(int n, int i, Pairing mode, Rng& rng) {
  std::vector<int> refs;
  if (mode == Pairing::kAllPairsAverage) {
    for (int j = 0; j < n; ++j) {
      if (j != i) refs.push_back(j);
    }
  } else {
    const int r = rng.Index(n - 1);
    refs.push_back(r < i ? r : r + 1);
  }
  return refs;
}

void FillUtilities(PaymentReport& report, const Scenario& scenario) {
  for (int i = 0; i < static_cast<int>(report.agents.size()); ++i) {
    AgentPayment& a = report.agents[i];
    const EffortStrategy* e = scenario.EffortFor(i);
    a.effort_cost = e ? e->lambda * e->cost : 0.0;
    a.utility = a.payment - a.effort_cost;
  }
}

void FillUtilities(PaymentReport& report) {
  for (AgentPayment& a : report.agents) a.utility = a.payment;
}

// Pr[Y | X = x] of a pairwise joint, or the Y marginal for a null row.
Distribution Posterior(const JointDistribution& joint, int x,
                       const Distribution& fallback) {
  double mass = 0.0;
  for (int y = 0; y < joint.cols(); ++y) mass += joint.at(x, y);
  if (mass <= 0.0) return fallback;
  std::vector<double> row(joint.cols());
  for (int y = 0; y < joint.cols(); ++y) row[y] = joint.at(x, y);
  return MakeDistribution(row);
}

// Uniform subset of `count` items of pool, by partial Fisher-Yates.
std::vector<int> SampleSubset(std::vector<int> pool, int count, Rng& rng) {
  const int size = static_cast<int>(pool.size());
  for (int s = 0; s < count; ++s) {
    const int r = s + rng.Index(size - s);
    std::swap(pool[s], pool[r]);
  }
  pool.resize(count);
  return pool;
}

double LogChoose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

PaymentReport AgreementExpectedPayments(const Scenario& scenario,
                                        bool require_binary) {
  scenario.Validate();
  const int n = scenario.agents();
  PaymentReport report;
  report.agents.resize(n);
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const JointDistribution joint = ReportJoint(scenario, i, j);
      if (require_binary && joint.rows() != 2) {
        throw Error(ErrorCode::kNonBinaryAlphabet, "M_d needs binary reports");
      }
      total += MdExpectedReward(joint);
    }
    report.agents[i].payment = total / (n - 1);
    report.agents[i].information_score = report.agents[i].payment;
  }
  FillUtilities(report, scenario);
  return report;
}

PaymentReport AgreementPayments(const ReportMatrix& reports, int d,
                                RngSeed seed, const PairingOptions& pairing,
                                AgreementReward reward) {
  const int n = reports.agents();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 agents");
  Rng rng(seed);
  Rng pair_rng(pairing.seed);
  PaymentReport report;
  report.mode = PaymentReport::Mode::kEmpirical;
  report.seed = seed;
  report.agents.resize(n);
  for (int i = 0; i < n; ++i) {
    const std::vector<int> refs = References(n, i, pairing.mode, pair_rng);
    double total = 0.0;
    for (int j : refs) {
      const std::vector<double> r = PairRewards(reports, i, j, d, reward, rng);
      if (r.empty()) {
        report.warnings.push_back("agents " + std::to_string(i) + " and " +
                                  std::to_string(j) + " share no question");
        continue;
      }
      double s = 0.0;
      for (double v : r) s += v;
      total += s / static_cast<double>(r.size());
    }
    report.agents[i].payment = total / static_cast<double>(refs.size());
    report.agents[i].information_score = report.agents[i].payment;
  }
  FillUtilities(report);
  return report;
}

}  // namespace

std::string_view PaymentModeName(PaymentReport::Mode mode) {
  return mode == PaymentReport::Mode::kExact ? "exact" : "empirical";
}

double AgentWelfare(const PaymentReport& report) {
  double total = 0.0;
  for (const AgentPayment& a : report.agents) total += a.payment;
  return total;
}

PaymentReport MipExpectedPayments(const Scenario& scenario,
                                  const Measure& measure) {
  scenario.Validate();
  const int n = scenario.agents();
  PaymentReport report;
  report.agents.resize(n);
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) total += MutualInformation(ReportJoint(scenario, i, j), measure);
    }
    report.agents[i].payment = total / (n - 1);
    report.agents[i].information_score = report.agents[i].payment;
  }
  FillUtilities(report, scenario);
  return report;
}

PaymentReport MiMechanismPayments(const ReportMatrix& reports,
                                  const Measure& measure,
                                  const PairingOptions& pairing) {
  const int n = reports.agents();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 agents");
  Rng rng(pairing.seed);
  PaymentReport report;
  report.mode = PaymentReport::Mode::kEmpirical;
  if (pairing.mode == Pairing::kSeededRandomReference) report.seed = pairing.seed;
  report.agents.resize(n);
  for (int i = 0; i < n; ++i) {
    const std::vector<int> refs = References(n, i, pairing.mode, rng);
    double total = 0.0;
    for (int j : refs) {
      total += MutualInformation(EmpiricalPairJoint(reports, i, j), measure);
    }
    report.agents[i].payment = total / static_cast<double>(refs.size());
    report.agents[i].information_score = report.agents[i].payment;
  }
  FillUtilities(report);
  return report;
}

PaymentReport FmiMechanismPayments(const ReportMatrix& reports,
                                   const ConvexGenerator& f,
                                   const PairingOptions& pairing) {
  return MiMechanismPayments(reports, Measure{f}, pairing);
}

PaymentReport BmiMechanismPayments(const ReportMatrix& reports,
                                   ScoringRule rule,
                                   const PairingOptions& pairing) {
  return MiMechanismPayments(reports, Measure{rule}, pairing);
}

std::vector<double> PairRewards(const ReportMatrix& reports, int i, int j,
                                int d, AgreementReward reward, Rng& rng) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "d must be >= 1");
  if (reward == AgreementReward::kBinaryCorrelation &&
      reports.alphabet_size() != 2) {
    throw Error(ErrorCode::kNonBinaryAlphabet, "M_d needs binary reports");
  }
  const std::vector<int> ci = reports.Answered(i);
  const std::vector<int> cj = reports.Answered(j);
  std::vector<bool> in_j(reports.questions(), false);
  for (int q : cj) in_j[q] = true;

  std::vector<double> out;
  for (int k : reports.Shared(i, j)) {
    // A is uniform over the d-subsets of C_i \ k that leave at least d
    // questions of C_j \ (k u A) for B.
    std::vector<int> overlap, own_only, cj_rest;
    for (int q : ci) {
      if (q == k) continue;
      (in_j[q] ? overlap : own_only).push_back(q);
    }
    for (int q : cj) {
      if (q != k) cj_rest.push_back(q);
    }
    const int o = static_cast<int>(overlap.size());
    const int a = static_cast<int>(own_only.size());
    const int c = static_cast<int>(cj_rest.size());
    const int lo = std::max(0, d - a);
    const int hi = std::min({o, d, c - d});
    if (lo > hi) {
      out.push_back(0.0);
      continue;
    }
    std::vector<double> weights;
    double top = -1e300;
    for (int t = lo; t <= hi; ++t) {
      weights.push_back(LogChoose(o, t) + LogChoose(a, d - t));
      top = std::max(top, weights.back());
    }
    for (double& w : weights) w = std::exp(w - top);
    const int t = lo + rng.Categorical(weights);
    std::vector<int> set_a = SampleSubset(overlap, t, rng);
    const std::vector<int> rest = SampleSubset(own_only, d - t, rng);
    set_a.insert(set_a.end(), rest.begin(), rest.end());

    std::vector<bool> in_a(reports.questions(), false);
    for (int q : set_a) in_a[q] = true;
    std::vector<int> pool_b;
    for (int q : cj_rest) {
      if (!in_a[q]) pool_b.push_back(q);
    }
    const std::vector<int> set_b = SampleSubset(pool_b, d, rng);

    const int x = reports.at(i, k);
    const int y = reports.at(j, k);
    if (reward == AgreementReward::kBinaryCorrelation) {
      double mean_a = 0.0, mean_b = 0.0;
      for (int q : set_a) mean_a += reports.at(i, q);
      for (int q : set_b) mean_b += reports.at(j, q);
      mean_a /= d;
      mean_b /= d;
      const double agree = x * y + (1 - x) * (1 - y);
      out.push_back(agree - (mean_a * mean_b + (1 - mean_a) * (1 - mean_b)));
    } else {
      const int la = set_a[rng.Index(d)];
      const int lb = set_b[rng.Index(d)];
      out.push_back((x == y ? 1.0 : 0.0) -
                    (reports.at(i, la) == reports.at(j, lb) ? 1.0 : 0.0));
    }
  }
  return out;
}

PaymentReport MdPayments(const ReportMatrix& reports, int d, RngSeed seed,
                         const PairingOptions& pairing) {
  if (reports.alphabet_size() != 2) {
    throw Error(ErrorCode::kNonBinaryAlphabet, "M_d needs binary reports");
  }
  return AgreementPayments(reports, d, seed, pairing,
                           AgreementReward::kBinaryCorrelation);
}

PaymentReport CaPayments(const ReportMatrix& reports, int d, RngSeed seed,
                         const PairingOptions& pairing) {
  return AgreementPayments(reports, d, seed, pairing, AgreementReward::kAgreement);
}

double MdExpectedReward(const JointDistribution& joint) {
  if (joint.mode() != JointDistribution::Mode::kPairwise ||
      joint.rows() != joint.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "agreement reward needs a square joint");
  }
  auto [px, py] = Marginals(joint);
  double r = 0.0;
  for (int s = 0; s < joint.rows(); ++s) r += joint.at(s, s) - px[s] * py[s];
  return r;
}

PaymentReport MdExpectedPayments(const Scenario& scenario) {
  return AgreementExpectedPayments(scenario, true);
}

PaymentReport SppmPayments(std::span<const int> signals, const Prior& known,
                           ScoringRule rule, const PairingOptions& pairing) {
  const int n = static_cast<int>(signals.size());
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 agents");
  const int m = known.alphabet_size();
  for (int s : signals) {
    if (s < 0 || s >= m) throw Error(ErrorCode::kInvalidArgument, "signal out of range");
  }
  Rng rng(pairing.seed);
  PaymentReport report;
  report.mode = PaymentReport::Mode::kEmpirical;
  if (pairing.mode == Pairing::kSeededRandomReference) report.seed = pairing.seed;
  report.agents.resize(n);
  for (int i = 0; i < n; ++i) {
    const std::vector<int> refs = References(n, i, pairing.mode, rng);
    double total = 0.0;
    for (int j : refs) {
      const JointDistribution joint = known.PairJoint(i, j);
      const Distribution q = Marginals(joint).second;
      const Distribution post = Posterior(joint, signals[i], q);
      total += ProperScore(signals[j], post, rule) - ProperScore(signals[j], q, rule);
    }
    report.agents[i].payment = total / static_cast<double>(refs.size());
    report.agents[i].information_score = report.agents[i].payment;
  }
  FillUtilities(report);
  return report;
}

double SppmExpectedPayment(const JointDistribution& reports,
                           const JointDistribution& known, ScoringRule rule) {
  if (reports.rows() != known.rows() || reports.cols() != known.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "report joint != prior shape");
  }
  const Distribution q = Marginals(known).second;
  double total = 0.0;
  for (int a = 0; a < reports.rows(); ++a) {
    const Distribution post = Posterior(known, a, q);
    for (int b = 0; b < reports.cols(); ++b) {
      const double w = reports.at(a, b);
      if (w <= 0.0) continue;
      total += w * (ProperScore(b, post, rule) - ProperScore(b, q, rule));
    }
  }
  return total;
}

PaymentReport SppmExpectedPayments(const Scenario& scenario, const Prior& known,
                                   ScoringRule rule) {
  scenario.Validate();
  const int n = scenario.agents();
  PaymentReport report;
  report.agents.resize(n);
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      total += SppmExpectedPayment(ReportJoint(scenario, i, j),
                                   known.PairJoint(i, j), rule);
    }
    report.agents[i].payment = total / (n - 1);
    report.agents[i].information_score = report.agents[i].payment;
  }
  FillUtilities(report, scenario);
  return report;
}

PaymentReport BtsPayments(const std::vector<BtsReport>& profile,
                          const BtsOptions& options) {
  const int n = static_cast<int>(profile.size());
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "BTS needs at least 3 agents");
  const int m = profile.front().prediction.size();
  std::vector<int> counts(m, 0);
  for (const BtsReport& r : profile) {
    if (r.prediction.size() != m) {
      throw Error(ErrorCode::kDimensionMismatch, "prediction alphabets differ");
    }
    if (r.signal < 0 || r.signal >= m) {
      throw Error(ErrorCode::kInvalidArgument, "signal out of range");
    }
    ++counts[r.signal];
  }
  const double eps = options.smoothing.value_or(0.0);
  if (options.smoothing && !(eps > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "smoothing must be > 0");
  }
  // Log of the frequency of `signal` among everyone except `agent`.
  auto log_fr = [&](int signal, int agent) {
    const int c = counts[signal] - (profile[agent].signal == signal ? 1 : 0);
    const double fr = (c + eps) / (n - 1 + eps * m);
    if (fr <= 0.0) {
      throw Error(ErrorCode::kZeroFrequency,
                  "signal " + std::to_string(signal) +
                      " is not reported by any agent other than " +
                      std::to_string(agent));
    }
    return std::log(fr);
  };
  auto log_pred = [&](int agent, int signal) {
    const double p = profile[agent].prediction[signal];
    if (p <= 0.0) {
      throw Error(ErrorCode::kLogOfZero,
                  "agent " + std::to_string(agent) + " predicts 0 for signal " +
                      std::to_string(signal));
    }
    return std::log(p);
  };

  Rng rng(options.pairing.seed);
  PaymentReport report;
  report.mode = PaymentReport::Mode::kEmpirical;
  if (options.pairing.mode == Pairing::kSeededRandomReference) {
    report.seed = options.pairing.seed;
  }
  if (options.alpha <= 1.0) {
    report.warnings.push_back("alpha <= 1: welfare ordering does not apply");
  }
  if (options.smoothing) report.warnings.push_back("frequencies smoothed");
  report.agents.resize(n);
  if (options.pairing.mode == Pairing::kAllPairsAverage) {
    // Averages over j != i from per-signal totals, O(n m).
    std::vector<double> lf(n), pred_total(m, 0.0);
    std::vector<int> zero_preds(m, 0);
    double lf_total = 0.0;
    for (int j = 0; j < n; ++j) {
      lf[j] = log_fr(profile[j].signal, j);
      lf_total += lf[j];
      for (int s = 0; s < m; ++s) {
        const double p = profile[j].prediction[s];
        if (p > 0.0) {
          pred_total[s] += std::log(p);
        } else {
          ++zero_preds[s];
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      const int si = profile[i].signal;
      const Distribution& own_pred = profile[i].prediction;
      if (zero_preds[si] - (own_pred[si] > 0.0 ? 0 : 1) > 0) {
        throw Error(ErrorCode::kLogOfZero,
                    "a reference agent predicts 0 for signal " + std::to_string(si));
      }
      const double own_log = own_pred[si] > 0.0 ? std::log(own_pred[si]) : 0.0;
      const double info = lf[i] - (pred_total[si] - own_log) / (n - 1);
      double pred = 0.0;
      for (int s = 0; s < m; ++s) {
        const int others = counts[s] - (s == si ? 1 : 0);
        if (others > 0) pred += others * log_pred(i, s);
      }
      pred = (pred - (lf_total - lf[i])) / (n - 1);
      AgentPayment& a = report.agents[i];
      a.information_score = info;
      a.prediction_score = pred;
      a.payment = pred + options.alpha * info;
    }
    FillUtilities(report);
    return report;
  }
  for (int i = 0; i < n; ++i) {
    const std::vector<int> refs = References(n, i, options.pairing.mode, rng);
    const int si = profile[i].signal;
    const double own = log_fr(si, i);
    double info = 0.0, pred = 0.0;
    for (int j : refs) {
      const int sj = profile[j].signal;
      info += own - log_pred(j, si);
      pred += log_pred(i, sj) - log_fr(sj, j);
    }
    info /= static_cast<double>(refs.size());
    pred /= static_cast<double>(refs.size());
    AgentPayment& a = report.agents[i];
    a.information_score = info;
    a.prediction_score = pred;
    a.payment = pred + options.alpha * info;
  }
  FillUtilities(report);
  return report;
}

BtsIdealizedScores BtsIdealized(const Prior& world,
                                const std::vector<Strategy>& strategies,
                                const Measure& measure, int scored,
                                int reference) {
  if (const auto* rule = std::get_if<ScoringRule>(&measure);
      rule && *rule != ScoringRule::kLog) {
    throw Error(ErrorCode::kInvalidArgument,
                "BTS information scores use the log rule or a convex generator");
  }
  const WorldTensor wt = BuildWorldTensor(world, strategies, reference);
  BtsIdealizedScores out;
  out.information = ConditionalMI(wt.tensor, measure);

  // E[log Pr[report = y | own signal = z] - log w_hat(y)] under optimal
  // predictions, summed directly over (w, z, y).
  const int worlds = world.world().size();
  const int m = world.alphabet_size();
  const int r = wt.reported_states.front().size();
  std::vector<Distribution> own(worlds);
  for (int w = 0; w < worlds; ++w) own[w] = world.StateFor(scored, w);
  double pred = 0.0;
  for (int z = 0; z < m; ++z) {
    double mass_z = 0.0;
    std::vector<double> joint_zy(r, 0.0);
    for (int w = 0; w < worlds; ++w) {
      const double pwz = world.world()[w] * own[w][z];
      mass_z += pwz;
      for (int y = 0; y < r; ++y) joint_zy[y] += pwz * wt.reported_states[w][y];
    }
    if (mass_z <= 0.0) continue;
    for (int w = 0; w < worlds; ++w) {
      const double pwz = world.world()[w] * own[w][z];
      if (pwz <= 0.0) continue;
      for (int y = 0; y < r; ++y) {
        const double hat = wt.reported_states[w][y];
        if (hat <= 0.0) continue;
        pred += pwz * hat * (std::log(joint_zy[y] / mass_z) - std::log(hat));
      }
    }
  }
  out.prediction = pred;
  return out;
}

TransitionMatrix EffectiveChannel(const Strategy& strategy,
                                  const EffortStrategy* effort) {
  if (effort == nullptr || effort->lambda == 1.0) return strategy.channel;
  const TransitionMatrix& c = strategy.channel;
  std::vector<double> e(c.entries().size());
  for (int s = 0; s < c.rows(); ++s) {
    for (int y = 0; y < c.cols(); ++y) {
      e[s * c.cols() + y] =
          effort->lambda * c.at(s, y) + (1 - effort->lambda) * effort->no_effort_report[y];
    }
  }
  return TransitionMatrix(c.rows(), c.cols(), std::move(e));
}

PaymentReport BtsIdealizedPayments(const Scenario& scenario,
                                   const Measure& measure, double alpha) {
  scenario.Validate();
  if (scenario.priors.size() != 1 ||
      scenario.priors.front().mode() != Prior::Mode::kWorldModel) {
    throw Error(ErrorCode::kModeMismatch, "BTS scores need a common world model prior");
  }
  const Prior& world = scenario.priors.front();
  const int n = scenario.agents();
  std::vector<Strategy> effective;
  for (int i = 0; i < n; ++i) {
    effective.push_back({EffectiveChannel(scenario.strategies[i], scenario.EffortFor(i)),
                         scenario.strategies[i].label});
  }
  std::vector<BtsIdealizedScores> by_agent;
  for (int i = 0; i < n; ++i) {
    by_agent.push_back(BtsIdealized(world, effective, measure, i, i));
  }
  PaymentReport report;
  report.agents.resize(n);
  if (alpha <= 1.0) {
    report.warnings.push_back("alpha <= 1: welfare ordering does not apply");
  }
  for (int i = 0; i < n; ++i) {
    double info = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) info += by_agent[j].information;
    }
    info /= n - 1;
    AgentPayment& a = report.agents[i];
    a.information_score = info;
    a.prediction_score = by_agent[i].prediction;
    a.payment = by_agent[i].prediction + alpha * info;
  }
  FillUtilities(report, scenario);
  return report;
}

std::string_view MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kFmi: return "fmi";
    case MechanismKind::kBmi: return "bmi";
    case MechanismKind::kMd: return "md";
    case MechanismKind::kCa: return "ca";
    case MechanismKind::kSppm: return "sppm";
    case MechanismKind::kBts: return "bts";
  }
  return "?";
}

std::optional<MechanismKind> ParseMechanism(std::string_view name) {
  for (MechanismKind k : {MechanismKind::kFmi, MechanismKind::kBmi, MechanismKind::kMd,
                          MechanismKind::kCa, MechanismKind::kSppm, MechanismKind::kBts}) {
    if (MechanismName(k) == name) return k;
  }
  return std::nullopt;
}

PaymentReport ExactPayments(const Scenario& scenario, MechanismKind kind,
                            const Measure& measure, const ExactOptions& options) {
  const bool is_f = std::holds_alternative<ConvexGenerator>(measure);
  switch (kind) {
    case MechanismKind::kFmi:
      if (!is_f) throw Error(ErrorCode::kInvalidArgument, "fmi needs a convex generator");
      return MipExpectedPayments(scenario, measure);
    case MechanismKind::kBmi:
      if (is_f) throw Error(ErrorCode::kInvalidArgument, "bmi needs a scoring rule");
      return MipExpectedPayments(scenario, measure);
    case MechanismKind::kMd:
      return AgreementExpectedPayments(scenario, true);
    case MechanismKind::kCa:
      return AgreementExpectedPayments(scenario, false);
    case MechanismKind::kSppm: {
      if (is_f) throw Error(ErrorCode::kInvalidArgument, "sppm needs a scoring rule");
      if (!options.mechanism_prior && scenario.priors.size() != 1) {
        throw Error(ErrorCode::kInvalidArgument, "sppm needs a known prior");
      }
      const Prior& known = options.mechanism_prior ? *options.mechanism_prior
                                                   : scenario.priors.front();
      return SppmExpectedPayments(scenario, known, std::get<ScoringRule>(measure));
    }
    case MechanismKind::kBts:
      return BtsIdealizedPayments(scenario, measure, options.alpha);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown mechanism");
}

}  // namespace mip
