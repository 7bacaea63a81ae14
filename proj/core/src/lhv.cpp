// Copyright 2026 The seqbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seqbell/lhv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "compensated_sum.hpp"

namespace seqbell {

namespace {

std::vector<LambdaPoint> make_support(const std::vector<double>& weights) {
  if (weights.empty()) {
    throw Error(ErrorKind::kInvalidModel, "model support is empty");
  }
  std::vector<LambdaPoint> support;
  support.reserve(weights.size());
  detail::CompensatedSum total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::kInvalidModel,
                  "lambda weight " + std::to_string(i) + " is negative");
    }
    total.add(w);
    support.push_back({i, w});
  }
  if (std::abs(total.value() - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorKind::kInvalidModel,
                "lambda weights sum to " + std::to_string(total.value()));
  }
  return support;
}

double checked_response(double p, const char* which) {
  if (!std::isfinite(p) || p < -kProbabilityTolerance ||
      p > 1.0 + kProbabilityTolerance) {
    throw Error(ErrorKind::kInvalidModel, std::string(which) +
                                              " response out of [0, 1]: " +
                                              std::to_string(p));
  }
  return std::clamp(p, 0.0, 1.0);
}

void check_pair_sums(double plus, double minus, const char* which) {
  if (std::abs(plus + minus - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorKind::kInvalidModel,
                std::string(which) + " responses do not sum to 1");
  }
}

double deterministic(bool condition) { return condition ? 1.0 : 0.0; }

}  // namespace

const char* to_string(ModelKind kind) noexcept {
  return kind == ModelKind::kFactorized ? "factorized" : "general";
}

LhvModel LhvModel::factorized(std::string name, std::vector<double> weights,
                              FirstResponse p1, FactorizedSecondResponse p2) {
  LhvModel m;
  m.name_ = std::move(name);
  m.kind_ = ModelKind::kFactorized;
  m.support_ = make_support(weights);
  m.p1_ = std::move(p1);
  m.p2_factorized_ = std::move(p2);
  return m;
}

LhvModel LhvModel::general(std::string name, std::vector<double> weights,
                           FirstResponse p1, GeneralSecondResponse p2) {
  LhvModel m;
  m.name_ = std::move(name);
  m.kind_ = ModelKind::kGeneral;
  m.support_ = make_support(weights);
  m.p1_ = std::move(p1);
  m.p2_general_ = std::move(p2);
  return m;
}

void LhvModel::require_member(const LambdaPoint& lam) const {
  if (lam.id >= support_.size() || support_[lam.id].weight != lam.weight) {
    throw Error(ErrorKind::kInvalidArgument,
                "lambda point is not in the model support");
  }
}

double LhvModel::p1(Outcome A, Angle a, const LambdaPoint& lam) const {
  return checked_response(p1_(A, a, lam), "t1");
}

double LhvModel::p2(Outcome B, Angle a, Angle b, Outcome A,
                    const LambdaPoint& lam) const {
  if (kind_ == ModelKind::kFactorized) {
    return checked_response(p2_factorized_(B, b, lam), "t2");
  }
  return checked_response(p2_general_(B, a, b, A, lam), "t2");
}

double LhvModel::p2_factorized(Outcome B, Angle b,
                               const LambdaPoint& lam) const {
  if (kind_ != ModelKind::kFactorized) {
    throw Error(ErrorKind::kUnsupportedModel,
                "operation requires a factorized model");
  }
  return checked_response(p2_factorized_(B, b, lam), "t2");
}

JointDistribution per_lambda_joint(const LhvModel& m, Angle a, Angle b,
                                   const LambdaPoint& lam) {
  m.require_member(lam);
  const double first_plus = m.p1(Outcome::kPlus, a, lam);
  const double first_minus = m.p1(Outcome::kMinus, a, lam);
  check_pair_sums(first_plus, first_minus, "t1");
  std::array<double, 4> p{};
  for (Outcome A : kOutcomes) {
    const double pa = A == Outcome::kPlus ? first_plus : first_minus;
    const double second_plus = m.p2(Outcome::kPlus, a, b, A, lam);
    const double second_minus = m.p2(Outcome::kMinus, a, b, A, lam);
    check_pair_sums(second_plus, second_minus, "t2");
    p[JointDistribution::index(A, Outcome::kPlus)] = pa * second_plus;
    p[JointDistribution::index(A, Outcome::kMinus)] = pa * second_minus;
  }
  return JointDistribution::from_entries(p);
}

PerLambdaStats per_lambda_stats(const LhvModel& m, Angle a, Angle b,
                                const LambdaPoint& lam) {
  const JointDistribution joint = per_lambda_joint(m, a, b, lam);
  PerLambdaStats s;
  s.e1 = m.p1(Outcome::kPlus, a, lam) - m.p1(Outcome::kMinus, a, lam);
  if (m.kind() == ModelKind::kFactorized) {
    s.e2 = m.p2_factorized(Outcome::kPlus, b, lam) -
           m.p2_factorized(Outcome::kMinus, b, lam);
  } else {
    s.e2 = joint.marginal_second(Outcome::kPlus) -
           joint.marginal_second(Outcome::kMinus);
  }
  s.e12 = joint.correlator();
  return s;
}

double LambdaAverage::conditional_t2(Outcome A, Outcome B) const {
  const double pa = marginal_t1(A);
  if (pa <= 0.0) {
    throw Error(ErrorKind::kUndefinedConditional,
                "conditioning outcome has zero probability under the model");
  }
  return checked_probability(joint(A, B) / pa);
}

LambdaAverage average_over_lambda(const LhvModel& m, Angle a, Angle b) {
  if (m.support().empty()) {
    throw Error(ErrorKind::kInvalidModel, "model support is empty");
  }
  std::array<detail::CompensatedSum, 4> joint;
  detail::CompensatedSum e1, e2, e12;
  for (const LambdaPoint& lam : m.support()) {
    if (lam.weight == 0.0) continue;
    const JointDistribution j = per_lambda_joint(m, a, b, lam);
    for (std::size_t i = 0; i < 4; ++i) joint[i].add(lam.weight * j.entries()[i]);
    const PerLambdaStats s = per_lambda_stats(m, a, b, lam);
    e1.add(lam.weight * s.e1);
    e2.add(lam.weight * s.e2);
    e12.add(lam.weight * s.e12);
  }
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) p[i] = joint[i].value();
  return {JointDistribution::from_entries(p),
          Moments{e1.value(), e2.value(), e12.value()}};
}

LhvModel fixed_setting_reproducer(Angle a, Angle b) {
  const JointDistribution target = quantum_joint(a, b);
  std::vector<double> weights;
  std::vector<std::pair<Outcome, Outcome>> labels;
  for (Outcome A : kOutcomes) {
    for (Outcome B : kOutcomes) {
      if (target(A, B) > 0.0) {
        weights.push_back(target(A, B));
        labels.emplace_back(A, B);
      }
    }
  }
  auto first = [labels](Outcome A, Angle, const LambdaPoint& lam) {
    return deterministic(labels.at(lam.id).first == A);
  };
  auto second = [labels](Outcome B, Angle, const LambdaPoint& lam) {
    return deterministic(labels.at(lam.id).second == B);
  };
  return LhvModel::factorized("reproducer", std::move(weights), first, second);
}

LhvModel position_style_model(std::size_t grid_size) {
  if (grid_size < 2) {
    throw Error(ErrorKind::kInvalidArgument, "grid_size must be at least 2");
  }
  const double n = static_cast<double>(grid_size);
  std::vector<double> weights(grid_size, 1.0 / n);
  auto coordinate = [n](const LambdaPoint& lam) {
    return static_cast<double>(lam.id) / n;
  };
  auto first = [coordinate](Outcome A, Angle a, const LambdaPoint& lam) {
    const bool up = coordinate(lam) < 0.5 * (1.0 + std::sin(a.radians()));
    return deterministic(up == (A == Outcome::kPlus));
  };
  auto second = [coordinate](Outcome B, Angle b, const LambdaPoint& lam) {
    double shifted = coordinate(lam) + 0.5;
    if (shifted >= 1.0) shifted -= 1.0;
    const bool up = shifted < 0.5 * (1.0 + std::sin(b.radians()));
    return deterministic(up == (B == Outcome::kPlus));
  };
  return LhvModel::factorized("position", std::move(weights), first, second);
}

LhvModel uniform_model() {
  auto half = [](Outcome, Angle, const LambdaPoint&) { return 0.5; };
  return LhvModel::factorized("uniform", {1.0}, half, half);
}

double per_lambda_chsh(const LhvModel& m, const ChshSettings& s,
                       const LambdaPoint& lam) {
  if (m.kind() != ModelKind::kFactorized) {
    throw Error(ErrorKind::kUnsupportedModel,
                "per-lambda CHSH requires a factorized model");
  }
  m.require_member(lam);
  auto e1 = [&](Angle x) {
    return m.p1(Outcome::kPlus, x, lam) - m.p1(Outcome::kMinus, x, lam);
  };
  auto e2 = [&](Angle y) {
    return m.p2_factorized(Outcome::kPlus, y, lam) -
           m.p2_factorized(Outcome::kMinus, y, lam);
  };
  const double ea = e1(s.a);
  const double eap = e1(s.a_prime);
  const double eb = e2(s.b);
  const double ebp = e2(s.b_prime);
  return std::abs(ea * eb + ea * ebp + eap * ebp - eap * eb);
}

bool IdentityReport::mandatory_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) {
    return !c.mandatory || !c.applicable || c.passed;
  });
}

bool IdentityReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) {
    return c.applicable && c.passed;
  });
}

const IdentityCheck* IdentityReport::find(
    const std::string& name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

IdentityCheck make_check(std::string name, std::string description,
                         bool mandatory, double residual) {
  IdentityCheck c;
  c.name = std::move(name);
  c.description = std::move(description);
  c.mandatory = mandatory;
  c.residual = residual;
  c.passed = std::isfinite(residual) && residual <= kIdentityTolerance;
  return c;
}

IdentityCheck not_applicable(std::string name, std::string description,
                             bool mandatory) {
  IdentityCheck c;
  c.name = std::move(name);
  c.description = std::move(description);
  c.mandatory = mandatory;
  c.applicable = false;
  c.passed = false;
  c.residual = 0.0;
  return c;
}

}  // namespace

IdentityReport verify_identities(const LhvModel& m, Angle a, Angle b) {
  IdentityReport report;
  report.model_name = m.name();
  report.a = a;
  report.b = b;

  const LambdaAverage avg = average_over_lambda(m, a, b);
  const Moments& mo = avg.moments;
  auto& checks = report.checks;

  {
    double total = 0.0;
    double negative = 0.0;
    for (double p : avg.joint.entries()) {
      total += p;
      negative = std::max(negative, -p);
    }
    checks.push_back(make_check("normalization",
                                "model joint is non-negative and sums to 1",
                                true, std::max(std::abs(total - 1.0), negative)));
  }

  // Correspondence with the quantum predictions.
  const JointDistribution quantum = quantum_joint(a, b);
  {
    double r = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      r = std::max(r, std::abs(avg.joint.entries()[i] - quantum.entries()[i]));
    }
    checks.push_back(
        make_check("joint-vs-quantum", "model joint equals the quantum joint", false, r));
  }
  {
    double r = 0.0;
    for (Outcome A : kOutcomes) {
      r = std::max(r, std::abs(avg.marginal_t1(A) - marginal_t1(a, A)));
    }
    checks.push_back(make_check(
        "t1-marginal-vs-quantum", "model t1 marginal equals the quantum t1 marginal", false, r));
  }
  {
    double r = 0.0;
    bool any = false;
    for (Outcome A : kOutcomes) {
      if (avg.marginal_t1(A) <= 0.0 || marginal_t1(a, A) <= 0.0) continue;
      any = true;
      for (Outcome B : kOutcomes) {
        r = std::max(r, std::abs(avg.conditional_t2(A, B) -
                                 conditional_t2(a, b, A, B)));
      }
    }
    const char* what = "model conditional at t2 equals the quantum conditional";
    checks.push_back(any ? make_check("conditional-vs-quantum", what, false, r)
                         : not_applicable("conditional-vs-quantum", what, false));
  }
  checks.push_back(make_check(
      "correlator-vs-quantum", "model correlator equals the quantum correlator", false,
      std::abs(mo.correlator - ideal_correlator(a, b))));
  checks.push_back(make_check(
      "t1-mean-vs-quantum", "model t1 mean equals the quantum t1 mean", false,
      std::abs(mo.mean_a - (marginal_t1(a, Outcome::kPlus) -
                            marginal_t1(a, Outcome::kMinus)))));

  // Dichotomic-moment identities, valid for any model.
  {
    double r = 0.0;
    for (Outcome B : kOutcomes) {
      r = std::max(r, std::abs(avg.marginal_t2(B) -
                               0.5 * (1.0 + value(B) * mo.mean_b_given_a_setting)));
    }
    checks.push_back(make_check(
        "t2-marginal-expansion", "t2 marginal equals (1 + B<sigma_b>_a) / 2", true, r));
  }
  {
    double r = 0.0;
    bool any = false;
    for (Outcome A : kOutcomes) {
      if (avg.marginal_t1(A) <= 0.0) continue;
      any = true;
      // Multiplied through by P(A): the ratio form divides by 1 + A<sigma_a>,
      // which is ill-conditioned when that marginal is tiny.
      for (Outcome B : kOutcomes) {
        const double expansion =
            0.25 * (1.0 + value(A) * mo.mean_a +
                    value(B) * mo.mean_b_given_a_setting +
                    value(A) * value(B) * mo.correlator);
        r = std::max(r, std::abs(avg.joint(A, B) - expansion));
      }
    }
    const char* what = "conditional at t2 equals its moment expansion";
    checks.push_back(any ? make_check("conditional-expansion", what, true, r)
                         : not_applicable("conditional-expansion", what, true));
  }

  // A<->B symmetry of the conditionals, and what follows from it.
  const bool both_outcomes = avg.marginal_t1(Outcome::kPlus) > 0.0 &&
                             avg.marginal_t1(Outcome::kMinus) > 0.0;
  {
    const char* what = "P(B|A) is unchanged when A and B are exchanged";
    if (both_outcomes) {
      const double r =
          std::abs(avg.conditional_t2(Outcome::kPlus, Outcome::kMinus) -
                   avg.conditional_t2(Outcome::kMinus, Outcome::kPlus));
      IdentityCheck c = make_check("exchange-symmetry", what, false, r);
      report.outcome_symmetric = c.passed;
      checks.push_back(c);
    } else {
      checks.push_back(not_applicable("exchange-symmetry", what, false));
    }
  }
  {
    const char* what9 = "moment expansions agree under A<->B exchange";
    const char* what10 = "<sigma_b>_a = <sigma_a><sigma_a sigma_b>";
    if (report.outcome_symmetric) {
      double r = 0.0;
      for (Outcome A : kOutcomes) {
        for (Outcome B : kOutcomes) {
          // Cross-multiplied for the same conditioning reason as above.
          const double lhs =
              (value(B) * mo.mean_b_given_a_setting +
               value(A) * value(B) * mo.correlator) *
              (1.0 + value(B) * mo.mean_a);
          const double rhs =
              (value(A) * mo.mean_b_given_a_setting +
               value(A) * value(B) * mo.correlator) *
              (1.0 + value(A) * mo.mean_a);
          r = std::max(r, 0.25 * std::abs(lhs - rhs));
        }
      }
      checks.push_back(make_check("exchanged-expansions-agree", what9, true, r));
      checks.push_back(make_check(
          "moment-identity", what10, true,
          std::abs(mo.mean_b_given_a_setting - mo.mean_a * mo.correlator)));
    } else {
      checks.push_back(not_applicable("exchanged-expansions-agree", what9, true));
      checks.push_back(not_applicable("moment-identity", what10, true));
    }
  }

  // Double averages over independent (lambda, lambda').
  {
    const auto& support = m.support();
    std::vector<PerLambdaStats> stats;
    stats.reserve(support.size());
    for (const LambdaPoint& lam : support) {
      stats.push_back(per_lambda_stats(m, a, b, lam));
    }
    detail::CompensatedSum cross, plus, minus;
    for (std::size_t i = 0; i < support.size(); ++i) {
      const double wi = support[i].weight;
      if (wi == 0.0) continue;
      for (std::size_t j = 0; j < support.size(); ++j) {
        const double w = wi * support[j].weight;
        const double prod = stats[i].e1 * stats[j].e12;
        cross.add(w * prod);
        plus.add(w * (1.0 + prod));
        minus.add(w * (1.0 - prod));
      }
    }
    const double product = mo.mean_a * mo.correlator;
    checks.push_back(make_check(
        "double-average-factorizes", "double average of E1 * E12 equals <sigma_a><sigma_a sigma_b>",
        true, std::abs(cross.value() - product)));
    const double p_plus = 0.5 * plus.value();
    const double p_minus = 0.5 * minus.value();
    checks.push_back(make_check(
        "double-average-t2-marginal", "double-average t2 marginal equals (1 + B<sigma_a><sigma_a sigma_b>) / 2",
        true,
        std::max(std::abs(p_plus - 0.5 * (1.0 + product)),
                 std::abs(p_minus - 0.5 * (1.0 - product)))));
    const char* what = "double-average t2 marginal equals the model t2 marginal";
    if (report.outcome_symmetric) {
      checks.push_back(make_check(
          "double-average-vs-t2-marginal", what, true,
          std::max(std::abs(p_plus - avg.marginal_t2(Outcome::kPlus)),
                   std::abs(p_minus - avg.marginal_t2(Outcome::kMinus)))));
    } else {
      checks.push_back(not_applicable("double-average-vs-t2-marginal", what, true));
    }
  }
  return report;
}

}  // namespace seqbell
