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

#include "seqbell/quantum.hpp"

#include <cmath>
#include <string>

namespace seqbell {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kInvalidState: return "invalid state";
    case ErrorKind::kUndefinedConditional: return "undefined conditional";
    case ErrorKind::kInvalidProbability: return "invalid probability";
    case ErrorKind::kInvalidModel: return "invalid model";
    case ErrorKind::kUnsupportedModel: return "unsupported model";
    case ErrorKind::kInvalidCorrelator: return "invalid correlator";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "unknown";
}

Angle::Angle(double radians) : radians_(radians) {
  if (!std::isfinite(radians)) {
    throw Error(ErrorKind::kInvalidArgument, "angle must be finite");
  }
}

Outcome outcome_from_int(int v) {
  if (v == 1) return Outcome::kPlus;
  if (v == -1) return Outcome::kMinus;
  throw Error(ErrorKind::kInvalidArgument,
              "outcome must be +1 or -1, got " + std::to_string(v));
}

bool SpinState::is_normalized(double tol) const noexcept {
  return std::abs(norm_squared() - 1.0) <= tol;
}

double checked_probability(double p, double tol) {
  if (!std::isfinite(p) || p < -tol || p > 1.0 + tol) {
    throw Error(ErrorKind::kInvalidProbability,
                "probability out of range: " + std::to_string(p));
  }
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

JointDistribution JointDistribution::from_entries(
    const std::array<double, 4>& p) {
  JointDistribution out;
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.p_[i] = checked_probability(p[i]);
    total += out.p_[i];
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorKind::kInvalidProbability,
                "joint distribution sums to " + std::to_string(total));
  }
  return out;
}

double JointDistribution::correlator() const noexcept {
  double sum = 0.0;
  for (Outcome a : kOutcomes) {
    for (Outcome b : kOutcomes) {
      sum += value(a) * value(b) * (*this)(a, b);
    }
  }
  return sum;
}

SpinState basis_state(Angle theta, Outcome sign) {
  const double c = std::cos(theta.radians() / 2.0);
  const double s = std::sin(theta.radians() / 2.0);
  if (sign == Outcome::kPlus) return {{c, 0.0}, {s, 0.0}};
  return {{-s, 0.0}, {c, 0.0}};
}

SpinState initial_state() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {{r, 0.0}, {r, 0.0}};
}

double overlap_prob(const SpinState& psi, const SpinState& phi) {
  if (!psi.is_normalized(kStateNormTolerance) ||
      !phi.is_normalized(kStateNormTolerance)) {
    throw Error(ErrorKind::kInvalidState, "spin state is not normalized");
  }
  const std::complex<double> inner =
      std::conj(psi.plus) * phi.plus + std::conj(psi.minus) * phi.minus;
  // Divide out the tolerated norm error so the result stays a probability.
  return checked_probability(std::norm(inner) /
                             (psi.norm_squared() * phi.norm_squared()));
}

namespace {

double closed_form_joint(double a, double b, int A, int B) {
  return 0.25 * (1.0 + A * std::sin(a)) * (1.0 + A * B * std::cos(a - b));
}

}  // namespace

JointDistribution quantum_joint(Angle a, Angle b, JointMode mode) {
  std::array<double, 4> p{};
  const SpinState psi0 = initial_state();
  for (Outcome A : kOutcomes) {
    for (Outcome B : kOutcomes) {
      double v = 0.0;
      if (mode == JointMode::kClosedForm) {
        v = closed_form_joint(a.radians(), b.radians(), value(A), value(B));
      } else {
        const SpinState first = basis_state(a, A);
        v = overlap_prob(psi0, first) *
            overlap_prob(first, basis_state(b, B));
      }
      p[JointDistribution::index(A, B)] = v;
    }
  }
  return JointDistribution::from_entries(p);
}

double marginal_t1(Angle a, Outcome A) {
  return checked_probability(0.5 * (1.0 + value(A) * std::sin(a.radians())));
}

double marginal_t2(Angle a, Angle b, Outcome B) {
  const double ar = a.radians();
  return checked_probability(
      0.5 * (1.0 + value(B) * std::sin(ar) * std::cos(ar - b.radians())));
}

double conditional_t2(Angle a, Angle b, Outcome A, Outcome B) {
  if (marginal_t1(a, A) <= 0.0) {
    throw Error(ErrorKind::kUndefinedConditional,
                "conditioning outcome at t1 has zero probability");
  }
  return checked_probability(
      0.5 * (1.0 + value(A) * value(B) * std::cos(a.radians() - b.radians())));
}

double conditional_t2_reprepared(Angle a, Angle b, Outcome A, Outcome B) {
  return overlap_prob(basis_state(a, A), basis_state(b, B));
}

double ideal_correlator(Angle a, Angle b) {
  return std::cos(a.radians() - b.radians());
}

Moments quantum_moments(Angle a, Angle b) {
  const double mean_a = std::sin(a.radians());
  const double corr = ideal_correlator(a, b);
  return {mean_a, mean_a * corr, corr};
}

double conditional_from_moments(const Moments& m, Outcome A, Outcome B) {
  const double denom = 1.0 + value(A) * m.mean_a;
  if (!(denom > 0.0)) {
    throw Error(ErrorKind::kUndefinedConditional,
                "1 + A<sigma_a> vanishes for the conditioning outcome");
  }
  const double num =
      value(B) * m.mean_b_given_a_setting + value(A) * value(B) * m.correlator;
  return checked_probability(0.5 * (1.0 + num / denom));
}

IdentitySides moment_identity(Angle a, Angle b) {
  const double lhs =
      marginal_t2(a, b, Outcome::kPlus) - marginal_t2(a, b, Outcome::kMinus);
  const double mean_a =
      marginal_t1(a, Outcome::kPlus) - marginal_t1(a, Outcome::kMinus);
  return {lhs, mean_a * ideal_correlator(a, b)};
}

}  // namespace seqbell
