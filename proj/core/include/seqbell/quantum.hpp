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

// Quantum statistics of a spin-1/2 particle prepared along +x and analysed
// by two Stern-Gerlach devices in sequence, at t1 along angle a and at t2
// along angle b. All angles lie in the xz-plane and are measured from +z.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>

#include "seqbell/error.hpp"

namespace seqbell {

/// Tolerance for float noise on computed probabilities. Values in
/// [-kProbabilityTolerance, 0) are clamped to zero; anything further out of
/// [0, 1] is a logic error.
inline constexpr double kProbabilityTolerance = 1e-12;

/// Normalisation tolerance accepted by overlap_prob.
inline constexpr double kStateNormTolerance = 1e-9;

class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians);

  static Angle from_degrees(double degrees) {
    return Angle(degrees * std::numbers::pi / 180.0);
  }

  constexpr double radians() const noexcept { return radians_; }

  friend Angle operator+(Angle lhs, Angle rhs) {
    return Angle(lhs.radians_ + rhs.radians_);
  }
  friend Angle operator-(Angle lhs, Angle rhs) {
    return Angle(lhs.radians_ - rhs.radians_);
  }
  friend constexpr bool operator==(Angle, Angle) = default;

 private:
  double radians_ = 0.0;
};

/// Spin component outcome in units of hbar/2.
enum class Outcome : int { kPlus = 1, kMinus = -1 };

inline constexpr std::array<Outcome, 2> kOutcomes = {Outcome::kPlus,
                                                     Outcome::kMinus};

constexpr int value(Outcome o) noexcept { return static_cast<int>(o); }

/// Throws kInvalidArgument unless v is +1 or -1.
Outcome outcome_from_int(int v);

enum class TimeSlot : int { kFirst = 1, kSecond = 2 };

struct MeasurementSetting {
  TimeSlot slot = TimeSlot::kFirst;
  Angle angle;
};

/// Amplitudes on |z+> and |z->.
struct SpinState {
  std::complex<double> plus;
  std::complex<double> minus;

  double norm_squared() const noexcept {
    return std::norm(plus) + std::norm(minus);
  }
  bool is_normalized(double tol = kProbabilityTolerance) const noexcept;
};

/// Clamps float noise below zero or above one; throws kInvalidProbability
/// when p is outside [-tol, 1 + tol] or not finite.
double checked_probability(double p, double tol = kProbabilityTolerance);

/// Joint outcome probabilities p(A, B), stored in the order
/// (+,+), (+,-), (-,+), (-,-).
class JointDistribution {
 public:
  JointDistribution() = default;

  /// Clamps and validates every entry and the total mass.
  static JointDistribution from_entries(const std::array<double, 4>& p);

  static constexpr std::size_t index(Outcome a, Outcome b) noexcept {
    return (a == Outcome::kPlus ? 0U : 2U) + (b == Outcome::kPlus ? 0U : 1U);
  }

  double operator()(Outcome a, Outcome b) const noexcept {
    return p_[index(a, b)];
  }
  std::span<const double, 4> entries() const noexcept { return p_; }

  double marginal_first(Outcome a) const noexcept {
    return (*this)(a, Outcome::kPlus) + (*this)(a, Outcome::kMinus);
  }
  double marginal_second(Outcome b) const noexcept {
    return (*this)(Outcome::kPlus, b) + (*this)(Outcome::kMinus, b);
  }
  /// Sum of A*B*p(A, B).
  double correlator() const noexcept;

 private:
  std::array<double, 4> p_{};
};

/// First and second moments of the two dichotomic observables.
struct Moments {
  double mean_a = 0.0;                  // <sigma_a(t1)>
  double mean_b_given_a_setting = 0.0;  // <sigma_b(t2)>_a
  double correlator = 0.0;              // <sigma_a(t1) sigma_b(t2)>
};

enum class JointMode { kAmplitude, kClosedForm };

SpinState basis_state(Angle theta, Outcome sign);
SpinState initial_state();

/// |<psi|phi>|^2. Throws kInvalidState if either input is off the unit
/// sphere by more than kStateNormTolerance.
double overlap_prob(const SpinState& psi, const SpinState& phi);

/// Joint probability of A at t1 and B at t2. kClosedForm is the production
/// path; kAmplitude composes the two Born-rule overlaps and serves as the
/// reference.
JointDistribution quantum_joint(Angle a, Angle b,
                                JointMode mode = JointMode::kClosedForm);

double marginal_t1(Angle a, Outcome A);
double marginal_t2(Angle a, Angle b, Outcome B);

/// P(B at t2 | A at t1). Throws kUndefinedConditional when marginal_t1(a, A)
/// vanishes.
double conditional_t2(Angle a, Angle b, Outcome A, Outcome B);

/// The same conditional read as a fresh preparation in basis_state(a, A)
/// followed by a single measurement along b.
double conditional_t2_reprepared(Angle a, Angle b, Outcome A, Outcome B);

/// cos(a - b): sum of A*B*p(A, B) at unit detection efficiency.
double ideal_correlator(Angle a, Angle b);

/// Moments of the quantum joint distribution at (a, b).
Moments quantum_moments(Angle a, Angle b);

/// Conditional P(B | A) reconstructed from the three moments of a pair of
/// dichotomic observables. Throws kUndefinedConditional when
/// 1 + A * mean_a is not positive.
double conditional_from_moments(const Moments& m, Outcome A, Outcome B);

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// <sigma_b>_a against <sigma_a> * <sigma_a sigma_b>. The left side is read
/// off the t2 marginal, the right side is built from the t1 marginal and the
/// correlator.
IdentitySides moment_identity(Angle a, Angle b);

}  // namespace seqbell
