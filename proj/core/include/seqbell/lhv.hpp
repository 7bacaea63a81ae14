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

// Hidden-variable models over a finite weighted support. A continuous
// density rho(lambda) is represented by a grid or a sample; every average
// below is then an exact finite sum.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "seqbell/quantum.hpp"

namespace seqbell {

struct LambdaPoint {
  std::size_t id = 0;
  double weight = 0.0;
};

enum class ModelKind { kFactorized, kGeneral };

const char* to_string(ModelKind kind) noexcept;

/// P(A | a, lambda) at t1.
using FirstResponse =
    std::function<double(Outcome A, Angle a, const LambdaPoint& lam)>;
/// P(B | b, lambda) at t2, blind to the t1 setting and outcome.
using FactorizedSecondResponse =
    std::function<double(Outcome B, Angle b, const LambdaPoint& lam)>;
/// P(B | a, b, A, lambda) at t2.
using GeneralSecondResponse = std::function<double(
    Outcome B, Angle a, Angle b, Outcome A, const LambdaPoint& lam)>;

/// Immutable model. Construction checks the support (non-empty, weights
/// non-negative and summing to 1 within kProbabilityTolerance); response
/// values are checked lazily at evaluation, throwing kInvalidModel.
class LhvModel {
 public:
  static LhvModel factorized(std::string name, std::vector<double> weights,
                             FirstResponse p1, FactorizedSecondResponse p2);
  static LhvModel general(std::string name, std::vector<double> weights,
                          FirstResponse p1, GeneralSecondResponse p2);

  ModelKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<LambdaPoint>& support() const noexcept { return support_; }

  double p1(Outcome A, Angle a, const LambdaPoint& lam) const;
  /// Works for both kinds; factorized models ignore a and A.
  double p2(Outcome B, Angle a, Angle b, Outcome A,
            const LambdaPoint& lam) const;
  /// Throws kUnsupportedModel for general models.
  double p2_factorized(Outcome B, Angle b, const LambdaPoint& lam) const;

  /// Throws kInvalidArgument unless lam is a point of this support.
  void require_member(const LambdaPoint& lam) const;

 private:
  LhvModel() = default;

  std::string name_;
  ModelKind kind_ = ModelKind::kFactorized;
  std::vector<LambdaPoint> support_;
  FirstResponse p1_;
  FactorizedSecondResponse p2_factorized_;
  GeneralSecondResponse p2_general_;
};

/// E(t1), E(t2) and E(t1, t2) at a single lambda.
struct PerLambdaStats {
  double e1 = 0.0;
  double e2 = 0.0;
  double e12 = 0.0;
};

JointDistribution per_lambda_joint(const LhvModel& m, Angle a, Angle b,
                                   const LambdaPoint& lam);
PerLambdaStats per_lambda_stats(const LhvModel& m, Angle a, Angle b,
                                const LambdaPoint& lam);

/// Model-level statistics: the weighted joint and the weighted moments.
struct LambdaAverage {
  JointDistribution joint;
  Moments moments;

  double marginal_t1(Outcome A) const noexcept {
    return joint.marginal_first(A);
  }
  double marginal_t2(Outcome B) const noexcept {
    return joint.marginal_second(B);
  }
  /// joint / marginal_t1; throws kUndefinedConditional when P(A) = 0.
  double conditional_t2(Outcome A, Outcome B) const;
};

LambdaAverage average_over_lambda(const LhvModel& m, Angle a, Angle b);

/// Four-point factorized model that reproduces the quantum joint exactly at
/// the single setting pair (a, b). Points of zero weight are dropped.
LhvModel fixed_setting_reproducer(Angle a, Angle b);

/// Deterministic threshold model on a uniform grid lambda_k = k / n over
/// [0, 1): A = +1 iff lambda < (1 + sin a) / 2 and B = +1 iff
/// frac(lambda + 1/2) < (1 + sin b) / 2. Throws unless grid_size >= 2.
LhvModel position_style_model(std::size_t grid_size);

/// Single-point model with every response equal to 1/2.
LhvModel uniform_model();

struct ChshSettings {
  Angle a;
  Angle a_prime;
  Angle b;
  Angle b_prime;
};

/// |e1(a)e2(b) + e1(a)e2(b') + e1(a')e2(b') - e1(a')e2(b)| at one lambda.
/// Throws kUnsupportedModel for general models.
double per_lambda_chsh(const LhvModel& m, const ChshSettings& s,
                       const LambdaPoint& lam);

struct IdentityCheck {
  std::string name;
  std::string description;
  bool mandatory = true;
  bool applicable = true;
  bool passed = true;
  double residual = 0.0;
};

struct IdentityReport {
  std::string model_name;
  Angle a;
  Angle b;
  bool outcome_symmetric = false;  // whether P(B|A) is invariant under A<->B
  std::vector<IdentityCheck> checks;

  bool mandatory_passed() const noexcept;
  bool all_passed() const noexcept;
  const IdentityCheck* find(const std::string& name) const noexcept;
};

inline constexpr double kIdentityTolerance = 1e-12;

/// Runs the correspondence and dichotomic-moment identities at (a, b).
/// Mandatory checks are identities every valid model must satisfy;
/// non-mandatory ones compare against the quantum predictions or depend on
/// the A<->B symmetry holding.
IdentityReport verify_identities(const LhvModel& m, Angle a, Angle b);

}  // namespace seqbell
