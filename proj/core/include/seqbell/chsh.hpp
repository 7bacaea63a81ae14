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

#pragma once

#include <functional>
#include <numbers>
#include <vector>

#include "seqbell/lhv.hpp"
#include "seqbell/quantum.hpp"

namespace seqbell {

inline constexpr double kChshBound = 2.0;
/// violated <=> s > kChshBound + kViolationTolerance.
inline constexpr double kViolationTolerance = 1e-12;
/// Correlators may exceed [-1, 1] by this much before being rejected.
inline constexpr double kCorrelatorSlack = 1e-9;
/// Critical eta_D * F below which the ideal maximum cannot exceed 2.
inline constexpr double kCriticalEfficiency = 1.0 / std::numbers::sqrt2;

struct ChshReport {
  double s_value = 0.0;
  double bound = kChshBound;
  bool violated = false;
  double margin = 0.0;  // s_value - bound
};

ChshReport make_chsh_report(double s_value);

using CorrelatorFn = std::function<double(Angle, Angle)>;

/// |E(a,b) + E(a,b') + E(a',b') - E(a',b)|. Throws kInvalidCorrelator when
/// E returns a value outside [-1 - kCorrelatorSlack, 1 + kCorrelatorSlack].
ChshReport chsh_value(const CorrelatorFn& correlator, const ChshSettings& s);

/// Settings with |a-b| = |a-b'| = |a'-b'| = alpha and |a'-b| = 3 alpha,
/// gauge-fixed at a' = 0: (a, a', b, b') = (2 alpha, 0, 3 alpha, alpha).
ChshSettings ladder_settings(Angle alpha);

/// |3 cos(alpha) - cos(3 alpha)|.
double s_ideal_closed(Angle alpha);

/// d/d(alpha) of s_ideal_closed away from its zeros.
double s_ideal_slope(Angle alpha);

struct AlphaScanRow {
  Angle alpha;
  double s_ideal = 0.0;
  double s_exp = 0.0;  // eta_f * s_ideal
  bool violated = false;
};

struct AlphaScan {
  std::vector<AlphaScanRow> rows;
  double eta_f = 1.0;
  Angle alpha_star;
  double s_max = 0.0;
  double s_exp_max = 0.0;
};

/// Samples alpha_min, alpha_min + step, ... up to alpha_max, then refines
/// the best grid point with a golden-section search on |d s_ideal / d alpha|
/// inside the neighbouring grid cells. Throws kInvalidArgument when
/// step <= 0, alpha_max < alpha_min or eta_f is outside [0, 1].
AlphaScan scan_alpha(double alpha_min, double alpha_max, double step,
                     double eta_f = 1.0);

/// Golden-section minimisation of f on [lo, hi] to the given bracket width.
double golden_section_minimize(const std::function<double(double)>& f,
                               double lo, double hi, double tolerance);

struct ThresholdReport {
  double eta_d = 1.0;
  double overall_f = 1.0;
  double eta_f = 1.0;
  double critical = kCriticalEfficiency;
  Angle alpha_star;
  double s_max_ideal = 0.0;
  double s_max_exp = 0.0;
  bool violated = false;
  double margin = 0.0;  // s_max_exp - 2
};

/// Whether max over alpha of eta_D F s_ideal(alpha) exceeds 2.
ThresholdReport threshold_analysis(double eta_d, double overall_f);

}  // namespace seqbell
