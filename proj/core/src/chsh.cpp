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

#include "seqbell/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace seqbell {

ChshReport make_chsh_report(double s_value) {
  ChshReport r;
  r.s_value = s_value;
  r.margin = s_value - r.bound;
  r.violated = s_value > r.bound + kViolationTolerance;
  return r;
}

ChshReport chsh_value(const CorrelatorFn& correlator, const ChshSettings& s) {
  auto E = [&](Angle x, Angle y) {
    const double e = correlator(x, y);
    if (!std::isfinite(e) || std::abs(e) > 1.0 + kCorrelatorSlack) {
      throw Error(ErrorKind::kInvalidCorrelator,
                  "correlator out of range: " + std::to_string(e));
    }
    return e;
  };
  const double sum = E(s.a, s.b) + E(s.a, s.b_prime) +
                     E(s.a_prime, s.b_prime) - E(s.a_prime, s.b);
  return make_chsh_report(std::abs(sum));
}

ChshSettings ladder_settings(Angle alpha) {
  const double x = alpha.radians();
  return {Angle(2.0 * x), Angle(0.0), Angle(3.0 * x), Angle(x)};
}

double s_ideal_closed(Angle alpha) {
  const double x = alpha.radians();
  return std::abs(3.0 * std::cos(x) - std::cos(3.0 * x));
}

double s_ideal_slope(Angle alpha) {
  const double x = alpha.radians();
  const double g = 3.0 * std::cos(x) - std::cos(3.0 * x);
  const double dg = -3.0 * std::sin(x) + 3.0 * std::sin(3.0 * x);
  return g < 0.0 ? -dg : dg;
}

double golden_section_minimize(const std::function<double(double)>& f,
                               double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tolerance) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    // Bracket stops shrinking once it reaches adjacent doubles.
    if (c >= d) break;
  }
  return 0.5 * (lo + hi);
}

AlphaScan scan_alpha(double alpha_min, double alpha_max, double step,
                     double eta_f) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorKind::kInvalidArgument, "alpha step must be positive");
  }
  if (!std::isfinite(alpha_min) || !std::isfinite(alpha_max) ||
      alpha_max < alpha_min) {
    throw Error(ErrorKind::kInvalidArgument, "alpha range is empty");
  }
  if (!(eta_f >= 0.0 && eta_f <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eta_D * F must lie in [0, 1]");
  }

  AlphaScan scan;
  scan.eta_f = eta_f;
  const auto n = static_cast<std::size_t>(
      std::floor((alpha_max - alpha_min) / step + 1e-9)) + 1;
  scan.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Angle alpha(alpha_min + static_cast<double>(i) * step);
    AlphaScanRow row;
    row.alpha = alpha;
    row.s_ideal = s_ideal_closed(alpha);
    row.s_exp = eta_f * row.s_ideal;
    row.violated = make_chsh_report(row.s_exp).violated;
    scan.rows.push_back(row);
  }

  // Function values near a smooth maximum are flat to ~sqrt(eps) in alpha,
  // so the refinement drives the slope to zero instead. Every local grid
  // maximum is refined: equal peaks (pi/4 and 3pi/4 on [0, pi]) sit at
  // different distances from the grid, so only refined values compare.
  auto refine = [&](std::size_t i) {
    const double grid_alpha = scan.rows[i].alpha.radians();
    const double lo = std::max(alpha_min, grid_alpha - step);
    const double hi = std::min(alpha_max, grid_alpha + step);
    if (!(hi > lo)) return grid_alpha;
    const double refined = golden_section_minimize(
        [](double x) { return std::abs(s_ideal_slope(Angle(x))); }, lo, hi,
        1e-15);
    return s_ideal_closed(Angle(refined)) >= scan.rows[i].s_ideal ? refined
                                                                  : grid_alpha;
  };
  double alpha_star = scan.rows[0].alpha.radians();
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = scan.rows[i].s_ideal;
    const bool left_ok = i == 0 || s >= scan.rows[i - 1].s_ideal;
    const bool right_ok = i + 1 == n || s >= scan.rows[i + 1].s_ideal;
    if (!left_ok || !right_ok) continue;
    const double x = refine(i);
    const double v = s_ideal_closed(Angle(x));
    // Ties resolve to the smallest alpha.
    if (v > best + kViolationTolerance) {
      best = v;
      alpha_star = x;
    }
  }
  scan.alpha_star = Angle(alpha_star);
  scan.s_max = s_ideal_closed(scan.alpha_star);
  scan.s_exp_max = eta_f * scan.s_max;
  return scan;
}

ThresholdReport threshold_analysis(double eta_d, double overall_f) {
  if (!(eta_d >= 0.0 && eta_d <= 1.0) ||
      !(overall_f >= 0.0 && overall_f <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "eta_D and F must lie in [0, 1]");
  }
  ThresholdReport t;
  t.eta_d = eta_d;
  t.overall_f = overall_f;
  t.eta_f = eta_d * overall_f;
  const AlphaScan scan = scan_alpha(0.0, std::numbers::pi, 1e-3, t.eta_f);
  t.alpha_star = scan.alpha_star;
  t.s_max_ideal = scan.s_max;
  t.s_max_exp = scan.s_exp_max;
  const ChshReport r = make_chsh_report(t.s_max_exp);
  t.violated = r.violated;
  t.margin = r.margin;
  return t;
}

}  // namespace seqbell
