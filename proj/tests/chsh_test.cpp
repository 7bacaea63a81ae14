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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "random_models.hpp"

namespace seqbell {
namespace {

using std::numbers::pi;
const double kTwoRootTwo = 2.0 * std::numbers::sqrt2;

double separation(Angle x, Angle y) {
  return std::abs(x.radians() - y.radians());
}

TEST(LadderSettings, Separations) {
  const auto zero = ladder_settings(Angle(0));
  EXPECT_EQ(separation(zero.a, zero.b), 0.0);
  EXPECT_EQ(separation(zero.a_prime, zero.b), 0.0);

  const auto q = ladder_settings(Angle(pi / 4));
  EXPECT_NEAR(separation(q.a, q.b), pi / 4, 1e-15);
  EXPECT_NEAR(separation(q.a, q.b_prime), pi / 4, 1e-15);
  EXPECT_NEAR(separation(q.a_prime, q.b_prime), pi / 4, 1e-15);
  EXPECT_NEAR(separation(q.a_prime, q.b), 3 * pi / 4, 1e-15);

  const auto s = ladder_settings(Angle(pi / 6));
  EXPECT_NEAR(separation(s.a_prime, s.b), pi / 2, 1e-15);
}

TEST(ChshValue, IdealCorrelatorExamples) {
  const auto top = chsh_value(ideal_correlator, ladder_settings(Angle(pi / 4)));
  EXPECT_NEAR(top.s_value, 2.8284271, 1e-7);
  EXPECT_NEAR(top.s_value, kTwoRootTwo, 1e-12);
  EXPECT_TRUE(top.violated);
  EXPECT_NEAR(top.margin, kTwoRootTwo - 2.0, 1e-12);

  const auto flat = chsh_value(ideal_correlator, ladder_settings(Angle(pi / 2)));
  EXPECT_NEAR(flat.s_value, 0.0, 1e-12);
  EXPECT_FALSE(flat.violated);
}

TEST(ChshValue, RejectsOutOfRangeCorrelator) {
  auto bad = [](Angle, Angle) { return 1.01; };
  try {
    chsh_value(bad, ladder_settings(Angle(0.3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidCorrelator);
  }
  auto slightly = [](Angle, Angle) { return 1.0 + 1e-10; };
  EXPECT_NO_THROW(chsh_value(slightly, ladder_settings(Angle(0.3))));
}

TEST(ChshReport, ViolationUsesTolerance) {
  EXPECT_FALSE(make_chsh_report(2.0).violated);
  EXPECT_FALSE(make_chsh_report(2.0 + 1e-13).violated);
  EXPECT_TRUE(make_chsh_report(2.0 + 1e-11).violated);
}

TEST(SIdealClosed, Examples) {
  EXPECT_DOUBLE_EQ(s_ideal_closed(Angle(0)), 2.0);
  EXPECT_NEAR(s_ideal_closed(Angle(pi / 4)), kTwoRootTwo, 1e-15);
  EXPECT_NEAR(s_ideal_closed(Angle(pi / 3)), 2.5, 1e-12);
  EXPECT_NEAR(chsh_value(ideal_correlator, ladder_settings(Angle(pi / 3))).s_value,
              2.5, 1e-12);
}

TEST(SIdealClosed, MatchesChshValueOnGrid) {
  for (int i = 0; i < 10'000; ++i) {
    const Angle alpha(2 * pi * i / 10'000);
    ASSERT_NEAR(chsh_value(ideal_correlator, ladder_settings(alpha)).s_value,
                s_ideal_closed(alpha), 1e-12);
  }
}

TEST(SIdealSlope, MatchesFiniteDifferences) {
  for (double x : {0.1, 0.5, 1.0, 2.0, 2.9}) {
    const double h = 1e-6;
    const double fd =
        (s_ideal_closed(Angle(x + h)) - s_ideal_closed(Angle(x - h))) / (2 * h);
    EXPECT_NEAR(s_ideal_slope(Angle(x)), fd, 1e-6) << x;
  }
}

TEST(GoldenSection, FindsParabolaMinimum) {
  const double x = golden_section_minimize(
      [](double t) { return (t - 0.3) * (t - 0.3); }, -1.0, 2.0, 1e-10);
  EXPECT_NEAR(x, 0.3, 1e-8);
}

TEST(ScanAlpha, ArgmaxAndMaximum) {
  const AlphaScan scan = scan_alpha(0.0, pi, 1e-3);
  EXPECT_EQ(scan.rows.size(), 3142U);
  // Calculus oracle: the stationary point solves sin 3a = sin a, whose root
  // in (0, pi/2) is pi/4.
  EXPECT_NEAR(scan.alpha_star.radians(), 0.7853982, 1e-7);
  EXPECT_NEAR(scan.alpha_star.radians(), pi / 4, 1e-9);
  EXPECT_NEAR(scan.s_max, kTwoRootTwo, 1e-9);
  EXPECT_DOUBLE_EQ(scan.rows.front().s_ideal, 2.0);
  EXPECT_LE(scan.rows.front().s_ideal, scan.s_max);
}

TEST(ScanAlpha, RowsScaleWithEfficiency) {
  const AlphaScan scan = scan_alpha(0.0, 1.5, 0.01, 0.8);
  for (const auto& row : scan.rows) {
    ASSERT_NEAR(row.s_exp, 0.8 * row.s_ideal, 1e-12);
    ASSERT_EQ(row.violated, row.s_exp > 2.0 + 1e-12);
  }
  EXPECT_NEAR(scan.s_exp_max, 0.8 * scan.s_max, 1e-12);
}

TEST(ScanAlpha, RangeEdgeCases) {
  EXPECT_THROW(scan_alpha(1.0, 0.5, 0.1), Error);
  EXPECT_THROW(scan_alpha(0.0, 1.0, 0.0), Error);
  EXPECT_THROW(scan_alpha(0.0, 1.0, -0.1), Error);
  EXPECT_THROW(scan_alpha(0.0, 1.0, 0.1, 1.5), Error);
  const AlphaScan single = scan_alpha(0.5, 0.5, 0.1);
  ASSERT_EQ(single.rows.size(), 1U);
  EXPECT_DOUBLE_EQ(single.alpha_star.radians(), 0.5);
}

TEST(ScanAlpha, MaximumAtRangeBoundaryStaysOnBoundary) {
  // On [0, 0.5] s_ideal increases, so the best point is the right end.
  const AlphaScan scan = scan_alpha(0.0, 0.5, 0.01);
  EXPECT_NEAR(scan.alpha_star.radians(), 0.5, 1e-12);
}

TEST(ThresholdAnalysis, Examples) {
  const auto ideal = threshold_analysis(1.0, 1.0);
  EXPECT_TRUE(ideal.violated);
  EXPECT_NEAR(ideal.margin, 0.8284271247461903, 1e-9);

  const auto low = threshold_analysis(1.0, 0.70);
  EXPECT_FALSE(low.violated);
  EXPECT_NEAR(low.s_max_exp, 1.9798989873223332, 1e-9);

  const auto high = threshold_analysis(0.9, 0.8);
  EXPECT_TRUE(high.violated);
  EXPECT_NEAR(high.eta_f, 0.72, 1e-15);
  EXPECT_NEAR(high.s_max_exp, 2.0364675298172568, 1e-9);

  EXPECT_NEAR(ideal.critical, 0.7071067811865476, 1e-15);
}

TEST(ThresholdAnalysis, CriticalValueIsNotAViolation) {
  const auto at = threshold_analysis(1.0, kCriticalEfficiency);
  EXPECT_FALSE(at.violated);
  EXPECT_NEAR(at.s_max_exp, 2.0, 1e-12);
  EXPECT_TRUE(threshold_analysis(1.0, kCriticalEfficiency + 1e-6).violated);
  EXPECT_THROW(threshold_analysis(1.2, 0.5), Error);
}

TEST(ChshValue, FactorizedModelsRespectBound) {
  std::mt19937_64 gen(606);
  for (int i = 0; i < 2000; ++i) {
    const LhvModel m = testing::random_factorized_model(gen, 4);
    const ChshSettings s = testing::random_settings(gen);
    auto corr = [&](Angle x, Angle y) {
      return average_over_lambda(m, x, y).moments.correlator;
    };
    ASSERT_LE(chsh_value(corr, s).s_value, 2.0 + 1e-12);
  }
}

}  // namespace
}  // namespace seqbell
