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

#include "seqbell/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "seqbell/philox.hpp"

namespace seqbell {
namespace {

using std::numbers::pi;
constexpr Outcome kP = Outcome::kPlus;
constexpr Outcome kM = Outcome::kMinus;

// Known-answer vectors from a Python reference implementation, checked
// bit-for-bit against numpy.random.Philox (Philox4x64-10).
TEST(Philox4x64, KnownAnswers) {
  EXPECT_EQ(Philox4x64::block({0, 0, 0, 0}, {0, 0}),
            (Philox4x64::Counter{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL,
                                 0xd7e772cee186176bULL, 0x7e68b68aec7ba23bULL}));
  EXPECT_EQ(Philox4x64::block({5, 7, 0, 0}, {12345, 0x5eed}),
            (Philox4x64::Counter{0x2321b2fac895b1a9ULL, 0x18f1fd6272337609ULL,
                                 0xb71c0b49b21afc1cULL, 0xcf8f2f9f827f38cdULL}));
  constexpr auto kMax = ~std::uint64_t{0};
  EXPECT_EQ(Philox4x64::block({kMax, kMax, kMax, kMax}, {kMax, kMax}),
            (Philox4x64::Counter{0x87b092c3013fe90bULL, 0x438c3c67be8d0224ULL,
                                 0x9cc7d7c69cd777b6ULL, 0xa09caebf594f0ba0ULL}));
}

TEST(TrialStream, AdvancesAndIsAddressable) {
  TrialStream s(42, 3, 17);
  const auto first = s.next_block();
  const auto second = s.next_block();
  EXPECT_NE(first, second);
  EXPECT_EQ(s.blocks_drawn(), 2U);
  TrialStream again(42, 3, 17);
  EXPECT_EQ(again.next_block(), first);
  TrialStream other_shard(42, 4, 17);
  EXPECT_NE(other_shard.next_block(), first);
}

TEST(UnitInterval, Bounds) {
  EXPECT_EQ(to_unit_interval(0), 0.0);
  EXPECT_LT(to_unit_interval(~std::uint64_t{0}), 1.0);
}

TEST(DetectionConfig, OverallAndValidation) {
  DetectionConfig c{0.9, 0.5, 0.8, 0.5};
  EXPECT_DOUBLE_EQ(c.overall_f(), 0.2);
  EXPECT_DOUBLE_EQ(c.detection_probability(), 0.18);
  EXPECT_NO_THROW(c.validate());
  c.f21 = 1.5;
  EXPECT_THROW(c.validate(), Error);
  c.f21 = -0.1;
  EXPECT_THROW(c.validate(), Error);
}

TEST(DetectorId, Labels) {
  EXPECT_EQ(kDetectors[0].label(), "D++");
  EXPECT_EQ(kDetectors[1].label(), "D+-");
  EXPECT_EQ(kDetectors[2].label(), "D-+");
  EXPECT_EQ(kDetectors[3].label(), "D--");
}

TEST(SampleTrial, ZeroAcceptanceNeverDetects) {
  DetectionConfig c{1.0, 1.0, 0.0, 1.0};
  for (std::uint64_t t = 0; t < 1000; ++t) {
    TrialStream rng(7, 0, t);
    EXPECT_FALSE(sample_trial(Angle(0.3), Angle(1.2), c, rng).has_value());
  }
}

TEST(SampleTrial, AlignedSettingsAlwaysHitPlusPlus) {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    TrialStream rng(7, 0, t);
    auto hit = sample_trial(Angle(pi / 2), Angle(pi / 2), {}, rng);
    ASSERT_TRUE(hit.has_value());
    EXPECT_EQ(*hit, (DetectorId{kP, kP}));
    EXPECT_EQ(rng.blocks_drawn(), 1U);
  }
}

TEST(Run, SingleUndetectedTrial) {
  const RunCounts r = run(Angle(0), Angle(0), {1.0, 0.0, 1.0, 1.0}, 1, 9);
  EXPECT_EQ(r.n_total, 1U);
  EXPECT_EQ(r.n_undetected, 1U);
  EXPECT_EQ(r.detected(), 0U);
}

TEST(Run, RejectsZeroTrialsAndBadConfig) {
  EXPECT_THROW(run(Angle(0), Angle(0), {}, 0, 1), Error);
  EXPECT_THROW(run(Angle(0), Angle(0), {2.0, 1.0, 1.0, 1.0}, 10, 1), Error);
}

TEST(Run, DeterministicAcrossThreadCounts) {
  const DetectionConfig c{0.9, 0.95, 0.9, 0.85};
  const std::uint64_t n = 5 * kShardTrials + 123;
  const RunCounts one = run(Angle(0.7), Angle(-0.4), c, n, 2024, {1});
  const RunCounts four = run(Angle(0.7), Angle(-0.4), c, n, 2024, {4});
  const RunCounts many = run(Angle(0.7), Angle(-0.4), c, n, 2024, {13});
  EXPECT_EQ(one, four);
  EXPECT_EQ(one, many);
  EXPECT_EQ(one.detected() + one.n_undetected, n);
  const RunCounts other_seed = run(Angle(0.7), Angle(-0.4), c, n, 2025);
  EXPECT_NE(one.counts, other_seed.counts);
}

TEST(Run, BinomialAgreementAtZeroZero) {
  const std::uint64_t n = 1'000'000;
  const RunCounts r = run(Angle(0), Angle(0), {}, n, 11, {0});
  const double p = static_cast<double>(r.count({kP, kP})) / n;
  EXPECT_NEAR(p, 0.5, 0.0015);
  EXPECT_EQ(r.count({kP, kM}), 0U);
  EXPECT_EQ(r.count({kM, kP}), 0U);
}

TEST(Run, PlusPlusFrequencyAtQuarterPi) {
  // (1/4)(1 + sin pi/4)(1 + cos pi/4), frozen from the closed form.
  const double expected = 0.7285533905932735;
  const std::uint64_t n = 1'000'000;
  const RunCounts r = run(Angle(pi / 4), Angle(0), {}, n, 12, {0});
  const double sigma = std::sqrt(expected * (1 - expected) / n);
  EXPECT_NEAR(static_cast<double>(r.count({kP, kP})) / n, expected, 3 * sigma);
}

TEST(Estimate, AllCountsInPlusPlus) {
  RunCounts r;
  r.n_total = 10;
  r.counts = {6, 0, 0, 0};
  r.n_undetected = 4;
  const auto m = estimate(r);
  EXPECT_DOUBLE_EQ(m.correlator_exp, 0.6);
  ASSERT_TRUE(m.correlator_conditioned.has_value());
  EXPECT_DOUBLE_EQ(*m.correlator_conditioned, 1.0);
  EXPECT_DOUBLE_EQ(*m.std_error_conditioned, 0.0);
}

TEST(Estimate, NoDetectionsLeavesConditionedEmpty) {
  RunCounts r;
  r.n_total = 5;
  r.n_undetected = 5;
  const auto m = estimate(r);
  EXPECT_EQ(m.correlator_exp, 0.0);
  EXPECT_FALSE(m.correlator_conditioned.has_value());
  EXPECT_THROW(estimate(RunCounts{}), Error);
}

TEST(Estimate, OrthogonalSettingsGiveZero) {
  const RunCounts r = run(Angle(pi / 2), Angle(0), {}, 1'000'000, 5, {0});
  EXPECT_NEAR(estimate(r).correlator_exp, 0.0, 3e-3);
}

TEST(Estimate, ScaledCorrelator) {
  const DetectionConfig c{1.0, 0.8, 1.0, 1.0};
  const RunCounts r = run(Angle(pi / 4), Angle(0), c, 1'000'000, 6, {0});
  const auto m = estimate(r);
  EXPECT_NEAR(m.correlator_exp, 0.8 * 0.7071067811865476, 3 * m.std_error);
  EXPECT_NEAR(*m.correlator_conditioned, 0.7071067811865476,
              3 * *m.std_error_conditioned);
}

TEST(Run, OnlyProductFMatters) {
  // Same eta_D * F via different stage splits gives identical counts, since
  // detection is a single Bernoulli on the product.
  const DetectionConfig x{0.5, 1.0, 0.8, 1.0};
  const DetectionConfig y{1.0, 0.8, 0.5, 1.0};
  ASSERT_EQ(x.detection_probability(), y.detection_probability());
  const RunCounts rx = run(Angle(0.2), Angle(1.0), x, 200'000, 77);
  const RunCounts ry = run(Angle(0.2), Angle(1.0), y, 200'000, 77);
  EXPECT_EQ(rx.counts, ry.counts);
  EXPECT_EQ(rx.n_undetected, ry.n_undetected);
}

TEST(HvDetection, Examples) {
  EXPECT_DOUBLE_EQ(hv_detection_probability(1.0, {}), 1.0);
  EXPECT_NEAR(hv_detection_probability(0.25, {0.9, 0.8, 1.0, 1.0}), 0.18,
              1e-15);
  EXPECT_THROW(hv_detection_probability(1.5, {}), Error);
}

TEST(HvDetection, ReproducerMatchesQuantumClickProbabilities) {
  const Angle a(pi / 3), b(pi / 6);
  const DetectionConfig c{0.9, 0.95, 0.9, 0.85};
  const auto hv = hv_detection_distribution(fixed_setting_reproducer(a, b), a,
                                            b, c);
  const auto qm = detection_probabilities(a, b, c);
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(hv[i], qm[i], 1e-12);
    total += hv[i];
  }
  EXPECT_NEAR(total, c.detection_probability(), 1e-12);
}

TEST(ExpCorrelator, ScalesWithEfficiency) {
  const DetectionConfig c{0.9, 0.8, 1.0, 1.0};
  EXPECT_NEAR(exp_correlator(Angle(0.3), Angle(0.1), c),
              0.72 * std::cos(0.2), 1e-15);
}

}  // namespace
}  // namespace seqbell
