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

// Monte Carlo simulation of source -> M1(a) -> M2(b) -> detector D_AB with
// finite collimator acceptance and detector efficiency.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "seqbell/lhv.hpp"
#include "seqbell/philox.hpp"
#include "seqbell/quantum.hpp"

namespace seqbell {

/// Detector efficiency and the three collimator acceptance probabilities.
struct DetectionConfig {
  double eta_d = 1.0;
  double f1 = 1.0;
  double f21 = 1.0;
  double f_d2 = 1.0;

  /// F = f1 * f21 * f_d2.
  double overall_f() const noexcept { return f1 * f21 * f_d2; }
  /// eta_D * F, the probability that an emitted particle is counted.
  double detection_probability() const noexcept {
    return eta_d * overall_f();
  }

  /// Throws kInvalidArgument unless every field lies in [0, 1].
  void validate() const;

  friend bool operator==(const DetectionConfig&,
                         const DetectionConfig&) = default;
};

struct DetectorId {
  Outcome a = Outcome::kPlus;
  Outcome b = Outcome::kPlus;

  std::size_t index() const noexcept { return JointDistribution::index(a, b); }
  /// "D++", "D+-", "D-+" or "D--".
  std::string label() const;

  friend bool operator==(const DetectorId&, const DetectorId&) = default;
};

inline constexpr std::array<DetectorId, 4> kDetectors = {{
    {Outcome::kPlus, Outcome::kPlus},
    {Outcome::kPlus, Outcome::kMinus},
    {Outcome::kMinus, Outcome::kPlus},
    {Outcome::kMinus, Outcome::kMinus},
}};

/// Trials per logical shard. Shards are the unit of parallel work and of RNG
/// addressing, so results do not depend on the worker count.
inline constexpr std::uint64_t kShardTrials = std::uint64_t{1} << 16;

/// One particle through the chain: A ~ P(A), B ~ P(B | A), then a single
/// Bernoulli(eta_D * F) for detection. Returns nullopt when undetected.
/// Each draw uses u in [0, 1) and picks the first outcome iff u < p.
std::optional<DetectorId> sample_trial(Angle a, Angle b,
                                       const DetectionConfig& config,
                                       TrialStream& rng);

struct RunCounts {
  std::uint64_t n_total = 0;
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t n_undetected = 0;
  std::uint64_t seed = 0;
  Angle a;
  Angle b;
  DetectionConfig config;

  std::uint64_t count(DetectorId d) const noexcept { return counts[d.index()]; }
  std::uint64_t detected() const noexcept;

  /// Adds the tallies of another run over the same inputs.
  RunCounts& operator+=(const RunCounts& other);

  friend bool operator==(const RunCounts&, const RunCounts&) = default;
};

struct RunOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

/// n independent trials addressed as (seed, trial / kShardTrials,
/// trial % kShardTrials). Throws kInvalidArgument for n == 0 or an invalid
/// config.
RunCounts run(Angle a, Angle b, const DetectionConfig& config, std::uint64_t n,
              std::uint64_t seed, RunOptions options = {});

struct EstimatedMoments {
  /// Sum of A*B*count / n_total; estimates eta_D F cos(a - b).
  double correlator_exp = 0.0;
  double std_error = 0.0;
  /// Same sum over detected trials only; estimates cos(a - b). Empty when
  /// nothing was detected.
  std::optional<double> correlator_conditioned;
  std::optional<double> std_error_conditioned;
};

/// Throws kInvalidArgument when counts.n_total == 0.
EstimatedMoments estimate(const RunCounts& counts);

/// eta_D * F * P(A, B): expected detector-click probabilities.
std::array<double, 4> detection_probabilities(Angle a, Angle b,
                                              const DetectionConfig& config);

/// eta_D * F * cos(a - b).
double exp_correlator(Angle a, Angle b, const DetectionConfig& config);

/// Per-lambda click probability eta_D * F * p(A, B | lambda).
double hv_detection_probability(double model_joint,
                                const DetectionConfig& config);

/// Click probabilities averaged over the model's lambda support.
std::array<double, 4> hv_detection_distribution(const LhvModel& m, Angle a,
                                                Angle b,
                                                const DetectionConfig& config);

}  // namespace seqbell
