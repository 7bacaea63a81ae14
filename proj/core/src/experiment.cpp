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

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "compensated_sum.hpp"

namespace seqbell {

void DetectionConfig::validate() const {
  const std::array<std::pair<const char*, double>, 4> fields = {{
      {"eta_d", eta_d},
      {"f1", f1},
      {"f21", f21},
      {"f_d2", f_d2},
  }};
  for (const auto& [name, v] : fields) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(name) + " must lie in [0, 1]");
    }
  }
}

std::string DetectorId::label() const {
  std::string s = "D";
  s += a == Outcome::kPlus ? '+' : '-';
  s += b == Outcome::kPlus ? '+' : '-';
  return s;
}

std::optional<DetectorId> sample_trial(Angle a, Angle b,
                                       const DetectionConfig& config,
                                       TrialStream& rng) {
  const auto block = rng.next_block();
  const double p_first = 0.5 * (1.0 + std::sin(a.radians()));
  const Outcome A =
      to_unit_interval(block[0]) < p_first ? Outcome::kPlus : Outcome::kMinus;
  // Same value as conditional_t2(a, b, A, +1), without the zero-marginal
  // guard: A is never drawn with probability zero.
  const double p_second =
      0.5 * (1.0 + value(A) * std::cos(a.radians() - b.radians()));
  const Outcome B =
      to_unit_interval(block[1]) < p_second ? Outcome::kPlus : Outcome::kMinus;
  if (!(to_unit_interval(block[2]) < config.detection_probability())) {
    return std::nullopt;
  }
  return DetectorId{A, B};
}

std::uint64_t RunCounts::detected() const noexcept {
  std::uint64_t d = 0;
  for (auto c : counts) d += c;
  return d;
}

RunCounts& RunCounts::operator+=(const RunCounts& other) {
  n_total += other.n_total;
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  n_undetected += other.n_undetected;
  return *this;
}

namespace {

void run_shard(Angle a, Angle b, const DetectionConfig& config,
               std::uint64_t seed, std::uint64_t shard, std::uint64_t n,
               RunCounts& out) {
  const std::uint64_t begin = shard * kShardTrials;
  const std::uint64_t end = std::min(n, begin + kShardTrials);
  for (std::uint64_t t = begin; t < end; ++t) {
    TrialStream rng(seed, shard, t - begin);
    if (auto hit = sample_trial(a, b, config, rng)) {
      ++out.counts[hit->index()];
    } else {
      ++out.n_undetected;
    }
    ++out.n_total;
  }
}

}  // namespace

RunCounts run(Angle a, Angle b, const DetectionConfig& config, std::uint64_t n,
              std::uint64_t seed, RunOptions options) {
  if (n == 0) {
    throw Error(ErrorKind::kInvalidArgument, "trial count must be at least 1");
  }
  config.validate();

  RunCounts total;
  total.seed = seed;
  total.a = a;
  total.b = b;
  total.config = config;

  const std::uint64_t shards = (n + kShardTrials - 1) / kShardTrials;
  unsigned workers = options.threads == 0
                         ? std::max(1U, std::thread::hardware_concurrency())
                         : options.threads;
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, shards));

  std::vector<RunCounts> partial(workers, total);
  auto work = [&](unsigned w) {
    for (std::uint64_t s = w; s < shards; s += workers) {
      run_shard(a, b, config, seed, s, n, partial[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const RunCounts& p : partial) total += p;
  return total;
}

EstimatedMoments estimate(const RunCounts& counts) {
  if (counts.n_total == 0) {
    throw Error(ErrorKind::kInvalidArgument, "run has no trials");
  }
  double signed_sum = 0.0;
  for (DetectorId d : kDetectors) {
    signed_sum += value(d.a) * value(d.b) * static_cast<double>(counts.count(d));
  }
  const double n = static_cast<double>(counts.n_total);
  const double detected = static_cast<double>(counts.detected());

  // Per-trial score X in {-1, 0, +1}: Var(X) = E[X^2] - E[X]^2, E[X^2] is
  // the detected fraction.
  EstimatedMoments m;
  m.correlator_exp = signed_sum / n;
  const double var_exp =
      std::max(0.0, detected / n - m.correlator_exp * m.correlator_exp);
  m.std_error = std::sqrt(var_exp / n);
  if (detected > 0.0) {
    const double c = signed_sum / detected;
    m.correlator_conditioned = c;
    m.std_error_conditioned = std::sqrt(std::max(0.0, 1.0 - c * c) / detected);
  }
  return m;
}

std::array<double, 4> detection_probabilities(Angle a, Angle b,
                                              const DetectionConfig& config) {
  config.validate();
  const JointDistribution joint = quantum_joint(a, b);
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) {
    p[i] = config.detection_probability() * joint.entries()[i];
  }
  return p;
}

double exp_correlator(Angle a, Angle b, const DetectionConfig& config) {
  config.validate();
  return config.detection_probability() * ideal_correlator(a, b);
}

double hv_detection_probability(double model_joint,
                                const DetectionConfig& config) {
  config.validate();
  if (!(model_joint >= 0.0 && model_joint <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "model joint probability must lie in [0, 1]");
  }
  return config.detection_probability() * model_joint;
}

std::array<double, 4> hv_detection_distribution(const LhvModel& m, Angle a,
                                                Angle b,
                                                const DetectionConfig& config) {
  std::array<detail::CompensatedSum, 4> acc;
  for (const LambdaPoint& lam : m.support()) {
    const JointDistribution j = per_lambda_joint(m, a, b, lam);
    for (std::size_t i = 0; i < 4; ++i) {
      acc[i].add(lam.weight * hv_detection_probability(j.entries()[i], config));
    }
  }
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) p[i] = acc[i].value();
  return p;
}

}  // namespace seqbell
