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

#include "seqbell/polytope.hpp"

#include <algorithm>
#include <cmath>

#include "seqbell/error.hpp"
#include "seqbell/simplex.hpp"

namespace seqbell {

namespace {

char sign_char(int v) { return v > 0 ? '+' : '-'; }

}  // namespace

std::string Strategy::label() const {
  return {sign_char(a), sign_char(a_prime), sign_char(b), sign_char(b_prime)};
}

Strategy strategy(std::size_t index) noexcept {
  auto bit = [index](int k) { return (index >> k) & 1U ? -1 : 1; };
  return {bit(3), bit(2), bit(1), bit(0)};
}

std::string ChshFacet::label() const {
  static constexpr const char* kTerms[4] = {"E(a,b)", "E(a,b')", "E(a',b')",
                                            "E(a',b)"};
  std::string s = sign > 0 ? "+[" : "-[";
  for (std::size_t k = 0; k < 4; ++k) {
    if (k > 0) s += k == negated ? " - " : " + ";
    else if (k == negated) s += "-";
    s += kTerms[k];
  }
  return s + "]";
}

std::array<ChshFacet, 8> chsh_facets(const CorrelatorTargets& t) {
  const double total = t[0] + t[1] + t[2] + t[3];
  std::array<ChshFacet, 8> out{};
  std::size_t i = 0;
  for (int sign : {1, -1}) {
    for (std::size_t k = 0; k < 4; ++k) {
      out[i++] = {sign, k, sign * (total - 2.0 * t[k])};
    }
  }
  return out;
}

double reproduction_error(const StrategyWeights& w,
                          const CorrelatorTargets& targets) noexcept {
  double sum = 0.0;
  CorrelatorTargets got{};
  for (std::size_t s = 0; s < kStrategyCount; ++s) {
    sum += w[s];
    const CorrelatorTargets c = strategy(s).correlators();
    for (std::size_t k = 0; k < 4; ++k) got[k] += w[s] * c[k];
  }
  double err = std::abs(sum - 1.0);
  for (std::size_t k = 0; k < 4; ++k) {
    err = std::max(err, std::abs(got[k] - targets[k]));
  }
  return err;
}

PolytopeCertificate polytope_check(const CorrelatorTargets& targets,
                                   double tolerance) {
  for (double t : targets) {
    if (!std::isfinite(t) || t < -1.0 || t > 1.0) {
      throw Error(ErrorKind::kInvalidCorrelator,
                  "correlator target outside [-1, 1]");
    }
  }

  PolytopeCertificate cert;
  const auto facets = chsh_facets(targets);
  const ChshFacet worst = *std::max_element(
      facets.begin(), facets.end(),
      [](const ChshFacet& x, const ChshFacet& y) { return x.value < y.value; });
  cert.max_facet = worst.value;
  cert.gap = std::max(0.0, worst.value - 2.0);
  cert.feasible = worst.value <= 2.0 + tolerance;
  if (!cert.feasible) cert.violated_facet = worst;

  DenseMatrix a(5, kStrategyCount);
  std::array<double, 5> b = {1.0, targets[0], targets[1], targets[2],
                             targets[3]};
  for (std::size_t s = 0; s < kStrategyCount; ++s) {
    a(0, s) = 1.0;
    const CorrelatorTargets c = strategy(s).correlators();
    for (std::size_t k = 0; k < 4; ++k) a(k + 1, s) = c[k];
  }
  const FeasibilityResult lp = find_nonnegative_solution(a, b, tolerance);
  cert.lp_feasible = lp.feasible;
  cert.lp_infeasibility = lp.infeasibility;
  cert.methods_agree = cert.lp_feasible == cert.feasible;

  if (cert.feasible && lp.feasible) {
    StrategyWeights w{};
    std::copy(lp.x.begin(), lp.x.end(), w.begin());
    cert.reproduction_error = reproduction_error(w, targets);
    cert.weights = w;
  }
  return cert;
}

}  // namespace seqbell
