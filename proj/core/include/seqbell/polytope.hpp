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

// Membership of four correlators in the local polytope spanned by the 16
// deterministic strategies (A_a, A_a', B_b, B_b') in {+1, -1}^4.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

namespace seqbell {

/// Correlator targets in the order (a,b), (a,b'), (a',b'), (a',b).
using CorrelatorTargets = std::array<double, 4>;
using StrategyWeights = std::array<double, 16>;

inline constexpr std::size_t kStrategyCount = 16;
inline constexpr double kPolytopeTolerance = 1e-9;

struct Strategy {
  int a = 1;
  int a_prime = 1;
  int b = 1;
  int b_prime = 1;

  /// Correlator values this strategy produces, in CorrelatorTargets order.
  CorrelatorTargets correlators() const noexcept {
    return {double(a * b), double(a * b_prime), double(a_prime * b_prime),
            double(a_prime * b)};
  }
  /// e.g. "+-+-" for (A_a, A_a', B_b, B_b').
  std::string label() const;
};

/// Index i encodes bit 3 -> A_a, bit 2 -> A_a', bit 1 -> B_b, bit 0 -> B_b';
/// a clear bit means +1.
Strategy strategy(std::size_t index) noexcept;

/// sign * (E0 + E1 + E2 + E3 - 2 E[negated]).
struct ChshFacet {
  int sign = 1;
  std::size_t negated = 3;
  double value = 0.0;

  std::string label() const;
};

std::array<ChshFacet, 8> chsh_facets(const CorrelatorTargets& targets);

struct PolytopeCertificate {
  bool feasible = false;                   // facet oracle verdict
  std::optional<StrategyWeights> weights;  // iff feasible
  std::optional<ChshFacet> violated_facet; // iff infeasible
  double max_facet = 0.0;
  double gap = 0.0;  // max(0, max_facet - 2)

  bool lp_feasible = false;   // verdict of the constructive simplex route
  double lp_infeasibility = 0.0;
  double reproduction_error = 0.0;  // of weights, when present
  bool methods_agree = false;
};

/// Max deviation of the weights from normalisation and from the targets.
double reproduction_error(const StrategyWeights& w,
                          const CorrelatorTargets& targets) noexcept;

/// Decides membership twice: by the eight signed CHSH facets (complete for
/// this polytope) and by constructing weights with a phase-one simplex.
/// Throws kInvalidCorrelator when a target lies outside [-1, 1].
PolytopeCertificate polytope_check(const CorrelatorTargets& targets,
                                   double tolerance = kPolytopeTolerance);

}  // namespace seqbell
