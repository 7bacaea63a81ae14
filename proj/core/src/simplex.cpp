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

#include "seqbell/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seqbell/error.hpp"

namespace seqbell {

namespace {

constexpr double kPivotEpsilon = 1e-12;

}  // namespace

FeasibilityResult find_nonnegative_solution(const DenseMatrix& a,
                                            std::span<const double> b,
                                            double tolerance) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) {
    throw Error(ErrorKind::kInvalidArgument, "rhs size does not match rows");
  }

  // Columns: n structural, m artificial, then the rhs.
  const std::size_t rhs = n + m;
  DenseMatrix t(m + 1, n + m + 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t(i, j) = sign * a(i, j);
    t(i, n + i) = 1.0;
    t(i, rhs) = sign * b[i];
    basis[i] = n + i;
  }
  // Last row holds reduced costs of "minimise the sum of artificials" and,
  // in the rhs column, minus the current objective.
  const std::size_t z = m;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(z, j) -= t(i, j);
    t(z, rhs) -= t(i, rhs);
  }

  FeasibilityResult result;
  const int max_pivots = 50 * static_cast<int>(n + m) + 100;
  while (result.pivots < max_pivots) {
    std::size_t enter = rhs;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (t(z, j) < -kPivotEpsilon) {
        enter = j;
        break;
      }
    }
    if (enter == rhs) break;

    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter) <= kPivotEpsilon) continue;
      const double ratio = t(i, rhs) / t(i, enter);
      if (ratio < best_ratio - kPivotEpsilon ||
          (std::abs(ratio - best_ratio) <= kPivotEpsilon &&
           leave < m && basis[i] < basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    // Phase one is bounded below by zero, so an entering column always has
    // a positive entry; guard anyway against round-off.
    if (leave == m) break;

    const double pivot = t(leave, enter);
    for (double& v : t.row(leave)) v /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = t(i, enter);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= rhs; ++j) t(i, j) -= factor * t(leave, j);
    }
    basis[leave] = enter;
    ++result.pivots;
  }

  result.infeasibility = std::max(0.0, -t(z, rhs));
  if (result.infeasibility > tolerance) return result;

  result.feasible = true;
  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) result.x[basis[i]] = std::max(0.0, t(i, rhs));
  }
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += a(i, j) * result.x[j];
    result.residual = std::max(result.residual, std::abs(row - b[i]));
  }
  return result;
}

}  // namespace seqbell
