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

#include <cstddef>
#include <span>
#include <vector>

namespace seqbell {

/// Dense row-major matrix, just enough for small linear programs.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }
  std::span<double> row(std::size_t r) noexcept {
    return {data_.data() + r * cols_, cols_};
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> x;       // present iff feasible
  double infeasibility = 0.0;  // phase-one optimum, sum of artificials
  double residual = 0.0;       // max |Ax - b| of the returned x
  int pivots = 0;
};

/// Phase one of the two-phase simplex method with Bland's rule: finds
/// x >= 0 with Ax = b, or reports that none exists. A point is accepted
/// when the phase-one optimum is at most tolerance.
FeasibilityResult find_nonnegative_solution(const DenseMatrix& a,
                                            std::span<const double> b,
                                            double tolerance = 1e-9);

}  // namespace seqbell
