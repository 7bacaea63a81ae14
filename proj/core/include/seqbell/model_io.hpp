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

// Finite hidden-variable models stored as response tables.
//
// Text format, one record per line; '#' starts a comment:
//
//   seqbell-model 1
//   name <identifier>                 (optional)
//   kind factorized | general
//   t1 <angle> <angle> ...            (t1 settings, radians)
//   t2 <angle> <angle> ...            (t2 settings, radians)
//   lambda <weight> | <p1 entries> | <p2 entries>
//
// Each lambda line lists P(A = +1 | a_i, lambda) for every t1 setting a_i,
// then the t2 table: P(B = +1 | b_j, lambda) for every t2 setting b_j in a
// factorized model, or P(B = +1 | a_i, b_j, A, lambda) for i, then j, then
// A = +1 before A = -1 in a general model. Weights must be non-negative and
// sum to 1.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "seqbell/lhv.hpp"

namespace seqbell {

/// Tolerance for matching an evaluation angle to a tabulated setting.
inline constexpr double kSettingMatchTolerance = 1e-12;

struct TabulatedModel {
  struct Point {
    double weight = 0.0;
    std::vector<double> p1_plus;
    std::vector<double> p2_plus;

    friend bool operator==(const Point&, const Point&) = default;
  };

  std::string name = "tabulated";
  ModelKind kind = ModelKind::kFactorized;
  std::vector<double> t1_angles;
  std::vector<double> t2_angles;
  std::vector<Point> points;

  std::size_t p2_entries() const noexcept;

  /// Throws kInvalidModel on inconsistent table sizes, out-of-range
  /// responses or weights that do not sum to 1.
  void validate() const;

  /// Model that answers only at the tabulated settings; other angles throw
  /// kUnsupportedModel.
  LhvModel to_model() const;

  friend bool operator==(const TabulatedModel&,
                         const TabulatedModel&) = default;
};

/// Samples an existing model at the given settings.
TabulatedModel tabulate(const LhvModel& m, const std::vector<Angle>& t1,
                        const std::vector<Angle>& t2);

/// Throws ParseError (with the offending line) on malformed input and
/// Error(kInvalidModel) when the tables parse but violate the model
/// invariants.
TabulatedModel parse_model(std::istream& in);
TabulatedModel load_model_file(const std::filesystem::path& path);

/// Writes with 17 significant digits so that parse_model round-trips.
void write_model(std::ostream& out, const TabulatedModel& model);

}  // namespace seqbell
