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


// Deterministic CSV / JSON emission.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace seqbell::cli {

using Json = nlohmann::ordered_json;

/// Fixed nine-decimal rendering; negative zero prints as zero.
std::string format_real(double x);

/// x rounded to nine decimals, for JSON records.
double round9(double x);

/// RFC-4180 field quoting: quoted iff the field holds a comma, quote, CR or
/// LF; embedded quotes are doubled.
std::string csv_field(std::string_view s);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row();
  CsvTable& add(std::string_view s);
  CsvTable& add(double x);
  CsvTable& add(std::int64_t x);
  CsvTable& add(std::uint64_t x);
  CsvTable& add(int x) { return add(static_cast<std::int64_t>(x)); }
  CsvTable& add(bool b) { return add(std::string_view(b ? "true" : "false")); }
  CsvTable& add_empty() { return add(std::string_view()); }

  std::size_t columns() const noexcept { return header_.size(); }
  std::size_t rows() const noexcept { return rows_.size(); }

  /// Throws std::logic_error when a row has the wrong column count.
  void write(std::ostream& out) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace seqbell::cli
