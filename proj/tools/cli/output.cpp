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


#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace seqbell::cli {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  std::string s(buf);
  if (s == "-0.000000000") s.erase(0, 1);
  return s;
}

double round9(double x) {
  const double r = std::round(x * 1e9) / 1e9;
  return r == 0.0 ? 0.0 : r;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  return *this;
}

CsvTable& CsvTable::add(std::string_view s) {
  if (rows_.empty()) row();
  rows_.back().push_back(csv_field(s));
  return *this;
}

CsvTable& CsvTable::add(double x) { return add(std::string_view(format_real(x))); }

CsvTable& CsvTable::add(std::int64_t x) {
  return add(std::string_view(std::to_string(x)));
}

CsvTable& CsvTable::add(std::uint64_t x) {
  return add(std::string_view(std::to_string(x)));
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << fields[i];
    }
    out << '\n';
  };
  std::vector<std::string> head;
  for (const auto& h : header_) head.push_back(csv_field(h));
  line(head);
  for (const auto& r : rows_) {
    if (r.size() != header_.size()) {
      throw std::logic_error("CSV row has the wrong number of columns");
    }
    line(r);
  }
}

}  // namespace seqbell::cli
