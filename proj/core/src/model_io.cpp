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

#include "seqbell/model_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "compensated_sum.hpp"

namespace seqbell {

namespace {

constexpr const char* kMagic = "seqbell-model";
constexpr int kFormatVersion = 1;

std::size_t find_setting(const std::vector<double>& table, Angle x,
                         const char* which) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (std::abs(table[i] - x.radians()) <= kSettingMatchTolerance) return i;
  }
  throw Error(ErrorKind::kUnsupportedModel,
              std::string(which) + " setting " + std::to_string(x.radians()) +
                  " is not tabulated");
}

double signed_response(double p_plus, Outcome o) {
  return o == Outcome::kPlus ? p_plus : 1.0 - p_plus;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::string spaced;
  spaced.reserve(line.size() + 8);
  for (char c : line) {
    if (c == '#') break;
    if (c == '|') {
      spaced += " | ";
    } else {
      spaced += c;
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  return tokens;
}

double parse_number(const std::string& tok, int line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError(line, "expected a number, got '" + tok + "'");
  }
  return v;
}

std::vector<double> parse_numbers(const std::vector<std::string>& tokens,
                                  std::size_t begin, std::size_t end,
                                  int line) {
  std::vector<double> out;
  for (std::size_t i = begin; i < end; ++i) {
    out.push_back(parse_number(tokens[i], line));
  }
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::size_t TabulatedModel::p2_entries() const noexcept {
  return kind == ModelKind::kFactorized
             ? t2_angles.size()
             : 2 * t1_angles.size() * t2_angles.size();
}

void TabulatedModel::validate() const {
  if (t1_angles.empty() || t2_angles.empty()) {
    throw Error(ErrorKind::kInvalidModel, "model needs t1 and t2 settings");
  }
  if (points.empty()) {
    throw Error(ErrorKind::kInvalidModel, "model support is empty");
  }
  detail::CompensatedSum total;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point& p = points[k];
    const std::string where = "lambda " + std::to_string(k);
    if (p.p1_plus.size() != t1_angles.size() ||
        p.p2_plus.size() != p2_entries()) {
      throw Error(ErrorKind::kInvalidModel, where + ": wrong table size");
    }
    if (!(p.weight >= 0.0)) {
      throw Error(ErrorKind::kInvalidModel, where + ": negative weight");
    }
    for (const auto* table : {&p.p1_plus, &p.p2_plus}) {
      for (double v : *table) {
        if (!(v >= -kProbabilityTolerance && v <= 1.0 + kProbabilityTolerance)) {
          throw Error(ErrorKind::kInvalidModel,
                      where + ": response outside [0, 1]");
        }
      }
    }
    total.add(p.weight);
  }
  if (std::abs(total.value() - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorKind::kInvalidModel,
                "lambda weights sum to " + format_number(total.value()) +
                    ", expected 1");
  }
}

LhvModel TabulatedModel::to_model() const {
  validate();
  auto self = std::make_shared<const TabulatedModel>(*this);
  std::vector<double> weights;
  weights.reserve(points.size());
  for (const Point& p : points) weights.push_back(p.weight);

  auto first = [self](Outcome A, Angle a, const LambdaPoint& lam) {
    const std::size_t i = find_setting(self->t1_angles, a, "t1");
    return signed_response(self->points.at(lam.id).p1_plus[i], A);
  };
  if (kind == ModelKind::kFactorized) {
    auto second = [self](Outcome B, Angle b, const LambdaPoint& lam) {
      const std::size_t j = find_setting(self->t2_angles, b, "t2");
      return signed_response(self->points.at(lam.id).p2_plus[j], B);
    };
    return LhvModel::factorized(name, std::move(weights), first, second);
  }
  auto second = [self](Outcome B, Angle a, Angle b, Outcome A,
                       const LambdaPoint& lam) {
    const std::size_t i = find_setting(self->t1_angles, a, "t1");
    const std::size_t j = find_setting(self->t2_angles, b, "t2");
    const std::size_t idx =
        (i * self->t2_angles.size() + j) * 2 + (A == Outcome::kPlus ? 0 : 1);
    return signed_response(self->points.at(lam.id).p2_plus[idx], B);
  };
  return LhvModel::general(name, std::move(weights), first, second);
}

TabulatedModel tabulate(const LhvModel& m, const std::vector<Angle>& t1,
                        const std::vector<Angle>& t2) {
  TabulatedModel out;
  out.name = m.name();
  out.kind = m.kind();
  for (Angle a : t1) out.t1_angles.push_back(a.radians());
  for (Angle b : t2) out.t2_angles.push_back(b.radians());
  for (const LambdaPoint& lam : m.support()) {
    TabulatedModel::Point p;
    p.weight = lam.weight;
    for (Angle a : t1) p.p1_plus.push_back(m.p1(Outcome::kPlus, a, lam));
    if (m.kind() == ModelKind::kFactorized) {
      for (Angle b : t2) {
        p.p2_plus.push_back(m.p2_factorized(Outcome::kPlus, b, lam));
      }
    } else {
      for (Angle a : t1) {
        for (Angle b : t2) {
          for (Outcome A : kOutcomes) {
            p.p2_plus.push_back(m.p2(Outcome::kPlus, a, b, A, lam));
          }
        }
      }
    }
    out.points.push_back(std::move(p));
  }
  return out;
}

TabulatedModel parse_model(std::istream& in) {
  TabulatedModel model;
  bool saw_magic = false;
  bool saw_kind = false;
  bool saw_t1 = false;
  bool saw_t2 = false;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& key = tokens[0];
    if (!saw_magic) {
      if (key != kMagic || tokens.size() != 2) {
        throw ParseError(line_no, std::string("expected '") + kMagic +
                                      " " + std::to_string(kFormatVersion) +
                                      "' header");
      }
      if (parse_number(tokens[1], line_no) != kFormatVersion) {
        throw ParseError(line_no, "unsupported format version " + tokens[1]);
      }
      saw_magic = true;
    } else if (key == "name") {
      if (tokens.size() != 2) throw ParseError(line_no, "name takes one word");
      model.name = tokens[1];
    } else if (key == "kind") {
      if (tokens.size() != 2) throw ParseError(line_no, "kind takes one word");
      if (tokens[1] == "factorized") {
        model.kind = ModelKind::kFactorized;
      } else if (tokens[1] == "general") {
        model.kind = ModelKind::kGeneral;
      } else {
        throw ParseError(line_no, "unknown model kind '" + tokens[1] + "'");
      }
      saw_kind = true;
    } else if (key == "t1" || key == "t2") {
      if (tokens.size() < 2) throw ParseError(line_no, key + " needs angles");
      auto angles = parse_numbers(tokens, 1, tokens.size(), line_no);
      (key == "t1" ? model.t1_angles : model.t2_angles) = std::move(angles);
      (key == "t1" ? saw_t1 : saw_t2) = true;
    } else if (key == "lambda") {
      if (!saw_kind || !saw_t1 || !saw_t2) {
        throw ParseError(line_no, "kind, t1 and t2 must precede lambda lines");
      }
      // lambda <w> | <p1...> | <p2...>
      std::vector<std::size_t> bars;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i] == "|") bars.push_back(i);
      }
      if (bars.size() != 2 || bars[0] != 2) {
        throw ParseError(line_no,
                         "expected 'lambda <weight> | <t1 table> | <t2 table>'");
      }
      TabulatedModel::Point p;
      p.weight = parse_number(tokens[1], line_no);
      p.p1_plus = parse_numbers(tokens, bars[0] + 1, bars[1], line_no);
      p.p2_plus = parse_numbers(tokens, bars[1] + 1, tokens.size(), line_no);
      if (p.p1_plus.size() != model.t1_angles.size()) {
        throw ParseError(line_no, "expected " +
                                      std::to_string(model.t1_angles.size()) +
                                      " t1 entries");
      }
      if (p.p2_plus.size() != model.p2_entries()) {
        throw ParseError(line_no, "expected " +
                                      std::to_string(model.p2_entries()) +
                                      " t2 entries");
      }
      for (double v : p.p1_plus) {
        if (v < 0.0 || v > 1.0) throw ParseError(line_no, "response outside [0, 1]");
      }
      for (double v : p.p2_plus) {
        if (v < 0.0 || v > 1.0) throw ParseError(line_no, "response outside [0, 1]");
      }
      if (p.weight < 0.0) throw ParseError(line_no, "negative weight");
      model.points.push_back(std::move(p));
    } else {
      throw ParseError(line_no, "unknown record '" + key + "'");
    }
  }
  if (!saw_magic) throw ParseError(line_no, "empty model file");
  if (!saw_kind || !saw_t1 || !saw_t2) {
    throw ParseError(line_no, "model file is missing kind, t1 or t2");
  }
  model.validate();
  return model;
}

TabulatedModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIo, "cannot open model file " + path.string());
  }
  return parse_model(in);
}

void write_model(std::ostream& out, const TabulatedModel& model) {
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "name " << model.name << '\n';
  out << "kind " << to_string(model.kind) << '\n';
  out << "t1";
  for (double a : model.t1_angles) out << ' ' << format_number(a);
  out << "\nt2";
  for (double b : model.t2_angles) out << ' ' << format_number(b);
  out << '\n';
  for (const auto& p : model.points) {
    out << "lambda " << format_number(p.weight) << " |";
    for (double v : p.p1_plus) out << ' ' << format_number(v);
    out << " |";
    for (double v : p.p2_plus) out << ' ' << format_number(v);
    out << '\n';
  }
}

}  // namespace seqbell
