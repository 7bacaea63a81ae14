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

#include "cli/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli/output.hpp"
#include "seqbell/model_io.hpp"

namespace seqbell::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"seqbell"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("seqbell_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()
                                                      ->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

const fs::path kGolden = SEQBELL_GOLDEN_DIR;

TEST(Output, FormatReal) {
  EXPECT_EQ(format_real(1.0), "1.000000000");
  EXPECT_EQ(format_real(-1e-12), "0.000000000");
  EXPECT_EQ(format_real(0.0625), "0.062500000");
  EXPECT_EQ(format_real(-0.5), "-0.500000000");
  EXPECT_EQ(round9(0.78539816339744828), 0.785398163);
}

TEST(Output, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  CsvTable t({"x", "y"});
  t.row().add(1);
  std::ostringstream s;
  EXPECT_THROW(t.write(s), std::logic_error);
}

TEST(Table, MatchesGolden) {
  const Result r = invoke({"table", "--a", "1.5707963267948966,1.0471975511965976",
                           "--b", "1.5707963267948966,0.5235987755982988"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, slurp(kGolden / "table.csv"));
}

TEST(Table, Examples) {
  const auto rows = parse_csv(
      invoke({"table", "--a", "1.5707963267948966", "--b", "1.5707963267948966"})
          .out);
  ASSERT_EQ(rows.size(), 5U);
  EXPECT_EQ(rows[1][4], "1.000000000");
  // Conditioning on an impossible first outcome leaves the field empty.
  EXPECT_EQ(rows[3][7], "");

  const auto third = parse_csv(invoke({"table", "--a", "60", "--b", "30",
                                       "--degrees"}).out);
  EXPECT_EQ(third[2][2], "1");
  EXPECT_EQ(third[2][3], "-1");
  EXPECT_EQ(third[2][4], "0.062500000");
}

TEST(Table, EachBlockSumsToOne) {
  const auto rows = parse_csv(invoke({"table"}).out);
  ASSERT_EQ(rows.size(), 1U + 8 * 8 * 4);
  for (std::size_t i = 1; i < rows.size(); i += 4) {
    double sum = 0.0;
    for (std::size_t k = 0; k < 4; ++k) sum += std::stod(rows[i + k][4]);
    ASSERT_NEAR(sum, 1.0, 4e-9) << i;
  }
}

TEST(Mc, SeedEchoAndByteDeterminism) {
  const Result one = invoke({"mc", "--trials", "70000", "--seed", "12345",
                             "--threads", "1"});
  const Result four = invoke({"mc", "--trials", "70000", "--seed", "12345",
                              "--threads", "4"});
  ASSERT_EQ(one.code, kExitOk) << one.err;
  EXPECT_EQ(one.out, four.out);
  EXPECT_EQ(parse_csv(one.out)[1][5], "12345");
  const Result json1 = invoke({"mc", "--trials", "5000", "--format", "json"});
  const Result json2 = invoke({"mc", "--trials", "5000", "--format", "json"});
  EXPECT_EQ(json1.out, json2.out);
  EXPECT_EQ(Json::parse(json1.out)[0]["seed"], 1);
}

TEST(Mc, ZeroCollimationDetectsNothing) {
  const auto rows = parse_csv(invoke({"mc", "--f21", "0", "--trials", "2000"}).out);
  for (int k = 6; k <= 9; ++k) EXPECT_EQ(rows[1][k], "0");
  EXPECT_EQ(rows[1][10], "2000");
  EXPECT_EQ(rows[1][13], "");
}

TEST(Mc, CorrelatorAtQuarterTurn) {
  const auto rows = parse_csv(invoke({"mc", "--a", "0.7853981633974483", "--b",
                                      "0", "--trials", "1000000", "--seed", "3"})
                                  .out);
  EXPECT_NEAR(std::stod(rows[1][11]), 0.707106781, 0.003);
}

TEST(ChshScan, MatchesGolden) {
  const Result r = invoke({"chsh-scan", "--alpha-max", "1", "--alpha-step",
                           "0.25", "--eta-d", "0.9", "--f1", "0.8"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, slurp(kGolden / "chsh_scan.csv"));
}

TEST(ChshScan, DefaultSummary) {
  const Result r = invoke({"chsh-scan"});
  const auto rows = parse_csv(r.out);
  EXPECT_EQ(rows[1][1], "2.000000000");
  const auto& summary = rows.back();
  EXPECT_EQ(summary[0], "0.785398163");
  EXPECT_EQ(summary[1], "2.828427125");
  EXPECT_EQ(summary[4], "0.707106781");

  const Json j = Json::parse(invoke({"chsh-scan", "--format", "json"}).out);
  EXPECT_NEAR(j["summary"]["alpha_star"].get<double>(), 0.785398163, 1e-9);
  EXPECT_NEAR(j["summary"]["s_max"].get<double>(), 2.828427125, 1e-9);
}

TEST(ChshScan, EmptyRangeIsUsageError) {
  EXPECT_EQ(invoke({"chsh-scan", "--alpha-min", "2", "--alpha-max", "1"}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"chsh-scan", "--alpha-step", "0"}).code, kExitUsage);
}

TEST(LhvVerify, BuiltInModels) {
  const Result repro = invoke({"lhv-verify", "--model", "reproducer", "--a",
                               "1.0471975511965976", "--b", "0.5235987755982988",
                               "--format", "json"});
  ASSERT_EQ(repro.code, kExitOk) << repro.err;
  const Json j = Json::parse(repro.out);
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c["passed"].get<bool>()) << c["check"];
  }

  const Result pos = invoke({"lhv-verify", "--model", "position", "--grid", "200"});
  EXPECT_EQ(pos.code, kExitOk) << pos.err;
  bool seen = false;
  for (const auto& row : parse_csv(pos.out)) {
    if (row[0] == "chsh-per-lambda") {
      seen = true;
      EXPECT_EQ(row[3], "true");
    }
  }
  EXPECT_TRUE(seen);
}

TEST(LhvVerify, SavedModelRoundTrips) {
  TempDir dir;
  const std::string path = (dir / "model.txt").string();
  ASSERT_EQ(invoke({"lhv-verify", "--model", "position", "--grid", "32",
                    "--save-model", path})
                .code,
            kExitOk);
  const TabulatedModel first = load_model_file(path);
  std::ostringstream again;
  write_model(again, first);
  EXPECT_EQ(again.str(), slurp(path));
  std::istringstream in(again.str());
  EXPECT_EQ(parse_model(in), first);

  const Result from_file = invoke({"lhv-verify", "--model-file", path});
  EXPECT_EQ(from_file.code, kExitOk) << from_file.err;
}

TEST(LhvVerify, CorruptedModelFiles) {
  TempDir dir;
  const fs::path weights = dir / "weights.txt";
  std::ofstream(weights) << "seqbell-model 1\nkind factorized\nt1 0\nt2 0\n"
                            "lambda 0.5 | 1 | 1\nlambda 0.4 | 0 | 0\n";
  const Result w = invoke({"lhv-verify", "--model-file", weights.string()});
  EXPECT_EQ(w.code, kExitUsage);
  EXPECT_NE(w.err.find("sum"), std::string::npos) << w.err;

  const fs::path syntax = dir / "syntax.txt";
  std::ofstream(syntax) << "seqbell-model 1\nkind factorized\nt1 0\nt2 zz\n";
  const Result s = invoke({"lhv-verify", "--model-file", syntax.string()});
  EXPECT_EQ(s.code, kExitUsage);
  EXPECT_NE(s.err.find("line 4"), std::string::npos) << s.err;

  EXPECT_EQ(invoke({"lhv-verify", "--model-file",
                    (dir / "missing.txt").string()})
                .code,
            kExitIo);
}

TEST(LhvVerify, GeneralModelChshIsInformational) {
  // Deterministic general model: A = +1 always, B copies A at b and flips it
  // at b', so E = (1, -1, -1, 1) and S = 2. The CHSH bound is only a theorem
  // for factorized models, so here it is reported but not mandatory.
  TempDir dir;
  const fs::path model = dir / "m.txt";
  std::ofstream(model) << "seqbell-model 1\nkind general\nt1 0 1\nt2 0 1\n"
                          "lambda 1 | 1 1 | 1 0 0 1 1 0 0 1\n";
  const Result r = invoke({"lhv-verify", "--model-file", model.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("chsh-per-lambda,false,false,"), std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("chsh-averaged,false,true,true,2.000e+00"),
            std::string::npos)
      << r.out;
}

TEST(Polytope, Certificates) {
  const Result q = invoke({"polytope"});
  EXPECT_EQ(q.code, kExitInfeasible);
  const Json jq = Json::parse(q.out);
  EXPECT_FALSE(jq["feasible"].get<bool>());
  EXPECT_EQ(jq["gap"].get<double>(), 0.828427125);

  const Result zero = invoke({"polytope", "--correlators", "0,0,0,0"});
  EXPECT_EQ(zero.code, kExitOk);
  const Json jz = Json::parse(zero.out);
  double sum = 0.0;
  for (const auto& w : jz["weights"]) {
    sum += w["weight"].get<double>();
  }
  EXPECT_NEAR(sum, 1.0, 1e-8);

  EXPECT_EQ(invoke({"polytope", "--eta-d", "0.7"}).code, kExitOk);
  EXPECT_EQ(invoke({"polytope", "--correlators", "1.5,0,0,0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"polytope", "--correlators", "0,0,0"}).code, kExitUsage);
}

TEST(ExitCodes, UsageAndIo) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"table", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({"mc", "--eta-d", "1.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"mc", "--trials", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"table", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
  EXPECT_EQ(invoke({"table", "--out", "/nonexistent-dir/x.csv"}).code, kExitIo);
  EXPECT_EQ(invoke({"mc", "--config", "/nonexistent-dir/c.ini"}).code, kExitIo);
}

TEST(Config, FlagsOverrideFile) {
  TempDir dir;
  const fs::path cfg = dir / "run.ini";
  std::ofstream(cfg) << "# comment\ntrials = 3000\nseed = 42\nformat = json\n";
  const Json from_file =
      Json::parse(invoke({"mc", "--config", cfg.string()}).out);
  EXPECT_EQ(from_file[0]["seed"], 42);
  EXPECT_EQ(from_file[0]["n_trials"], 3000);
  const Json overridden =
      Json::parse(invoke({"mc", "--config", cfg.string(), "--seed", "9"}).out);
  EXPECT_EQ(overridden[0]["seed"], 9);
}

TEST(Output, FileEqualsStdout) {
  TempDir dir;
  const fs::path p = dir / "scan.csv";
  const Result to_file = invoke({"chsh-scan", "--alpha-step", "0.1", "--out",
                                 p.string()});
  ASSERT_EQ(to_file.code, kExitOk);
  EXPECT_TRUE(to_file.out.empty());
  EXPECT_EQ(slurp(p), invoke({"chsh-scan", "--alpha-step", "0.1"}).out);
}

TEST(Output, EveryCommandIsByteDeterministic) {
  for (const auto& fmt : {"csv", "json"}) {
    for (std::initializer_list<std::string> args :
         {std::initializer_list<std::string>{"table", "--format", fmt},
          {"mc", "--trials", "20000", "--format", fmt},
          {"chsh-scan", "--alpha-step", "0.01", "--format", fmt},
          {"lhv-verify", "--model", "position", "--format", fmt},
          {"polytope", "--eta-d", "0.7", "--format", fmt}}) {
      EXPECT_EQ(invoke(args).out, invoke(args).out) << *args.begin() << fmt;
    }
  }
}

}  // namespace
}  // namespace seqbell::cli
