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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "output.hpp"
#include "seqbell/chsh.hpp"
#include "seqbell/experiment.hpp"
#include "seqbell/lhv.hpp"
#include "seqbell/model_io.hpp"
#include "seqbell/polytope.hpp"
#include "seqbell/quantum.hpp"

namespace seqbell::cli {
namespace {

using std::numbers::pi;

struct Options {
  std::vector<double> a;
  std::vector<double> b;
  double a_prime = 0.0;
  double b_prime = pi / 2;
  double alpha = pi / 4;
  double alpha_min = 0.0;
  double alpha_max = pi;
  double alpha_step = 1e-3;
  double eta_d = 1.0;
  double f1 = 1.0;
  double f21 = 1.0;
  double fd2 = 1.0;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string model = "reproducer";
  std::string model_file;
  std::string save_model;
  std::size_t grid = 1000;
  std::vector<double> correlators;
  std::string out;
  std::string format = "csv";
  bool degrees = false;

  // Which optional inputs were given explicitly.
  bool has_a = false, has_b = false, has_a_prime = false, has_b_prime = false;
  bool has_format = false;

  bool json() const { return format == "json"; }
  double eta_f() const { return eta_d * f1 * f21 * fd2; }
  Angle angle(double v) const {
    return degrees ? Angle::from_degrees(v) : Angle(v);
  }
  double length(double v) const { return degrees ? v * pi / 180.0 : v; }
  std::vector<Angle> angles(const std::vector<double>& given, bool has,
                            const std::vector<double>& fallback) const {
    std::vector<Angle> r;
    if (has) {
      for (double v : given) r.push_back(angle(v));
    } else {
      for (double v : fallback) r.push_back(Angle(v));
    }
    return r;
  }
};

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json real_or_null(std::optional<double> v) {
  return v ? Json(round9(*v)) : Json(nullptr);
}

// ---------------------------------------------------------------- table

int cmd_table(const Options& o, std::ostream& out) {
  std::vector<double> grid;
  for (int k = 0; k < 8; ++k) grid.push_back(k * pi / 4);
  const auto as = o.angles(o.a, o.has_a, grid);
  const auto bs = o.angles(o.b, o.has_b, grid);

  CsvTable csv({"a", "b", "A", "B", "p_joint", "p_marg_t1", "p_marg_t2",
                "p_cond"});
  Json records = Json::array();
  for (Angle a : as) {
    for (Angle b : bs) {
      const JointDistribution joint = quantum_joint(a, b);
      for (Outcome A : kOutcomes) {
        for (Outcome B : kOutcomes) {
          std::optional<double> cond;
          if (marginal_t1(a, A) > 0.0) cond = conditional_t2(a, b, A, B);
          const double pj = joint(A, B);
          const double m1 = marginal_t1(a, A);
          const double m2 = marginal_t2(a, b, B);
          csv.row().add(a.radians()).add(b.radians()).add(value(A)).add(value(B));
          csv.add(pj).add(m1).add(m2);
          if (cond) {
            csv.add(*cond);
          } else {
            csv.add_empty();
          }
          records.push_back(Json{{"a", round9(a.radians())},
                                 {"b", round9(b.radians())},
                                 {"A", value(A)},
                                 {"B", value(B)},
                                 {"p_joint", round9(pj)},
                                 {"p_marg_t1", round9(m1)},
                                 {"p_marg_t2", round9(m2)},
                                 {"p_cond", real_or_null(cond)}});
        }
      }
    }
  }
  if (o.json()) {
    write_json(out, records);
  } else {
    csv.write(out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- mc

int cmd_mc(const Options& o, std::ostream& out) {
  const DetectionConfig cfg{o.eta_d, o.f1, o.f21, o.fd2};
  cfg.validate();
  const auto as = o.angles(o.a, o.has_a, {pi / 4});
  const auto bs = o.angles(o.b, o.has_b, {0.0});

  CsvTable csv({"a", "b", "eta_d", "overall_f", "n_trials", "seed", "D++",
                "D+-", "D-+", "D--", "n_undetected", "correlator_exp",
                "std_error", "correlator_conditioned",
                "std_error_conditioned"});
  Json records = Json::array();
  for (Angle a : as) {
    for (Angle b : bs) {
      const RunCounts rc = run(a, b, cfg, o.trials, o.seed, {o.threads});
      const EstimatedMoments m = estimate(rc);
      csv.row().add(a.radians()).add(b.radians()).add(cfg.eta_d);
      csv.add(cfg.overall_f()).add(rc.n_total).add(rc.seed);
      Json counts = Json::object();
      for (DetectorId d : kDetectors) {
        csv.add(rc.count(d));
        counts[d.label()] = rc.count(d);
      }
      csv.add(rc.n_undetected).add(m.correlator_exp).add(m.std_error);
      if (m.correlator_conditioned) {
        csv.add(*m.correlator_conditioned).add(*m.std_error_conditioned);
      } else {
        csv.add_empty().add_empty();
      }
      records.push_back(Json{
          {"a", round9(a.radians())},
          {"b", round9(b.radians())},
          {"eta_d", round9(cfg.eta_d)},
          {"overall_f", round9(cfg.overall_f())},
          {"n_trials", rc.n_total},
          {"seed", rc.seed},
          {"counts", counts},
          {"n_undetected", rc.n_undetected},
          {"correlator_exp", round9(m.correlator_exp)},
          {"std_error", round9(m.std_error)},
          {"correlator_conditioned", real_or_null(m.correlator_conditioned)},
          {"std_error_conditioned", real_or_null(m.std_error_conditioned)}});
    }
  }
  if (o.json()) {
    write_json(out, records);
  } else {
    csv.write(out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- chsh-scan

int cmd_chsh_scan(const Options& o, std::ostream& out) {
  const AlphaScan scan =
      scan_alpha(o.length(o.alpha_min), o.length(o.alpha_max),
                 o.length(o.alpha_step), o.eta_f());
  const bool violated = make_chsh_report(scan.s_exp_max).violated;

  if (o.json()) {
    Json rows = Json::array();
    for (const auto& r : scan.rows) {
      rows.push_back(Json{{"alpha", round9(r.alpha.radians())},
                          {"s_ideal", round9(r.s_ideal)},
                          {"s_exp", round9(r.s_exp)},
                          {"violated", r.violated}});
    }
    write_json(out, Json{{"rows", rows},
                         {"summary",
                          {{"alpha_star", round9(scan.alpha_star.radians())},
                           {"s_max", round9(scan.s_max)},
                           {"s_exp_max", round9(scan.s_exp_max)},
                           {"eta_f", round9(scan.eta_f)},
                           {"eta_f_critical", round9(kCriticalEfficiency)},
                           {"violated", violated}}}});
    return kExitOk;
  }

  CsvTable rows({"alpha", "s_ideal", "s_exp", "violated"});
  for (const auto& r : scan.rows) {
    rows.row().add(r.alpha.radians()).add(r.s_ideal).add(r.s_exp).add(r.violated);
  }
  CsvTable summary({"alpha_star", "s_max", "s_exp_max", "eta_f",
                    "eta_f_critical", "violated"});
  summary.row().add(scan.alpha_star.radians()).add(scan.s_max);
  summary.add(scan.s_exp_max).add(scan.eta_f).add(kCriticalEfficiency);
  summary.add(violated);
  rows.write(out);
  out << '\n';
  summary.write(out);
  return kExitOk;
}

// ---------------------------------------------------------------- lhv-verify

struct VerifyRow {
  std::string name;
  bool mandatory = true;
  bool applicable = true;
  bool passed = true;
  double value = 0.0;
  std::string description;
};

int cmd_lhv_verify(const Options& o, std::ostream& out) {
  std::optional<TabulatedModel> tab;
  if (!o.model_file.empty()) tab = load_model_file(o.model_file);

  auto pick = [&](bool has, double given, const std::vector<double>* table,
                  std::size_t k, double fallback) -> std::optional<Angle> {
    if (has) return o.angle(given);
    if (table != nullptr) {
      if (k < table->size()) return Angle((*table)[k]);
      return std::nullopt;
    }
    return Angle(fallback);
  };
  const auto* t1 = tab ? &tab->t1_angles : nullptr;
  const auto* t2 = tab ? &tab->t2_angles : nullptr;
  const Angle a = *pick(o.has_a, o.has_a ? o.a.front() : 0.0, t1, 0, pi / 3);
  const Angle b = *pick(o.has_b, o.has_b ? o.b.front() : 0.0, t2, 0, pi / 6);
  const auto a_prime = pick(o.has_a_prime, o.a_prime, t1, 1, 0.0);
  const auto b_prime = pick(o.has_b_prime, o.b_prime, t2, 1, pi / 2);

  const LhvModel model = [&] {
    if (tab) return tab->to_model();
    if (o.model == "position") return position_style_model(o.grid);
    if (o.model == "uniform") return uniform_model();
    return fixed_setting_reproducer(a, b);
  }();

  const IdentityReport rep = verify_identities(model, a, b);
  std::vector<VerifyRow> rows;
  for (const auto& c : rep.checks) {
    rows.push_back({c.name, c.mandatory, c.applicable, c.passed, c.residual,
                    c.description});
  }

  // CHSH bound at (a, a', b, b'): per lambda and after averaging. Both are
  // theorems for factorized models only.
  const bool factorized = model.kind() == ModelKind::kFactorized;
  VerifyRow per_lambda{"chsh-per-lambda", factorized, false, true, 0.0,
                       "per-lambda CHSH value is at most 2"};
  VerifyRow averaged{"chsh-averaged", factorized, false, true, 0.0,
                     "lambda-averaged CHSH value is at most 2"};
  if (a_prime && b_prime) {
    const ChshSettings s{a, *a_prime, b, *b_prime};
    if (factorized) {
      per_lambda.applicable = true;
      for (const auto& lam : model.support()) {
        per_lambda.value = std::max(per_lambda.value, per_lambda_chsh(model, s, lam));
      }
      per_lambda.passed = !make_chsh_report(per_lambda.value).violated;
    }
    auto corr = [&](Angle x, Angle y) {
      return average_over_lambda(model, x, y).moments.correlator;
    };
    averaged.applicable = true;
    averaged.value = chsh_value(corr, s).s_value;
    averaged.passed = !make_chsh_report(averaged.value).violated;
  }
  rows.push_back(per_lambda);
  rows.push_back(averaged);

  bool ok = true;
  for (const auto& r : rows) {
    if (r.mandatory && r.applicable && !r.passed) ok = false;
  }

  if (!o.save_model.empty()) {
    std::vector<Angle> s1{a}, s2{b};
    if (a_prime && !(*a_prime == a)) s1.push_back(*a_prime);
    if (b_prime && !(*b_prime == b)) s2.push_back(*b_prime);
    std::ofstream f(o.save_model);
    if (f) write_model(f, tabulate(model, s1, s2));
    if (!f) {
      throw Error(ErrorKind::kIo, "cannot write model file " + o.save_model);
    }
  }

  if (o.json()) {
    Json checks = Json::array();
    for (const auto& r : rows) {
      checks.push_back(Json{{"check", r.name},
                            {"mandatory", r.mandatory},
                            {"applicable", r.applicable},
                            {"passed", r.passed},
                            {"value", round9(r.value)},
                            {"description", r.description}});
    }
    write_json(out, Json{{"model", model.name()},
                         {"kind", to_string(model.kind())},
                         {"a", round9(a.radians())},
                         {"b", round9(b.radians())},
                         {"outcome_symmetric", rep.outcome_symmetric},
                         {"checks", checks},
                         {"passed", ok}});
  } else {
    CsvTable csv({"check", "mandatory", "applicable", "passed", "value",
                  "description"});
    for (const auto& r : rows) {
      csv.row().add(std::string_view(r.name)).add(r.mandatory);
      csv.add(r.applicable).add(r.passed);
      // Residuals of a few 1e-16 would all print as zero at nine decimals.
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3e", r.value);
      csv.add(std::string_view(r.applicable ? buf : ""));
      csv.add(std::string_view(r.description));
    }
    csv.write(out);
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- polytope

int cmd_polytope(const Options& o, std::ostream& out) {
  CorrelatorTargets t{};
  if (!o.correlators.empty()) {
    std::copy(o.correlators.begin(), o.correlators.end(), t.begin());
  } else {
    const double ef = o.eta_f();
    if (!(ef >= 0.0 && ef <= 1.0)) {
      throw Error(ErrorKind::kInvalidArgument, "eta_D * F must lie in [0, 1]");
    }
    const ChshSettings s = ladder_settings(o.angle(o.alpha));
    t = {ef * ideal_correlator(s.a, s.b), ef * ideal_correlator(s.a, s.b_prime),
         ef * ideal_correlator(s.a_prime, s.b_prime),
         ef * ideal_correlator(s.a_prime, s.b)};
  }
  const PolytopeCertificate c = polytope_check(t);
  static const char* kNames[4] = {"E(a,b)", "E(a,b')", "E(a',b')", "E(a',b)"};

  const bool json = o.has_format ? o.json() : true;
  if (json) {
    Json targets = Json::object();
    for (std::size_t k = 0; k < 4; ++k) targets[kNames[k]] = round9(t[k]);
    Json weights = nullptr;
    if (c.weights) {
      weights = Json::array();
      for (std::size_t s = 0; s < kStrategyCount; ++s) {
        weights.push_back(Json{{"strategy", strategy(s).label()},
                               {"weight", round9((*c.weights)[s])}});
      }
    }
    Json facet = nullptr;
    if (c.violated_facet) {
      facet = Json{{"label", c.violated_facet->label()},
                   {"value", round9(c.violated_facet->value)}};
    }
    write_json(out, Json{{"targets", targets},
                         {"feasible", c.feasible},
                         {"max_facet", round9(c.max_facet)},
                         {"gap", round9(c.gap)},
                         {"violated_facet", facet},
                         {"weights", weights},
                         {"lp_feasible", c.lp_feasible},
                         {"lp_infeasibility", round9(c.lp_infeasibility)},
                         {"reproduction_error", round9(c.reproduction_error)},
                         {"methods_agree", c.methods_agree}});
  } else {
    std::vector<std::string> header(std::begin(kNames), std::end(kNames));
    for (const char* h : {"feasible", "max_facet", "gap", "violated_facet",
                          "lp_feasible", "reproduction_error", "methods_agree"}) {
      header.emplace_back(h);
    }
    for (std::size_t s = 0; s < kStrategyCount; ++s) {
      header.push_back("w" + strategy(s).label());
    }
    CsvTable csv(std::move(header));
    csv.row();
    for (double v : t) csv.add(v);
    csv.add(c.feasible).add(c.max_facet).add(c.gap);
    csv.add(std::string_view(c.violated_facet ? c.violated_facet->label() : ""));
    csv.add(c.lp_feasible).add(c.reproduction_error).add(c.methods_agree);
    for (std::size_t s = 0; s < kStrategyCount; ++s) {
      if (c.weights) {
        csv.add((*c.weights)[s]);
      } else {
        csv.add_empty();
      }
    }
    csv.write(out);
  }
  return c.feasible ? kExitOk : kExitInfeasible;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Sequential spin-measurement statistics and CHSH analysis",
               "seqbell"};
  app.set_config("--config", "", "Read options from a flat key = value file");
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  Options o;
  auto* opt_a = app.add_option("--a", o.a, "First-time analyzer angle(s)")
                    ->delimiter(',');
  auto* opt_b = app.add_option("--b", o.b, "Second-time analyzer angle(s)")
                    ->delimiter(',');
  auto* opt_ap = app.add_option("--a-prime", o.a_prime, "Alternative a");
  auto* opt_bp = app.add_option("--b-prime", o.b_prime, "Alternative b");
  app.add_option("--alpha", o.alpha, "Ladder angle for polytope");
  app.add_option("--alpha-min", o.alpha_min, "Scan start");
  app.add_option("--alpha-max", o.alpha_max, "Scan end");
  app.add_option("--alpha-step", o.alpha_step, "Scan step")
      ->check(CLI::PositiveNumber);
  const auto unit = CLI::Range(0.0, 1.0);
  app.add_option("--eta-d", o.eta_d, "Detector efficiency")->check(unit);
  app.add_option("--f1", o.f1, "Collimator probability f1")->check(unit);
  app.add_option("--f21", o.f21, "Collimator probability f21")->check(unit);
  app.add_option("--fd2", o.fd2, "Collimator probability f_D2")->check(unit);
  app.add_option("--trials", o.trials, "Monte Carlo trials per setting pair")
      ->check(CLI::Range(std::uint64_t{1},
                         std::numeric_limits<std::uint64_t>::max()));
  app.add_option("--seed", o.seed, "Monte Carlo seed");
  app.add_option("--threads", o.threads,
                 "Worker threads, 0 = all cores; output does not depend on it");
  app.add_option("--model", o.model, "Built-in hidden-variable model")
      ->check(CLI::IsMember({"reproducer", "position", "uniform"}));
  auto* opt_file =
      app.add_option("--model-file", o.model_file, "Tabulated model file");
  app.add_option("--save-model", o.save_model,
                 "Write the model, tabulated at the settings, to this file");
  app.add_option("--grid", o.grid, "Grid size of the position model")
      ->check(CLI::Range(std::size_t{2},
                         std::numeric_limits<std::size_t>::max()));
  app.add_option("--correlators", o.correlators,
                 "E(a,b),E(a,b'),E(a',b'),E(a',b) for polytope")
      ->delimiter(',')
      ->expected(4);
  app.add_option("--out", o.out, "Output path (default stdout)");
  auto* opt_format = app.add_option("--format", o.format, "csv or json")
                         ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--degrees", o.degrees, "Angles are given in degrees");
  opt_file->excludes(app.get_option("--model"));

  auto* table = app.add_subcommand("table", "Tabulate quantum probabilities");
  auto* mc = app.add_subcommand("mc", "Monte Carlo detection experiment");
  auto* scan = app.add_subcommand("chsh-scan", "Scan the CHSH ladder angle");
  auto* verify = app.add_subcommand("lhv-verify",
                                    "Check a hidden-variable model");
  auto* poly = app.add_subcommand("polytope", "Local-polytope membership");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  o.has_a = opt_a->count() > 0 || !o.a.empty();
  o.has_b = opt_b->count() > 0 || !o.b.empty();
  o.has_a_prime = opt_ap->count() > 0;
  o.has_b_prime = opt_bp->count() > 0;
  o.has_format = opt_format->count() > 0;

  std::ostringstream buf;
  int code = kExitOk;
  try {
    if (table->parsed()) {
      code = cmd_table(o, buf);
    } else if (mc->parsed()) {
      code = cmd_mc(o, buf);
    } else if (scan->parsed()) {
      code = cmd_chsh_scan(o, buf);
    } else if (verify->parsed()) {
      code = cmd_lhv_verify(o, buf);
    } else if (poly->parsed()) {
      code = cmd_polytope(o, buf);
    }
  } catch (const ParseError& e) {
    err << "error: " << o.model_file << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::kIo ? kExitIo : kExitUsage;
  }

  if (o.out.empty()) {
    out << buf.str();
    out.flush();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    f << buf.str();
    f.close();
    if (!f) {
      err << "error: cannot write " << o.out << '\n';
      return kExitIo;
    }
  }
  return code;
}

}  // namespace seqbell::cli
