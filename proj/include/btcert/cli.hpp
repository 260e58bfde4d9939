/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

/// @file cli.hpp
/// @brief Pipeline stages behind the `btcert` command and its argument
/// parsing. Kept in a header so tests can drive `run` directly.
///
/// Exit status: 0 every verdict passes, 1 some verdict fails, 2 usage
/// error, 3 density table coverage gap.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "btcert/assembly.hpp"
#include "btcert/config.hpp"
#include "btcert/density_first.hpp"
#include "btcert/density_second.hpp"
#include "btcert/density_third.hpp"
#include "btcert/errors.hpp"
#include "btcert/primes.hpp"
#include "btcert/report.hpp"

namespace btcert::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kCoverage = 3 };

using report::Cell;
using report::Report;

inline density::CharacterClass character_class(const config::RunConfig& cfg) {
  return density::CharacterClass{cfg.phi};
}

inline density::TableConfig table_config(const config::RunConfig& cfg) {
  density::TableConfig t;
  t.tol = cfg.tol;
  t.gammas.clear();
  const int lo = static_cast<int>(std::lround(cfg.gamma_min * 100.0));
  const int hi = static_cast<int>(std::lround(cfg.gamma_max * 100.0));
  for (int g = lo; g <= hi; ++g) t.gammas.push_back(g);
  return t;
}

inline Cell bound_cell(const density::DensityCell& c) {
  switch (c.state) {
    case density::CellState::kFinite: return c.bound;
    case density::CellState::kInfinite: return report::Infinite{};
    default: return std::string("-");
  }
}

// ---------------------------------------------------------------------------
// Stages

inline Report g2_report(const config::RunConfig& cfg) {
  Report r;
  r.kind = "g2";
  r.columns = {"piece", "value"};
  const auto b = density::G2_breakdown(cfg.weights, cfg.tol);
  r.rows.push_back({std::string("c=0"), b.diagonal});
  for (int c = 1; c <= 6; ++c) r.rows.push_back({"c=" + std::to_string(c), b.near[c - 1]});
  r.rows.push_back({std::string("closed_form_6_to_100"), b.middle});
  r.rows.push_back({std::string("arctan_tail"), b.tail});
  r.rows.push_back({std::string("G2"), b.total});
  const double c2 = density::C2(cfg.weights, b.total, cfg.c2_form);
  r.summary = {{"G2", b.total},
               {"C2_prefactor", density::C2_prefactor(cfg.weights)},
               {"C2", c2},
               {"C2_times_g2", density::C2(cfg.weights, b.total, density::C2Form::kTimesG2)},
               {"C2_times_one_plus_g2", density::C2(cfg.weights, b.total, density::C2Form::kTimesOnePlusG2)},
               {"claimed_bound", 0.650}};
  r.pass = b.total <= 0.650;
  return r;
}

inline Report table1_report(const config::RunConfig&, const density::DensityTable& t) {
  Report r;
  r.kind = "table1";
  r.columns = {"threshold", "lambda", "bound", "gamma"};
  for (std::size_t col = 0; col < t.thresholds().size(); ++col) {
    for (int h = t.lambda_lo(); h <= t.lambda_hi(); ++h) {
      const auto& c = t.at(col, h);
      Cell gamma = c.state == density::CellState::kFinite ? Cell{c.gamma} : Cell{std::string("")};
      r.rows.push_back({density::threshold_label(t.thresholds()[col]), h / 100.0, bound_cell(c), gamma});
    }
  }
  const auto v = density::table_violations(t);
  r.summary = {{"invariant_violations", static_cast<std::int64_t>(v.size())}};
  for (std::size_t i = 0; i < v.size(); ++i) r.summary.push_back({"violation_" + std::to_string(i), v[i]});
  r.pass = v.empty();
  return r;
}

inline Report table2_report(const config::RunConfig& cfg, const density::DensityTable& t, double c2) {
  Report r;
  r.kind = "table2";
  r.columns = {"lambda11", "lambda12", "lambda21", "lambda11p", "Lambda", "M",
               "column", "s", "lambda_star", "leading", "ladder", "last",
               "a1", "n1n2", "n4", "rhs", "reference_rhs", "pass"};
  assembly::Context ctx{cfg.K, character_class(cfg), cfg.delta, cfg.weights, c2};
  const auto rows = assembly::reference_table2_rows(cfg.table2_M);
  const auto certs = assembly::build_table2(rows, t, ctx, cfg.compare_reference);
  for (const auto& c : certs) {
    const auto& in = c.inputs;
    const auto& d = c.detail;
    r.rows.push_back({in.lambda11, std::isinf(in.lambda12) ? Cell{report::Infinite{}} : Cell{in.lambda12},
                      in.lambda21, in.lambda11p, in.Lambda, in.M,
                      density::threshold_label(t.thresholds()[d.column]),
                      static_cast<std::int64_t>(d.s), d.lambda_star, d.leading, d.ladder, d.last, d.a1,
                      static_cast<std::int64_t>(d.n1n2), static_cast<std::int64_t>(d.n4), c.computed_rhs,
                      c.reference_rhs ? Cell{*c.reference_rhs} : Cell{std::string("")}, c.pass});
  }
  double worst = 0;
  for (const auto& c : certs) worst = std::max(worst, c.computed_rhs);
  // Verdict with the other character constant, reported when it differs.
  assembly::Context alt = ctx;
  alt.cls = std::abs(cfg.phi - 0.25) < 1e-12 ? density::CharacterClass::general() : density::CharacterClass::real();
  const bool alt_pass = assembly::all_pass(assembly::build_table2(rows, t, alt, cfg.compare_reference));
  const bool pass = assembly::all_pass(certs);
  r.summary = {{"rows", static_cast<std::int64_t>(certs.size())},
               {"max_rhs", worst},
               {"threshold", assembly::kRhsThreshold},
               {"C2", c2},
               {"reference_M", assembly::kReferenceM}};
  if (alt_pass != pass) r.summary.push_back({"pass_with_phi_" + report::format_double(alt.cls.phi), alt_pass});
  r.pass = pass;
  return r;
}

inline Report siegel_report(const config::RunConfig& cfg, double c2) {
  Report r;
  r.kind = "siegel";
  r.columns = {"lambda1", "S", "below_one"};
  const auto sc = assembly::siegel_coefficient(cfg.siegel, character_class(cfg), cfg.weights, c2);
  bool ok = true;
  for (int k = 1; k <= 35; ++k) {
    const double l = k / 100.0;
    const double s = assembly::siegel_curve(l, cfg.siegel.M, sc);
    ok = ok && s < 1.0;
    r.rows.push_back({l, s, s < 1.0});
  }
  r.summary = {{"coefficient", sc.coeff},
               {"exponent", sc.exponent},
               {"ratio_lambda2", sc.ratio_lambda2},
               {"ratio_lambda1p", sc.ratio_lambda1p},
               {"S_at_0.35", assembly::siegel_curve(0.35, cfg.siegel.M, sc)},
               {"C2", c2}};
  r.pass = ok;
  return r;
}

inline Report psi_report(const config::RunConfig& cfg) {
  Report r;
  r.kind = "psi-check";
  r.columns = {"M", "eta", "holds"};
  const bool ok = assembly::siegel_psi_check(cfg.psi_M, cfg.psi_eta);
  r.rows.push_back({cfg.psi_M, cfg.psi_eta, ok});
  r.pass = ok;
  return r;
}

inline Report primes_report(const config::RunConfig& cfg) {
  Report r;
  r.kind = "verify-primes";
  r.columns = {"q", "x", "a", "pi", "theta", "psi", "psi_deviation", "bound_2li", "theorem_2li",
               "bound_mv", "montgomery_vaughan", "bound_piecewise", "piecewise_c", "theta_le_psi", "scale"};
  bool ok = true;
  for (std::int64_t q : cfg.prime_moduli) {
    std::uint64_t x = cfg.prime_x;
    if (x == 0) x = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(q), 8.0)));
    const auto rep = primes::bt_report(q, x);
    ok = ok && rep.all_verdicts();
    for (const auto& row : rep.rows) {
      r.rows.push_back({q, static_cast<std::int64_t>(x), row.a, row.pi, row.theta, row.psi, row.deviation,
                        rep.bound_theorem, row.verdicts.at("theorem_2li"), rep.bound_mv,
                        row.verdicts.at("montgomery_vaughan"), rep.bound_piecewise,
                        row.verdicts.at("piecewise_c"), row.verdicts.at("theta_le_psi"), rep.scale});
    }
    const std::string tag = "q" + std::to_string(q) + "_";
    r.summary.push_back({tag + "pi_x", rep.pi_x});
    r.summary.push_back({tag + "li_x", rep.li_x});
    r.summary.push_back({tag + "theta_exponent", rep.theta_exponent});
    r.summary.push_back({tag + "partition_identity", rep.partition_identity});
    if (rep.below_q8) r.summary.push_back({tag + "warning", std::string("x below q^8")});
  }
  r.pass = ok;
  return r;
}

// ---------------------------------------------------------------------------
// Driver

inline void emit(const Report& r, const config::RunConfig& cfg, std::ostream& os) {
  if (cfg.format == config::Format::kJson) {
    report::write_json(r, os);
  } else {
    report::write_csv(r, os);
  }
}

inline std::string extension(const config::RunConfig& cfg) {
  return cfg.format == config::Format::kJson ? ".json" : ".csv";
}

/// Run the configured stage(s). Reports go to `out` unless cfg.out names a
/// file (single stage) or directory (`all`).
inline int run(const config::RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    std::vector<Report> reports;
    const auto cmd = cfg.command;
    const bool all = cmd == config::Command::kAll;
    auto needs = [&](config::Command c) { return all || cmd == c; };

    std::optional<double> c2;
    auto get_c2 = [&] {
      if (!c2) c2 = density::C2(cfg.weights, density::G2_total(cfg.weights, cfg.tol), cfg.c2_form);
      return *c2;
    };
    std::optional<density::DensityTable> table;
    auto get_table = [&]() -> const density::DensityTable& {
      if (!table) table = density::build_table1(table_config(cfg));
      return *table;
    };

    if (needs(config::Command::kG2)) reports.push_back(g2_report(cfg));
    if (needs(config::Command::kTable1)) reports.push_back(table1_report(cfg, get_table()));
    if (needs(config::Command::kTable2)) reports.push_back(table2_report(cfg, get_table(), get_c2()));
    if (needs(config::Command::kSiegel)) reports.push_back(siegel_report(cfg, get_c2()));
    if (needs(config::Command::kPsiCheck)) reports.push_back(psi_report(cfg));
    if (needs(config::Command::kVerifyPrimes)) reports.push_back(primes_report(cfg));

    const auto eff = config::effective(cfg);
    bool pass = true;
    for (auto& r : reports) {
      r.config = eff;
      pass = pass && r.pass;
    }

    if (cfg.out.empty()) {
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out << '\n';
        emit(reports[i], cfg, out);
      }
    } else if (all) {
      std::filesystem::create_directories(cfg.out);
      for (const auto& r : reports) {
        std::ofstream f(std::filesystem::path(cfg.out) / (r.kind + extension(cfg)), std::ios::binary);
        if (!f) throw UsageError("cannot write into '" + cfg.out + "'");
        emit(r, cfg, f);
      }
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw UsageError("cannot write '" + cfg.out + "'");
      emit(reports.front(), cfg, f);
    }
    for (const auto& r : reports) err << r.kind << ": " << (r.pass ? "pass" : "FAIL") << '\n';
    return pass ? kPass : kFail;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const CoverageError& e) {
    err << "coverage error: " << e.what() << '\n';
    return kCoverage;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsage;
  }
}

/// Parse argv into a RunConfig. Returns an exit code when parsing ends the
/// run (help, or a usage error).
inline std::optional<int> parse(int argc, const char* const* argv, config::RunConfig& cfg,
                                std::ostream& out, std::ostream& err) {
  CLI::App app{"Recompute and check the zero-density constants and prime-count inequalities."};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string format = "csv", cfg_path, out_path;
  std::vector<std::string> sets;
  std::optional<double> K, phi, delta, M, eta, tol, B, gamma_min, gamma_max;
  std::optional<std::string> q_list, c2_form;
  std::optional<std::uint64_t> x;
  bool compare = false;

  app.add_option("--out", out_path, "Output file (directory for `all`)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", cfg_path, "key=value configuration file");
  app.add_option("--set", sets, "Override any key: section.key=value");
  app.add_option("--K", K, "Mollifier support length");
  app.add_option("--phi", phi, "Character constant (0.25 or 1/3)");
  app.add_option("--delta", delta, "Slack added to C1");
  app.add_option("--M", M, "log x / log q for table2, siegel or psi-check");
  app.add_option("--eta", eta, "psi-check range");
  app.add_option("--B", B, "Siegel branch B");
  app.add_option("--tol", tol, "Maximizer and quadrature tolerance");
  app.add_option("--gamma-min", gamma_min, "Smallest gamma in the table search");
  app.add_option("--gamma-max", gamma_max, "Largest gamma in the table search");
  app.add_option("--q", q_list, "Comma-separated moduli for verify-primes");
  app.add_option("--x", x, "Sieve limit for verify-primes (default q^8)");
  app.add_option("--c2-form", c2_form, "times_g2 or times_one_plus_g2");
  app.add_flag("--compare-reference", compare, "Compare table2 rows with reference values at any M");

  for (const auto& [name, cmd] : config::command_names()) app.add_subcommand(name, "Run the " + name + " stage");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    for (const auto& [name, cmd] : config::command_names()) {
      if (app.got_subcommand(name)) cfg.command = cmd;
    }
    if (!cfg_path.empty()) config::apply_file(cfg, cfg_path);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects section.key=value");
      config::set_key(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    auto put = [&](const char* key, const std::optional<double>& v) {
      if (v) config::set_key(cfg, key, report::format_double(*v));
    };
    put("mollifier.K", K);
    if (phi) config::set_key(cfg, "mollifier.phi", std::to_string(*phi));
    put("mollifier.delta", delta);
    put("numerics.tol", tol);
    put("psi.eta", eta);
    put("siegel.B", B);
    put("table1.gamma_min", gamma_min);
    put("table1.gamma_max", gamma_max);
    if (M) {
      switch (cfg.command) {
        case config::Command::kTable2: cfg.table2_M = *M; break;
        case config::Command::kSiegel: cfg.siegel.M = *M; break;
        case config::Command::kPsiCheck: cfg.psi_M = *M; break;
        default: throw UsageError("--M applies to table2, siegel or psi-check only");
      }
    }
    if (q_list) config::set_key(cfg, "primes.q", *q_list);
    if (x) cfg.prime_x = *x;
    if (c2_form) config::set_key(cfg, "g2.form", *c2_form);
    if (compare) cfg.compare_reference = true;
    if (!out_path.empty()) cfg.out = out_path;
    cfg.format = format == "json" ? config::Format::kJson : config::Format::kCsv;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  return std::nullopt;
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  config::RunConfig cfg;
  if (auto code = parse(argc, argv, cfg, out, err)) return *code;
  return run(cfg, out, err);
}

}  // namespace btcert::cli
