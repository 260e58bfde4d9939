/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

/// @file config.hpp
/// @brief Run configuration: defaults, key=value files with [section]
/// headers, and the effective-configuration dump embedded in reports.

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "btcert/assembly.hpp"
#include "btcert/density_second.hpp"
#include "btcert/errors.hpp"
#include "btcert/numerics.hpp"
#include "btcert/report.hpp"

namespace btcert::config {

enum class Command { kG2, kTable1, kTable2, kSiegel, kPsiCheck, kVerifyPrimes, kAll };
enum class Format { kCsv, kJson };

inline const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names = {
      {"g2", Command::kG2},           {"table1", Command::kTable1},
      {"table2", Command::kTable2},   {"siegel", Command::kSiegel},
      {"psi-check", Command::kPsiCheck}, {"verify-primes", Command::kVerifyPrimes},
      {"all", Command::kAll}};
  return names;
}

inline std::string command_name(Command c) {
  for (const auto& [n, v] : command_names()) {
    if (v == c) return n;
  }
  return "?";
}

struct RunConfig {
  Command command = Command::kAll;
  Format format = Format::kCsv;
  std::string out;  // empty: stdout

  double tol = numerics::kDefaultTol;
  double K = 0.66;
  double phi = 1.0 / 3.0;
  double delta = 0.0;
  density::SieveWeights weights = density::SieveWeights::defaults();
  density::C2Form c2_form = density::C2Form::kTimesG2;

  double gamma_min = 1.00;
  double gamma_max = 1.60;

  double table2_M = assembly::kCertificateM;
  bool compare_reference = false;

  assembly::SiegelCaseParams siegel;

  double psi_M = 7.0;
  double psi_eta = 0.1;

  std::vector<std::int64_t> prime_moduli = {3, 5, 7};
  std::uint64_t prime_x = 0;  // 0: q^8 per modulus

  void validate() const;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw UsageError("config: " + key + " expects a number, got '" + v + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError("config: " + key + " expects true/false, got '" + v + "'");
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19) {
    throw UsageError("config: " + key + " expects a non-negative integer, got '" + v + "'");
  }
  return static_cast<std::uint64_t>(d);
}

inline std::vector<std::int64_t> parse_int_list(const std::string& key, const std::string& v) {
  std::vector<std::int64_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<std::int64_t>(parse_uint(key, trim(item))));
  if (out.empty()) throw UsageError("config: " + key + " expects a comma-separated list");
  return out;
}

inline std::string fmt(double v) { return report::format_double(v); }

struct Key {
  std::string name;  // section.key
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

inline Key dkey(std::string name, double RunConfig::*m) {
  return {name, [m, name](RunConfig& c, const std::string& v) { c.*m = parse_double(name, v); },
          [m](const RunConfig& c) { return fmt(c.*m); }};
}

template <class Get>
inline Key nested(std::string name, Get g) {
  return {name, [g, name](RunConfig& c, const std::string& v) { g(c) = parse_double(name, v); },
          [g](const RunConfig& c) { return fmt(g(const_cast<RunConfig&>(c))); }};
}

}  // namespace detail

/// Every recognised key in dump order.
inline const std::vector<detail::Key>& keys() {
  using detail::dkey;
  using detail::nested;
  static const std::vector<detail::Key> k = {
      dkey("numerics.tol", &RunConfig::tol),
      dkey("mollifier.K", &RunConfig::K),
      {"mollifier.phi",
       [](RunConfig& c, const std::string& v) {
         c.phi = detail::parse_double("mollifier.phi", v);
         // "1/3" cannot be typed exactly
         if (std::abs(c.phi - 1.0 / 3.0) < 1e-4) c.phi = 1.0 / 3.0;
       },
       [](const RunConfig& c) { return detail::fmt(c.phi); }},
      dkey("mollifier.delta", &RunConfig::delta),
      nested("weights.w", [](RunConfig& c) -> double& { return c.weights.w; }),
      nested("weights.u0", [](RunConfig& c) -> double& { return c.weights.u0; }),
      nested("weights.u1", [](RunConfig& c) -> double& { return c.weights.u1; }),
      nested("weights.v", [](RunConfig& c) -> double& { return c.weights.v; }),
      nested("weights.x0", [](RunConfig& c) -> double& { return c.weights.x0; }),
      nested("weights.x1", [](RunConfig& c) -> double& { return c.weights.x1; }),
      nested("weights.lambda_min", [](RunConfig& c) -> double& { return c.weights.lambda_min; }),
      {"g2.form",
       [](RunConfig& c, const std::string& v) {
         if (v == "times_g2") c.c2_form = density::C2Form::kTimesG2;
         else if (v == "times_one_plus_g2") c.c2_form = density::C2Form::kTimesOnePlusG2;
         else throw UsageError("config: g2.form must be times_g2 or times_one_plus_g2");
       },
       [](const RunConfig& c) {
         return std::string(c.c2_form == density::C2Form::kTimesG2 ? "times_g2" : "times_one_plus_g2");
       }},
      dkey("table1.gamma_min", &RunConfig::gamma_min),
      dkey("table1.gamma_max", &RunConfig::gamma_max),
      dkey("table2.M", &RunConfig::table2_M),
      {"table2.compare_reference",
       [](RunConfig& c, const std::string& v) { c.compare_reference = detail::parse_bool("table2.compare_reference", v); },
       [](const RunConfig& c) { return std::string(c.compare_reference ? "true" : "false"); }},
      nested("siegel.M", [](RunConfig& c) -> double& { return c.siegel.M; }),
      nested("siegel.B", [](RunConfig& c) -> double& { return c.siegel.B; }),
      nested("siegel.delta", [](RunConfig& c) -> double& { return c.siegel.delta; }),
      nested("siegel.K", [](RunConfig& c) -> double& { return c.siegel.K; }),
      nested("siegel.lambda2_floor", [](RunConfig& c) -> double& { return c.siegel.lambda2_floor; }),
      nested("siegel.lambda1p_floor", [](RunConfig& c) -> double& { return c.siegel.lambda1p_floor; }),
      dkey("psi.M", &RunConfig::psi_M),
      dkey("psi.eta", &RunConfig::psi_eta),
      {"primes.q",
       [](RunConfig& c, const std::string& v) { c.prime_moduli = detail::parse_int_list("primes.q", v); },
       [](const RunConfig& c) {
         std::string s;
         for (std::size_t i = 0; i < c.prime_moduli.size(); ++i) s += (i ? ";" : "") + std::to_string(c.prime_moduli[i]);
         return s;
       }},
      {"primes.x",
       [](RunConfig& c, const std::string& v) { c.prime_x = detail::parse_uint("primes.x", v); },
       [](const RunConfig& c) { return c.prime_x ? std::to_string(c.prime_x) : std::string("q^8"); }},
  };
  return k;
}

inline void set_key(RunConfig& cfg, const std::string& name, const std::string& value) {
  for (const auto& k : keys()) {
    if (k.name == name) {
      k.set(cfg, value);
      return;
    }
  }
  throw UsageError("config: unknown key '" + name + "'");
}

/// Apply a key=value file. Keys below a `[section]` header are qualified
/// as section.key; '#' and ';' start comments.
inline void apply_stream(RunConfig& cfg, std::istream& in, const std::string& origin = "config") {
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw UsageError(origin + ":" + std::to_string(lineno) + ": bad section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    set_key(cfg, section.empty() ? key : section + "." + key, value);
  }
}

inline void apply_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open '" + path + "'");
  apply_stream(cfg, in, path);
}

inline std::vector<std::pair<std::string, std::string>> effective(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("command", command_name(cfg.command));
  for (const auto& k : keys()) out.emplace_back(k.name, k.get(cfg));
  out.emplace_back("li.convention", "integral from 2");
  out.emplace_back("nstar.delta", "0 (floor(quotient + 1e-9))");
  out.emplace_back("maximize.inflation", "+tol on every supremum");
  return out;
}

inline void RunConfig::validate() const {
  auto bad = [](const std::string& m) { throw UsageError("config: " + m); };
  if (!(tol > 0.0 && tol < 1e-2)) bad("numerics.tol must lie in (0, 0.01)");
  if (!(K > 0.0)) bad("mollifier.K must be > 0");
  if (std::abs(phi - 0.25) > 1e-12 && std::abs(phi - 1.0 / 3.0) > 1e-12) bad("mollifier.phi must be 0.25 or 1/3");
  if (!(delta >= 0.0)) bad("mollifier.delta must be >= 0");
  try {
    weights.validate();
    siegel.validate(weights);
  } catch (const DomainError& e) {
    bad(e.what());
  }
  if (!(gamma_min > 0.0 && gamma_min <= gamma_max)) bad("table1 gamma range is empty");
  if (!(table2_M >= K + 2.0 * weights.x1)) bad("table2.M must be >= K + 2 x1");
  if (!(psi_M >= 1.0)) bad("psi.M must be >= 1");
  if (!(psi_eta > 0.0 && psi_eta < 1.0)) bad("psi.eta must lie in (0, 1)");
  for (auto q : prime_moduli) {
    if (q < 3) bad("primes.q entries must be >= 3");
  }
}

}  // namespace btcert::config
