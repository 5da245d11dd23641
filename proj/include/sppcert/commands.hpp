/**
 * Copyright 2026 The sppcert Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Subcommand bodies for the sppcert command-line tool. They take explicit
// streams so tests can drive them without spawning processes.
//
// Exit codes: 0 ok, 1 usage or malformed input, 2 insufficient data,
// 3 IO error, 4 verification found violations.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sppcert/bounds.hpp"
#include "sppcert/errors.hpp"
#include "sppcert/families.hpp"
#include "sppcert/figures.hpp"
#include "sppcert/oracle.hpp"
#include "sppcert/serialization.hpp"

namespace sppcert::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInsufficientData = 2,
  kIoError = 3,
  kViolations = 4,
};

/// Report for a distribution document ({"probs": ...}) or an observables
/// document ({"g2": ..., "mean_n": ..., "p0": ...}).
inline BoundReport analyze_document(const json& doc) {
  if (doc.is_object() && doc.contains("probs"))
    return analyze(observable_input(oracle::exact_quantities(distribution_from_json(doc))));
  return analyze(observables_from_json(doc));
}

inline int run_analyze(std::istream& in, std::ostream& out, std::ostream& err) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << '\n';
    return kUsage;
  }
  try {
    out << to_json(analyze_document(doc)).dump(2) << '\n';
    return kOk;
  } catch (const InsufficientData& e) {
    err << "error: insufficient data: " << e.what() << '\n';
    return kInsufficientData;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kUsage;
  }
}

/// Runs body against the file at path (or `fallback` when path is empty);
/// an unopenable or failed file is an IO error.
inline int with_output(const std::optional<std::filesystem::path>& path, std::ostream& fallback,
                       std::ostream& err, const std::function<int(std::ostream&)>& body) {
  if (!path) return body(fallback);
  std::ostringstream buffer;
  const int code = body(buffer);
  if (code != kOk) return code;
  std::ofstream file(*path, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << path->string() << " for writing\n";
    return kIoError;
  }
  file << buffer.str();
  file.flush();
  if (!file) {
    err << "error: failed writing " << path->string() << '\n';
    return kIoError;
  }
  return kOk;
}

inline int run_figure(const std::string& which, std::optional<double> grid_step, double tail_cap,
                      std::ostream& out, std::ostream& err) {
  const auto fig = parse_figure(which);
  if (!fig) {
    err << "error: unknown figure '" << which << "' (expected fig1..fig5)\n";
    return kUsage;
  }
  try {
    write_csv(out, figure_table(*fig, grid_step, tail_cap));
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

struct SweepOptions {
  /// Bare kind name ("coherent") or a FamilySpec JSON document.
  std::string family;
  /// Defaults to the family's natural parameter.
  std::string parameter;
  double from = 0.0;
  double to = 1.0;
  double step = 0.01;
  std::vector<std::string> columns{"x", "mean_n", "g2", "p1", "eff_g2_vacuum", "eff_g2_photon"};
  double tail_cap = kDefaultTailCap;
};

inline FamilySpec parse_family_argument(const std::string& text) {
  if (!text.empty() && text.front() == '{') return family_from_json(json::parse(text));
  return family_from_json(json{{"kind", text}});
}

inline int run_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const auto family = parse_family_argument(opt.family);
    const std::string param =
        opt.parameter.empty() ? std::string(default_sweep_parameter(family)) : opt.parameter;
    const auto grid = linear_grid(opt.from, opt.to, opt.step);
    write_csv(out, sweep_table(family, param, grid, opt.columns, opt.tail_cap));
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: malformed family: " << e.what() << '\n';
    return kUsage;
  }
}

struct VerifyOptions {
  std::string suite;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 42;
  std::optional<std::size_t> max_n;
  std::filesystem::path diagnostics = "sppcert-diagnostics.json";
  double tail_cap = kDefaultTailCap;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"soundness", "exactness", "set-inclusion",
                                                 "saturation", "g2-floor", "comparison"};
  return names;
}

/// Dispatches to the named oracle suite; nullopt for an unknown name.
inline std::optional<oracle::VerificationReport> run_suite(const VerifyOptions& opt) {
  if (opt.suite == "soundness")
    return oracle::run_soundness_suite(opt.trials, opt.max_n.value_or(oracle::kDefaultSoundnessMaxN), opt.seed);
  if (opt.suite == "exactness") return oracle::run_exactness_suite(opt.trials, opt.seed);
  if (opt.suite == "set-inclusion")
    return oracle::run_set_inclusion_suite(opt.trials, opt.max_n.value_or(oracle::kDefaultInclusionMaxN), opt.seed);
  if (opt.suite == "g2-floor")
    return oracle::run_g2_floor_suite(opt.trials, opt.max_n.value_or(oracle::kDefaultInclusionMaxN), opt.seed);
  if (opt.suite == "saturation") {
    const auto grid = oracle::open_grid(8.0, 0.01);
    return oracle::run_saturation_suite(grid);
  }
  if (opt.suite == "comparison") {
    const auto fams = oracle::default_comparison_families();
    return oracle::run_comparison_suite(fams, opt.tail_cap);
  }
  return std::nullopt;
}

inline int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<oracle::VerificationReport> report;
  try {
    report = run_suite(opt);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (!report) {
    err << "error: unknown suite '" << opt.suite << "'\n";
    return kUsage;
  }
  out << to_json(*report).dump(2) << '\n';
  if (report->passed()) return kOk;
  try {
    write_diagnostics(*report, opt.diagnostics);
    err << "violations found; counterexamples written to " << opt.diagnostics.string() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kViolations;
}

}  // namespace sppcert::cli
