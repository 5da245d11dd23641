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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sppcert/commands.hpp"

namespace {

constexpr const char* kExitCodes =
    "Exit codes: 0 ok, 1 usage or malformed input, 2 insufficient data,\n"
    "            3 IO error, 4 verification found violations.";

}  // namespace

int main(int argc, char** argv) {
  using namespace sppcert;

  CLI::App app{"Certified bounds on the single-photon projection of light sources"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  double tail_cap = kDefaultTailCap;
  app.add_option("--tail-cap", tail_cap, "Truncation cap for coherent/thermal tails")
      ->check(CLI::Range(1e-300, 1e-6));

  auto* analyze = app.add_subcommand("analyze", "Bound report for a distribution or observables JSON");
  std::string in_path;
  analyze->add_option("--in", in_path, "Input JSON file (default: stdin)");

  auto* figure = app.add_subcommand("figure", "Emit CSV data for fig1..fig5");
  std::string which;
  std::string fig_out;
  std::optional<double> fig_step;
  figure->add_option("which", which, "fig1|fig2|fig3|fig4|fig5")->required();
  figure->add_option("--out", fig_out, "Output CSV path (default: stdout)");
  figure->add_option("--grid-step", fig_step, "Override the default grid step");

  auto* sweep = app.add_subcommand("sweep", "Sweep one family parameter and emit CSV");
  cli::SweepOptions sweep_opt;
  std::string sweep_out;
  std::string columns;
  sweep->add_option("--family", sweep_opt.family, "Family kind or FamilySpec JSON")->required();
  sweep->add_option("--param", sweep_opt.parameter, "Parameter to sweep (default per family)");
  sweep->add_option("--from", sweep_opt.from, "First grid value");
  sweep->add_option("--to", sweep_opt.to, "Last grid value");
  sweep->add_option("--grid-step", sweep_opt.step, "Grid step");
  sweep->add_option("--columns", columns, "Comma-separated column names");
  sweep->add_option("--out", sweep_out, "Output CSV path (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Run an oracle verification suite");
  cli::VerifyOptions verify_opt;
  std::size_t max_n = 0;
  std::string diagnostics;
  verify->add_option("suite", verify_opt.suite,
                     "soundness|exactness|set-inclusion|saturation|g2-floor|comparison")
      ->required();
  verify->add_option("trials,--trials", verify_opt.trials, "Number of random trials");
  verify->add_option("seed,--seed", verify_opt.seed, "Generator seed");
  verify->add_option("--max-n", max_n, "Largest photon number of sampled states");
  verify->add_option("--diagnostics", diagnostics, "Counterexample dump path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }

  if (analyze->parsed()) {
    if (in_path.empty()) return cli::run_analyze(std::cin, std::cout, std::cerr);
    std::ifstream in(in_path);
    if (!in) {
      std::cerr << "error: cannot open " << in_path << '\n';
      return cli::kIoError;
    }
    return cli::run_analyze(in, std::cout, std::cerr);
  }

  if (figure->parsed()) {
    std::optional<std::filesystem::path> out;
    if (!fig_out.empty()) out = fig_out;
    return cli::with_output(out, std::cout, std::cerr, [&](std::ostream& os) {
      return cli::run_figure(which, fig_step, tail_cap, os, std::cerr);
    });
  }

  if (sweep->parsed()) {
    sweep_opt.tail_cap = tail_cap;
    if (!columns.empty()) {
      sweep_opt.columns.clear();
      std::string item;
      for (char c : columns + ",") {
        if (c == ',') {
          if (!item.empty()) sweep_opt.columns.push_back(item);
          item.clear();
        } else if (c != ' ') {
          item += c;
        }
      }
    }
    std::optional<std::filesystem::path> out;
    if (!sweep_out.empty()) out = sweep_out;
    return cli::with_output(out, std::cout, std::cerr, [&](std::ostream& os) {
      return cli::run_sweep(sweep_opt, os, std::cerr);
    });
  }

  if (verify->parsed()) {
    verify_opt.tail_cap = tail_cap;
    if (max_n > 0) verify_opt.max_n = max_n;
    if (!diagnostics.empty()) verify_opt.diagnostics = diagnostics;
    return cli::run_verify(verify_opt, std::cout, std::cerr);
  }
  return cli::kUsage;
}
