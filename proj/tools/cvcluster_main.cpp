// Copyright 2026 The cvcluster Authors
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

// Command-line front end: entanglement curves, threshold tables, witness
// sweeps, matrix dumps and the verification runner.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvcluster/io.hpp"
#include "cvcluster/linear_optical.hpp"
#include "cvcluster/report.hpp"
#include "cvcluster/teleport.hpp"

using namespace cvcluster;

namespace {

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
  f << text;
}

Rails parse_rails(const std::string& text) {
  if (text == "inf" || text == "infinity") return Rails::infinite();
  std::size_t used = 0;
  const int n = std::stoi(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad rail count '" + text + "'");
  return Rails::finite(n);
}

EvalMethod method_for(const std::string& text) { return parse_method(text); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-variable cluster-state teleportation toolkit"};
  app.require_subcommand(1);

  std::string family = "canonical";
  std::string format = "csv";
  std::string out;
  std::string method = "closed";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out, "Output file (default stdout)");
  };

  // curve
  SweepConfig curve_cfg;
  int curve_rails = 1;
  auto* curve = app.add_subcommand("curve", "Log-negativity against squeezing");
  curve->add_option("--family", family)->check(CLI::IsMember({"canonical", "lo"}));
  curve->add_option("--rails", curve_rails, "Rails per arm");
  curve->add_option("--r-min", curve_cfg.r_min);
  curve->add_option("--r-max", curve_cfg.r_max);
  curve->add_option("--steps", curve_cfg.steps);
  curve->add_option("--method", method)->check(CLI::IsMember({"closed", "engine"}));
  add_common(curve);

  // table-rbar
  std::vector<int> table_rails{1, 2, 3, 100};
  auto* table = app.add_subcommand("table-rbar", "Squeezing needed for half the ideal log-negativity");
  table->add_option("--rails", table_rails, "Rail counts, comma separated (the infinite row is always added)")
      ->delimiter(',');
  add_common(table);

  // witness
  std::string witness_rails = "1";
  double witness_r = 0.45;
  std::optional<double> gain;
  double g_min = 0.0;
  double g_max = 2.0;
  int g_steps = 41;
  auto* witness = app.add_subcommand("witness", "Entanglement witness against the signal gain");
  witness->add_option("--family", family)->check(CLI::IsMember({"canonical", "lo"}));
  witness->add_option("--rails", witness_rails, "Rails per arm, or inf");
  witness->add_option("--r", witness_r, "Squeezing parameter");
  witness->add_option("--gain", gain, "Evaluate at a single gain");
  witness->add_option("--g-min", g_min);
  witness->add_option("--g-max", g_max);
  witness->add_option("--g-steps", g_steps);
  bool optimal = false;
  witness->add_flag("--optimal-gain", optimal, "Evaluate only at g* = (c + 1/4)/b");
  witness->add_option("--method", method)->check(CLI::IsMember({"closed", "engine"}));
  add_common(witness);

  // verify
  std::string suite = "all";
  int max_rails = 20;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"all", "gmatrix", "unitarity", "correlators", "scenarios", "commutators", "weights"}));
  verify->add_option("--max-rails", max_rails, "Largest N-rail topology to check");
  add_common(verify);

  // gmatrix / umatrix
  std::string topology = "L4";
  auto* gm = app.add_subcommand("gmatrix", "Print the Gram matrix of a linear-optical cluster");
  gm->add_option("--topology", topology, "L<M>, <N>R or nrail:<N>");
  add_common(gm);
  std::string frame = "ldlt";
  auto* um = app.add_subcommand("umatrix", "Print the network unitary of a linear-optical cluster");
  um->add_option("--topology", topology, "L<M>, <N>R or nrail:<N>");
  um->add_option("--frame", frame, "Factorization frame")->check(CLI::IsMember({"ldlt", "sqrt"}));
  add_common(um);

  // scenarios
  int scenario_rails = 10;
  auto* sc = app.add_subcommand("scenarios", "Export the built-in teleportation scenarios as JSON");
  sc->add_option("--max-rails", scenario_rails);
  sc->add_option("--out", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version stay at 0; usage errors share the error code.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const OutputFormat fmt = parse_format(format);
    if (curve->parsed()) {
      curve_cfg.family = parse_family(family);
      curve_cfg.rails = {curve_rails};
      curve_cfg.format = fmt;
      emit(render(curve_table(curve_cfg, method_for(method)), fmt), out);
    } else if (table->parsed()) {
      for (int n : table_rails) {
        if (n < 1) throw std::invalid_argument("rail counts must be >= 1");
      }
      emit(render(rbar_table(table_rails), fmt), out);
    } else if (witness->parsed()) {
      const ClusterFamily fam = parse_family(family);
      const Rails rails = parse_rails(witness_rails);
      if (!(witness_r >= 0.0)) throw std::invalid_argument("r must be >= 0");
      Table t = (gain || optimal)
                    ? witness_table(fam, rails, witness_r, optimal ? std::nullopt : gain, method_for(method))
                    : witness_table(fam, rails, witness_r, g_min, g_max, g_steps, method_for(method));
      emit(render(t, fmt), out);
    } else if (verify->parsed()) {
      if (max_rails < 1) throw std::invalid_argument("max-rails must be >= 1");
      const auto results = run_verify(parse_suite(suite), max_rails);
      emit(render(verify_table(results), fmt), out);
      int failed = 0;
      for (const auto& r : results) failed += r.pass ? 0 : 1;
      std::fprintf(stderr, "%zu checks, %d failed\n", results.size(), failed);
      return failed == 0 ? 0 : 1;
    } else if (gm->parsed()) {
      const GMatrix g = solve_geometric_constraints(topology_by_name(topology));
      emit(fmt == OutputFormat::Csv ? matrix_to_csv(g.matrix()) : matrix_to_json(g.matrix()).dump(2) + "\n", out);
    } else if (um->parsed()) {
      SynthesisOptions opts;
      opts.frame = frame == "sqrt" ? FactorFrame::SymmetricSqrt : FactorFrame::PivotedLdlt;
      const UMatrix u = synthesize_u(topology_by_name(topology), opts);
      emit(fmt == OutputFormat::Csv ? matrix_to_csv(u.matrix()) : matrix_to_json(u.matrix()).dump(2) + "\n", out);
    } else if (sc->parsed()) {
      emit(scenarios_to_json(builtin_scenarios(scenario_rails)).dump(2) + "\n", out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
