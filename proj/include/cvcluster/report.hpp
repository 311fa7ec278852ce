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

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cvcluster/canonical.hpp"
#include "cvcluster/entanglement.hpp"
#include "cvcluster/topology.hpp"

namespace cvcluster {

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Header row, comma separated, LF endings, doubles as %.17g.
std::string to_csv(const Table& t);
/// {"columns": [...], "rows": [[...], ...]}
std::string to_json(const Table& t);

enum class OutputFormat { Csv, Json };
OutputFormat parse_format(const std::string& text);
std::string render(const Table& t, OutputFormat format);

enum class EvalMethod { Closed, Engine };
EvalMethod parse_method(const std::string& text);

struct SweepConfig {
  ClusterFamily family = ClusterFamily::Canonical;
  std::vector<int> rails{1};
  double r_min = 0.0;
  double r_max = 2.0;
  int steps = 41;
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> out;

  /// Throws std::invalid_argument unless r_min >= 0, r_max >= r_min, steps >= 2, every N >= 1.
  void validate() const;
  /// steps evenly spaced points from r_min to r_max inclusive.
  std::vector<double> grid() const;
};

/// Columns r, EN, EN_normalized for the first rail count of cfg.
Table curve_table(const SweepConfig& cfg, EvalMethod method = EvalMethod::Closed);

/// Columns family, rails, rbar_2dp, rbar, db. One row per family and rail
/// count, then the infinite-rail row of each family.
Table rbar_table(const std::vector<int>& rails);

/// Columns g, W_g, bound, entangled over an evenly spaced gain grid.
Table witness_table(ClusterFamily family, Rails rails, double r, double g_min, double g_max, int g_steps,
                    EvalMethod method = EvalMethod::Closed);
/// Single-gain variant; g defaults to the optimal gain when absent.
Table witness_table(ClusterFamily family, Rails rails, double r, std::optional<double> g,
                    EvalMethod method = EvalMethod::Closed);

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double worst = 0.0;
  double tolerance = 0.0;
};

enum class VerifySuite { All, GMatrix, Unitarity, Correlators, Scenarios, Commutators, Weights };
VerifySuite parse_suite(const std::string& text);

/// Runs the requested checks over the built-in topologies (rails up to max_rails).
std::vector<CheckResult> run_verify(VerifySuite suite, int max_rails = 20);
Table verify_table(const std::vector<CheckResult>& results);

}  // namespace cvcluster
