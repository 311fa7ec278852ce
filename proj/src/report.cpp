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

#include "cvcluster/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include <json.hpp>

#include "cvcluster/io.hpp"
#include "cvcluster/linear_optical.hpp"
#include "cvcluster/teleport.hpp"

namespace cvcluster {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return csv_field(v);
        }
      },
      c);
}

nlohmann::json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_double(v);
          return v;
        } else {
          return v;
        }
      },
      c);
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out.push_back(i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1));
  }
  return out;
}

Correlators correlators_at(ClusterFamily family, Rails rails, double r, EvalMethod method) {
  if (method == EvalMethod::Closed || rails.is_infinite()) return closed_form_correlators(family, rails, r);
  return PipelineModel(family, rails.count()).correlators(r);
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t j = 0; j < t.columns.size(); ++j) out += (j ? "," : "") + csv_field(t.columns[j]);
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + cell_text(row[j]);
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  nlohmann::json doc = {{"columns", t.columns}, {"rows", rows}};
  return doc.dump(2) + "\n";
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown format '" + text + "' (expected csv or json)");
}

std::string render(const Table& t, OutputFormat format) {
  return format == OutputFormat::Csv ? to_csv(t) : to_json(t);
}

EvalMethod parse_method(const std::string& text) {
  if (text == "closed") return EvalMethod::Closed;
  if (text == "engine") return EvalMethod::Engine;
  throw std::invalid_argument("unknown method '" + text + "' (expected closed or engine)");
}

void SweepConfig::validate() const {
  if (!std::isfinite(r_min) || r_min < 0.0) throw std::invalid_argument("r-min must be >= 0");
  if (!std::isfinite(r_max) || r_max < r_min) throw std::invalid_argument("r-max must be >= r-min");
  if (steps < 2) throw std::invalid_argument("steps must be >= 2");
  if (rails.empty()) throw std::invalid_argument("at least one rail count is required");
  for (int n : rails) {
    if (n < 1) throw std::invalid_argument("rail counts must be >= 1");
  }
}

std::vector<double> SweepConfig::grid() const { return linspace(r_min, r_max, steps); }

Table curve_table(const SweepConfig& cfg, EvalMethod method) {
  cfg.validate();
  const int n = cfg.rails.front();
  const double ideal = ideal_log_negativity();
  std::unique_ptr<PipelineModel> model;
  if (method == EvalMethod::Engine) model = std::make_unique<PipelineModel>(cfg.family, n);
  Table t{{"r", "EN", "EN_normalized"}, {}};
  for (double r : cfg.grid()) {
    const double en = model ? model->log_negativity(r) : en_closed(cfg.family, Rails::finite(n), r);
    t.rows.push_back({r, en, en / ideal});
  }
  return t;
}

Table rbar_table(const std::vector<int>& rails) {
  Table t{{"family", "rails", "rbar_2dp", "rbar", "db"}, {}};
  for (ClusterFamily family : {ClusterFamily::Canonical, ClusterFamily::LinearOptical}) {
    std::vector<Rails> all;
    for (int n : rails) all.push_back(Rails::finite(n));
    all.push_back(Rails::infinite());
    for (const Rails& n : all) {
      const double r = rbar(family, n);
      t.rows.push_back({to_string(family), n.to_string(), std::round(r * 100.0) / 100.0, r, db_of_r(r)});
    }
  }
  return t;
}

Table witness_table(ClusterFamily family, Rails rails, double r, double g_min, double g_max, int g_steps,
                    EvalMethod method) {
  if (g_steps < 2) throw std::invalid_argument("g-steps must be >= 2");
  if (!(g_max >= g_min)) throw std::invalid_argument("g-max must be >= g-min");
  const Correlators c = correlators_at(family, rails, r, method);
  Table t{{"g", "W_g", "bound", "entangled"}, {}};
  for (double g : linspace(g_min, g_max, g_steps)) {
    const WitnessValue w = witness_wg(c, g);
    t.rows.push_back({g, w.w, w.bound, w.entangled});
  }
  return t;
}

Table witness_table(ClusterFamily family, Rails rails, double r, std::optional<double> g, EvalMethod method) {
  const Correlators c = correlators_at(family, rails, r, method);
  const double gain = g ? *g : optimal_gain(c);
  const WitnessValue w = witness_wg(c, gain);
  return Table{{"g", "W_g", "bound", "entangled"}, {{gain, w.w, w.bound, w.entangled}}};
}

VerifySuite parse_suite(const std::string& text) {
  static const std::map<std::string, VerifySuite> names = {
      {"all", VerifySuite::All},
      {"gmatrix", VerifySuite::GMatrix},
      {"unitarity", VerifySuite::Unitarity},
      {"correlators", VerifySuite::Correlators},
      {"scenarios", VerifySuite::Scenarios},
      {"commutators", VerifySuite::Commutators},
      {"weights", VerifySuite::Weights},
  };
  auto it = names.find(text);
  if (it == names.end()) throw std::invalid_argument("unknown suite '" + text + "'");
  return it->second;
}

namespace {

struct Topology {
  std::string name;
  ClusterSpec spec;
};

std::vector<Topology> verify_topologies(int max_rails) {
  std::vector<Topology> out = {{"L4", linear_chain(4)}, {"L6", linear_chain(6)}};
  for (int n = 1; n <= max_rails; ++n) out.push_back({std::to_string(n) + "R", nrail(n)});
  return out;
}

// One constraint solve and one factorization per topology for the whole run.
class SynthesisCache {
 public:
  const GMatrix& g(const Topology& t) {
    auto it = g_.find(t.name);
    if (it == g_.end()) it = g_.emplace(t.name, solve_geometric_constraints(t.spec)).first;
    return it->second;
  }
  const UMatrix& u(const Topology& t) {
    auto it = u_.find(t.name);
    if (it == u_.end()) it = u_.emplace(t.name, assemble_u(factor_alpha(g(t)), t.spec)).first;
    return it->second;
  }

 private:
  std::map<std::string, GMatrix> g_;
  std::map<std::string, UMatrix> u_;
};

class Collector {
 public:
  void add(std::string suite, std::string name, double worst, double tol) {
    results.push_back({std::move(suite), std::move(name), worst <= tol, worst, tol});
  }
  // Records an exception as a failed check instead of aborting the run.
  template <typename F>
  void guard(const std::string& suite, const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception&) {
      results.push_back({suite, name, false, std::numeric_limits<double>::infinity(), 0.0});
    }
  }
  std::vector<CheckResult> results;
};

void suite_gmatrix(Collector& c, SynthesisCache& cache, const std::vector<Topology>& tops) {
  for (const auto& t : tops) {
    c.guard("gmatrix", "constraints " + t.name, [&] {
      const GMatrix& g = cache.g(t);
      c.add("gmatrix", "constraints " + t.name, geometric_constraint_residual(t.spec, g.matrix()), 1e-10);
      const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g.matrix()).eigenvalues().minCoeff();
      c.add("gmatrix", "psd " + t.name, std::max(0.0, -min_eig), 1e-10);
      if (t.spec.node_count() <= kLeastSquaresMaxNodes) {
        const GMatrix& ls = g;
        const GMatrix inv = solve_geometric_constraints(t.spec, ConstraintSolver::GramInverse);
        c.add("gmatrix", "solver agreement " + t.name, (ls.matrix() - inv.matrix()).cwiseAbs().maxCoeff(), 1e-10);
      }
    });
  }
  c.guard("gmatrix", "constraints 100R", [&] {
    const ClusterSpec spec = nrail(100);
    const GMatrix g = solve_geometric_constraints(spec);
    c.add("gmatrix", "constraints 100R", geometric_constraint_residual(spec, g.matrix()), 1e-10);
  });
}

void suite_unitarity(Collector& c, SynthesisCache& cache, const std::vector<Topology>& tops) {
  for (const auto& t : tops) {
    c.guard("unitarity", "unitary " + t.name, [&] {
      const UMatrix& u = cache.u(t);
      c.add("unitarity", "unitary " + t.name, u.unitarity_residual(), 1e-10);
      const ClusterState st = build_lo_cluster(t.spec, 0.7, u);
      double leak = 0.0;
      for (const auto& d : nullifiers(st)) leak = std::max(leak, d.max_abs_position_coefficient());
      c.add("unitarity", "position-free nullifiers " + t.name, leak, 1e-12);
    });
  }
}

void suite_correlators(Collector& c, SynthesisCache& cache, const std::vector<Topology>& tops) {
  for (const auto& t : tops) {
    c.guard("correlators", "identity " + t.name, [&] {
      const GMatrix& g = cache.g(t);
      const UMatrix& u1 = cache.u(t);
      const UMatrix u2 = assemble_u(factor_alpha(g, FactorFrame::SymmetricSqrt), t.spec);
      double identity = 0.0;
      double frames = 0.0;
      std::vector<NodeId> all(static_cast<std::size_t>(t.spec.node_count()));
      for (NodeId k = 1; k <= t.spec.node_count(); ++k) all[static_cast<std::size_t>(k - 1)] = k;
      for (double r : {0.2, 0.7, 1.5}) {
        const ClusterState s1 = build_lo_cluster(t.spec, r, u1);
        const ClusterState s2 = build_lo_cluster(t.spec, r, u2);
        identity = std::max({identity, verify_correlator_identity(s1), verify_correlator_identity(s2)});
        frames = std::max(frames, (nullifier_covariance(s1, all) - nullifier_covariance(s2, all)).cwiseAbs().maxCoeff());
      }
      c.add("correlators", "identity " + t.name, identity, 1e-12);
      c.add("correlators", "frame independence " + t.name, frames, 1e-12);
    });
  }
  std::vector<int> rails;
  for (int n = 1; n <= 10; ++n) rails.push_back(n);
  rails.push_back(100);
  for (ClusterFamily family : {ClusterFamily::Canonical, ClusterFamily::LinearOptical}) {
    for (int n : rails) {
      const std::string name = "engine vs closed form " + to_string(family) + " N=" + std::to_string(n);
      c.guard("correlators", name, [&] {
        const PipelineModel model(family, n);
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i) {
          const double r = 0.05 * i;
          worst = std::max(worst, std::abs(model.log_negativity(r) - en_closed(family, Rails::finite(n), r)));
        }
        c.add("correlators", name, worst, 1e-10);
      });
    }
  }
}

void suite_scenarios(Collector& c) {
  for (const auto& s : builtin_scenarios(10)) {
    c.guard("scenarios", s.name, [&] {
      double worst = 0.0;
      for (double r : {0.3, 1.1}) {
        const ScenarioReport rep = run_scenario(s, r);
        worst = std::max({worst, rep.worst_identity_residual(), rep.noise_leak, rep.measured_commutator});
      }
      c.add("scenarios", s.name, worst, 1e-12);
    });
  }
  c.guard("scenarios", "fourier-cluster equivalence", [&] {
    double worst = 0.0;
    for (double r : {0.0, 0.5, 1.3}) worst = std::max(worst, verify_ft_cluster_equivalence(r).max_deviation);
    c.add("scenarios", "fourier-cluster equivalence", worst, 1e-12);
  });
}

double output_commutator_deviation(const NRailOutputs& o) {
  const OperatorExpr* xi[4] = {&o.q_mu, &o.p_mu, &o.q_nu, &o.p_nu};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double expected = (j == i + 1 && i % 2 == 0) ? kHbar : 0.0;
      worst = std::max(worst, std::abs(commutator(*xi[i], *xi[j], o.registry) - expected));
    }
  }
  return worst;
}

void suite_commutators(Collector& c, SynthesisCache& cache, const std::vector<Topology>& tops, int max_rails) {
  for (ClusterFamily family : {ClusterFamily::Canonical, ClusterFamily::LinearOptical}) {
    for (int n = 1; n <= max_rails; ++n) {
      const std::string name = "outputs " + to_string(family) + " N=" + std::to_string(n);
      c.guard("commutators", name, [&] {
        const Topology& t = tops[static_cast<std::size_t>(n + 1)];
        const NRailOutputs o = family == ClusterFamily::Canonical ? nrail_outputs_canonical(n, 0.5)
                                                                  : nrail_outputs_lo(n, 0.5, cache.u(t));
        c.add("commutators", name, output_commutator_deviation(o), 1e-12);
      });
    }
  }
  for (const auto& s : builtin_scenarios(10)) {
    c.guard("commutators", "scenario " + s.name, [&] {
      const ScenarioReport rep = run_scenario(s, 0.8);
      c.add("commutators", "scenario " + s.name, std::max(rep.output_commutator, rep.measured_commutator), 1e-12);
    });
  }
}

void suite_weights(Collector& c, SynthesisCache& cache, const std::vector<Topology>& tops, int max_rails) {
  for (ClusterFamily family : {ClusterFamily::Canonical, ClusterFamily::LinearOptical}) {
    for (int n = 1; n <= max_rails; ++n) {
      const std::string name = "uniform optimum " + to_string(family) + " N=" + std::to_string(n);
      c.guard("weights", name, [&] {
        const Topology& t = tops[static_cast<std::size_t>(n + 1)];
        const ClusterState st = family == ClusterFamily::Canonical ? build_canonical(t.spec, 0.6)
                                                                   : build_lo_cluster(t.spec, 0.6, cache.u(t));
        double worst = 0.0;
        for (int arm = 0; arm < 2; ++arm) {
          const auto mids = nrail_mid_rails(n, arm);
          const WeightVector eta = optimal_weights(nullifier_covariance(st, mids));
          for (double v : eta.values()) worst = std::max(worst, std::abs(v - 1.0 / n));
        }
        c.add("weights", name, worst, 1e-9);
      });
    }
  }
}

}  // namespace

std::vector<CheckResult> run_verify(VerifySuite suite, int max_rails) {
  Collector c;
  SynthesisCache cache;
  const auto tops = verify_topologies(max_rails);
  const bool all = suite == VerifySuite::All;
  if (all || suite == VerifySuite::GMatrix) suite_gmatrix(c, cache, tops);
  if (all || suite == VerifySuite::Unitarity) suite_unitarity(c, cache, tops);
  if (all || suite == VerifySuite::Correlators) suite_correlators(c, cache, tops);
  if (all || suite == VerifySuite::Scenarios) suite_scenarios(c);
  if (all || suite == VerifySuite::Commutators) suite_commutators(c, cache, tops, max_rails);
  if (all || suite == VerifySuite::Weights) suite_weights(c, cache, tops, max_rails);
  return c.results;
}

Table verify_table(const std::vector<CheckResult>& results) {
  Table t{{"suite", "check", "pass", "worst", "tolerance"}, {}};
  for (const auto& r : results) t.rows.push_back({r.suite, r.name, r.pass, r.worst, r.tolerance});
  return t;
}

}  // namespace cvcluster
