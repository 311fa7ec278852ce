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

#include "cvcluster/teleport.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

namespace cvcluster {

namespace {

constexpr double kIdentityTol = 1e-12;

struct QuadRef {
  char quad;  // 'q' or 'p'
  std::string mode;
};

QuadRef parse_quadrature(const std::string& label) {
  if (label.size() < 3 || (label[0] != 'q' && label[0] != 'p') || label[1] != '_') {
    throw ScenarioError("bad quadrature label '" + label + "' (expected q_<mode> or p_<mode>)");
  }
  return {label[0], label.substr(2)};
}

std::string strip_primes(std::string name) {
  name.erase(std::remove(name.begin(), name.end(), '\''), name.end());
  return name;
}

std::string outcome_label(const std::string& mode) {
  const std::string base = strip_primes(mode);
  if (!base.empty() && std::isdigit(static_cast<unsigned char>(base[0]))) return "s" + base;
  return "s_" + base;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string magnitude(double m) {
  if (std::abs(m - 1.0) <= 1e-12) return "";
  if (std::abs(m - std::sqrt(2.0)) <= 1e-12) return "sqrt2";
  if (std::abs(m - 1.0 / std::sqrt(2.0)) <= 1e-12) return "1/sqrt2";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", m);
  return buf;
}

using ModeMap = std::map<std::string, ModeState>;

const ModeState& lookup(const ModeMap& modes, const std::string& name) {
  auto it = modes.find(name);
  if (it == modes.end()) throw ScenarioError("no mode named '" + name + "' at this point of the pipeline");
  return it->second;
}

const OperatorExpr& quadrature(const ModeMap& modes, const std::string& label) {
  const QuadRef ref = parse_quadrature(label);
  const ModeState& m = lookup(modes, ref.mode);
  return ref.quad == 'q' ? m.q : m.p;
}

void apply_step(ModeMap& modes, const Step& step, std::vector<std::string>& node_names) {
  std::vector<ModeState> in;
  for (const auto& name : step.in) in.push_back(lookup(modes, name));
  std::vector<ModeState> out;
  switch (step.kind) {
    case Step::Kind::Fourier:
      out.push_back(apply_fourier(in.at(0), FourierDirection::Forward));
      break;
    case Step::Kind::InverseFourier:
      out.push_back(apply_fourier(in.at(0), FourierDirection::Inverse));
      break;
    case Step::Kind::Qnd: {
      auto [a, b] = apply_qnd(in.at(0), in.at(1));
      out = {a, b};
      break;
    }
    case Step::Kind::BeamSplitter: {
      auto [a, b] = apply_beamsplitter_5050(in.at(0), in.at(1));
      out = {a, b};
      break;
    }
  }
  for (const auto& name : step.in) modes.erase(name);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!modes.emplace(step.out.at(i), out[i]).second) {
      throw ScenarioError("step output '" + step.out[i] + "' collides with an existing mode");
    }
  }
  for (auto& name : node_names) {
    for (std::size_t i = 0; i < step.in.size() && i < step.out.size(); ++i) {
      if (name == step.in[i]) {
        name = step.out[i];
        break;
      }
    }
  }
}

std::string render_argument(std::vector<std::pair<double, std::string>> terms, bool& dagger) {
  dagger = !terms.empty() && std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.first < 0.0; });
  if (dagger) {
    for (auto& t : terms) t.first = -t.first;
  }
  std::stable_partition(terms.begin(), terms.end(), [](const auto& t) { return t.first > 0.0; });
  const double m0 = std::abs(terms.front().first);
  const bool common = std::all_of(terms.begin(), terms.end(),
                                  [m0](const auto& t) { return std::abs(std::abs(t.first) - m0) <= 1e-12; });
  std::string body;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double c = terms[i].first;
    if (c < 0.0) {
      body += "-";
    } else if (i > 0) {
      body += "+";
    }
    if (!common) {
      const std::string mag = magnitude(std::abs(c));
      if (!mag.empty()) body += mag + "*";
    }
    body += terms[i].second;
  }
  if (common) {
    const std::string mag = magnitude(m0);
    if (!mag.empty()) return mag + "*" + (terms.size() > 1 ? "(" + body + ")" : body);
  }
  return body;
}

OperatorExpr image(OutputIndex which, ModeId alpha, ModeId beta) {
  switch (which) {
    case kQMu: return OperatorExpr::position(alpha);
    case kPMu: return OperatorExpr::momentum(alpha) + OperatorExpr::position(beta);
    case kQNu: return OperatorExpr::position(beta);
    case kPNu: return OperatorExpr::momentum(beta) + OperatorExpr::position(alpha);
  }
  return {};
}

std::string node(NodeId k) { return std::to_string(k); }

}  // namespace

Step Step::fourier(std::string in, std::string out) {
  return {Kind::Fourier, {std::move(in)}, {std::move(out)}};
}

Step Step::inverse_fourier(std::string in, std::string out) {
  return {Kind::InverseFourier, {std::move(in)}, {std::move(out)}};
}

Step Step::qnd(std::string a, std::string b, std::string a_out, std::string b_out) {
  return {Kind::Qnd, {std::move(a), std::move(b)}, {std::move(a_out), std::move(b_out)}};
}

Step Step::beam_splitter(std::string a, std::string b, std::string sum_out, std::string diff_out) {
  return {Kind::BeamSplitter, {std::move(a), std::move(b)}, {std::move(sum_out), std::move(diff_out)}};
}

double ScenarioReport::worst_identity_residual() const {
  return *std::max_element(identity_residual.begin(), identity_residual.end());
}

bool ScenarioReport::ok(double tol) const {
  return worst_identity_residual() <= tol && measured_commutator <= tol && output_commutator <= tol &&
         noise_leak <= tol;
}

ScenarioReport run_scenario(const Scenario& s, double r) {
  ClusterState cluster = s.family == ClusterFamily::Canonical ? build_canonical(s.spec, r)
                                                              : build_lo_cluster(s.spec, r);
  ScenarioReport report;
  report.name = s.name;
  report.registry = cluster.registry;
  const ModeId alpha = report.registry.add_coherent("alpha");
  const ModeId beta = report.registry.add_coherent("beta");

  ModeMap modes;
  std::vector<std::string> node_names;
  for (NodeId k = 1; k <= s.spec.node_count(); ++k) {
    modes.emplace(node(k), cluster.node(k));
    node_names.push_back(node(k));
  }
  modes.emplace("alpha", ModeState::base(alpha));
  modes.emplace("beta", ModeState::base(beta));

  for (const auto& step : s.cluster_prep) apply_step(modes, step, node_names);

  std::vector<OperatorExpr> deltas;
  for (NodeId k = 1; k <= s.spec.node_count(); ++k) {
    const ModeState& mk = lookup(modes, node_names[static_cast<std::size_t>(k - 1)]);
    const bool momentum_form = s.nullifier_form == NullifierForm::MomentumMinusNeighborPositions;
    OperatorExpr d = momentum_form ? mk.p : mk.q;
    for (NodeId l : s.spec.neighbors(k)) {
      const ModeState& ml = lookup(modes, node_names[static_cast<std::size_t>(l - 1)]);
      if (momentum_form) {
        d -= ml.q;
      } else {
        d += ml.p;
      }
    }
    deltas.push_back(std::move(d));
  }

  for (const auto& step : s.input_prep) apply_step(modes, step, node_names);
  for (const auto& step : s.coupling) apply_step(modes, step, node_names);

  const std::set<std::string> measured(s.measured.begin(), s.measured.end());
  std::array<OperatorExpr, 4> defined;
  for (int i = 0; i < 4; ++i) {
    const OutputSpec& o = s.outputs[static_cast<std::size_t>(i)];
    const std::string& out_mode = s.output_modes[static_cast<std::size_t>(i / 2)];
    OperatorExpr def;
    for (const Term& t : o.definition) {
      const QuadRef ref = parse_quadrature(t.quadrature);
      if (ref.mode != out_mode && !measured.contains(t.quadrature)) {
        throw ScenarioError(s.name + ": definition uses '" + t.quadrature +
                            "', which is neither measured nor on the output mode");
      }
      def.add_scaled(quadrature(modes, t.quadrature), t.coef);
    }
    const OperatorExpr ideal = image(static_cast<OutputIndex>(i), alpha, beta);
    OperatorExpr expansion = ideal;
    for (const NoiseTerm& n : o.noise) {
      if (n.node < 1 || n.node > s.spec.node_count()) {
        throw ScenarioError(s.name + ": noise term on unknown node " + node(n.node));
      }
      expansion.add_scaled(deltas[static_cast<std::size_t>(n.node - 1)], n.coef);
    }
    const double residual = max_abs_diff(def, expansion);
    report.identity_residual[static_cast<std::size_t>(i)] = residual;
    if (!(residual <= kIdentityTol)) {
      throw ScenarioError(s.name + ": definition and expansion differ by " + fmt(residual));
    }
    const OperatorExpr excess = def - ideal;
    double leak = std::max({std::abs(excess.q_coef(alpha)), std::abs(excess.p_coef(alpha)),
                            std::abs(excess.q_coef(beta)), std::abs(excess.p_coef(beta))});
    for (const auto& [id, c] : excess.q()) {
      if (id != alpha && id != beta) leak = std::max(leak, std::abs(c));
    }
    report.noise_leak = std::max(report.noise_leak, leak);
    defined[static_cast<std::size_t>(i)] = std::move(def);
  }

  for (const auto& label : s.measured) {
    const QuadRef ref = parse_quadrature(label);
    if (ref.mode == s.output_modes[0] || ref.mode == s.output_modes[1]) {
      throw ScenarioError(s.name + ": measured quadrature '" + label + "' sits on an output mode");
    }
  }
  for (std::size_t i = 0; i < s.measured.size(); ++i) {
    for (std::size_t j = i + 1; j < s.measured.size(); ++j) {
      const double c = commutator(quadrature(modes, s.measured[i]), quadrature(modes, s.measured[j]),
                                  report.registry);
      report.measured_commutator = std::max(report.measured_commutator, std::abs(c));
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double expected = (j == i + 1 && i % 2 == 0) ? kHbar : 0.0;
      const double c = commutator(defined[static_cast<std::size_t>(i)], defined[static_cast<std::size_t>(j)],
                                  report.registry);
      report.output_commutator = std::max(report.output_commutator, std::abs(c - expected));
    }
  }

  report.outputs = {defined[0], defined[1], defined[2], defined[3]};
  report.corrections = correction_recipe(s);
  return report;
}

std::string correction_recipe(const Scenario& s) {
  const std::set<std::string> measured(s.measured.begin(), s.measured.end());
  std::string recipe;
  for (int sigma = 0; sigma < 2; ++sigma) {
    const std::string& out_mode = s.output_modes[static_cast<std::size_t>(sigma)];
    const std::string label = strip_primes(out_mode);
    std::array<std::pair<char, double>, 2> own{};
    std::array<std::vector<std::pair<double, std::string>>, 2> outcomes;
    for (int k = 0; k < 2; ++k) {
      int found = 0;
      for (const Term& t : s.outputs[static_cast<std::size_t>(2 * sigma + k)].definition) {
        const QuadRef ref = parse_quadrature(t.quadrature);
        if (ref.mode == out_mode) {
          own[static_cast<std::size_t>(k)] = {ref.quad, t.coef};
          ++found;
        } else {
          outcomes[static_cast<std::size_t>(k)].emplace_back(t.coef, outcome_label(ref.mode));
        }
      }
      if (found != 1) {
        throw ScenarioError(s.name + ": each output definition needs exactly one output-mode term");
      }
    }
    const auto [qq, qc] = own[0];
    const auto [pq, pc] = own[1];
    std::string fourier;
    bool valid = std::abs(std::abs(qc) - 1.0) <= 1e-12 && std::abs(std::abs(pc) - 1.0) <= 1e-12;
    if (valid && qq == 'q' && pq == 'p' && qc > 0 && pc > 0) {
      fourier = "";
    } else if (valid && qq == 'q' && pq == 'p' && qc < 0 && pc < 0) {
      fourier = "F" + label + "^2";
    } else if (valid && qq == 'p' && pq == 'q' && qc > 0 && pc < 0) {
      fourier = "F" + label + "^dag";
    } else if (valid && qq == 'p' && pq == 'q' && qc < 0 && pc > 0) {
      fourier = "F" + label;
    } else {
      throw ScenarioError(s.name + ": output-mode terms are not a power of the Fourier map");
    }
    const char* ops[2] = {"X", "Z"};
    for (int k = 0; k < 2; ++k) {
      const auto& terms = outcomes[static_cast<std::size_t>(k)];
      if (terms.empty()) continue;
      bool dagger = false;
      const std::string arg = render_argument(terms, dagger);
      if (!recipe.empty()) recipe += " ";
      recipe += std::string(ops[k]) + label + (dagger ? "^dag(" : "(") + arg + ")";
    }
    if (!fourier.empty()) recipe += (recipe.empty() ? "" : " ") + fourier;
  }
  return recipe;
}

Scenario l4_canonical_end_inputs() {
  Scenario s{"L4-canonical-end-inputs",
             ClusterFamily::Canonical,
             linear_chain(4).with_attachments({{"alpha", 1}, {"beta", 4}}, std::pair{2, 3}),
             {},
             NullifierForm::MomentumMinusNeighborPositions,
             {},
             {Step::qnd("alpha", "1", "alpha'", "1'"), Step::qnd("beta", "4", "beta'", "4'")},
             {},
             {"p_alpha'", "p_beta'", "p_1'", "p_4'"},
             {"2", "3"}};
  s.outputs[kQMu] = {{{-1, "q_2"}, {1, "p_1'"}}, {{1, 1}}};
  s.outputs[kPMu] = {{{-1, "p_2"}, {1, "p_alpha'"}, {1, "p_4'"}}, {{-1, 2}, {1, 4}}};
  s.outputs[kQNu] = {{{-1, "q_3"}, {1, "p_4'"}}, {{1, 4}}};
  s.outputs[kPNu] = {{{-1, "p_3"}, {1, "p_beta'"}, {1, "p_1'"}}, {{-1, 3}, {1, 1}}};
  return s;
}

Scenario l4_canonical_inner_inputs() {
  Scenario s{"L4-canonical",
             ClusterFamily::Canonical,
             linear_chain(4),
             {},
             NullifierForm::MomentumMinusNeighborPositions,
             {Step::inverse_fourier("alpha", "alpha'"), Step::inverse_fourier("beta", "beta'")},
             {Step::qnd("alpha'", "2", "alpha''", "2'"), Step::qnd("beta'", "3", "beta''", "3'")},
             {},
             {"p_alpha''", "p_beta''", "p_2'", "p_3'"},
             {"1", "4"}};
  s.outputs[kQMu] = {{{1, "p_1"}, {-1, "p_alpha''"}}, {{1, 1}}};
  s.outputs[kPMu] = {{{-1, "q_1"}, {-1, "p_beta''"}, {1, "p_2'"}}, {{1, 2}}};
  s.outputs[kQNu] = {{{1, "p_4"}, {-1, "p_beta''"}}, {{1, 4}}};
  s.outputs[kPNu] = {{{-1, "q_4"}, {-1, "p_alpha''"}, {1, "p_3'"}}, {{1, 3}}};
  return s;
}

Scenario l4_canonical_fourier_cluster() {
  std::vector<Step> prep;
  for (NodeId k = 1; k <= 4; ++k) prep.push_back(Step::fourier(node(k), node(k) + "'"));
  Scenario s{"L4-canonical-ft-cluster",
             ClusterFamily::Canonical,
             linear_chain(4),
             std::move(prep),
             NullifierForm::PositionPlusNeighborMomenta,
             {},
             {Step::qnd("alpha", "2'", "alpha''", "2''"), Step::qnd("beta", "3'", "beta''", "3''")},
             {},
             {"p_alpha''", "p_beta''", "p_2''", "p_3''"},
             {"1'", "4'"}};
  s.outputs[kQMu] = {{{1, "q_1'"}, {1, "p_2''"}}, {{1, 1}}};
  s.outputs[kPMu] = {{{1, "p_1'"}, {1, "p_alpha''"}, {1, "p_3''"}}, {{1, 2}}};
  s.outputs[kQNu] = {{{1, "q_4'"}, {1, "p_3''"}}, {{1, 4}}};
  s.outputs[kPNu] = {{{1, "p_4'"}, {1, "p_beta''"}, {1, "p_2''"}}, {{1, 3}}};
  return s;
}

Scenario l4_linear_optical() {
  const double r2 = std::sqrt(2.0);
  Scenario s{"L4-lo",
             ClusterFamily::LinearOptical,
             linear_chain(4),
             {},
             NullifierForm::MomentumMinusNeighborPositions,
             {},
             {Step::beam_splitter("alpha", "2", "alpha1", "alpha2"),
              Step::beam_splitter("beta", "3", "beta1", "beta2")},
             {},
             {"p_alpha1", "q_alpha2", "p_beta1", "q_beta2"},
             {"1", "4"}};
  s.outputs[kQMu] = {{{1, "p_1"}, {r2, "q_alpha2"}}, {{1, 1}}};
  s.outputs[kPMu] = {{{-1, "q_1"}, {r2, "p_alpha1"}, {r2, "q_beta2"}}, {{1, 2}}};
  s.outputs[kQNu] = {{{1, "p_4"}, {r2, "q_beta2"}}, {{1, 4}}};
  s.outputs[kPNu] = {{{-1, "q_4"}, {r2, "p_beta1"}, {r2, "q_alpha2"}}, {{1, 3}}};
  return s;
}

Scenario nrail_scenario(ClusterFamily family, int rails) {
  const auto eta = WeightVector::uniform(std::max(rails, 1));
  return nrail_scenario(family, rails, eta, eta);
}

Scenario nrail_scenario(ClusterFamily family, int rails, const WeightVector& eta_mu,
                        const WeightVector& eta_nu) {
  const ClusterSpec spec = rails == 1 ? linear_chain(6) : nrail(rails);
  detail::check_weights(eta_mu, rails);
  detail::check_weights(eta_nu, rails);
  const int n = rails;
  const NodeId a = n + 2;
  const NodeId b = n + 3;
  const NodeId last = 2 * n + 4;
  const auto arm_mu = nrail_mid_rails(n, 0);
  const auto arm_nu = nrail_mid_rails(n, 1);
  const std::string prefix = rails == 1 ? "L6" : std::to_string(rails) + "R";

  Scenario s{prefix + "-" + to_string(family), family, spec, {}, NullifierForm::MomentumMinusNeighborPositions,
             {}, {}, {}, {}, {"1", node(last)}};
  auto& q_mu = s.outputs[kQMu];
  auto& p_mu = s.outputs[kPMu];
  auto& q_nu = s.outputs[kQNu];
  auto& p_nu = s.outputs[kPNu];

  if (family == ClusterFamily::Canonical) {
    s.input_prep = {Step::inverse_fourier("alpha", "alpha'"), Step::inverse_fourier("beta", "beta'")};
    s.coupling = {Step::qnd("alpha'", node(a), "alpha''", node(a) + "'"),
                  Step::qnd("beta'", node(b), "beta''", node(b) + "'")};
    q_mu.definition = {{-1, "q_1"}, {-1, "p_alpha''"}};
    for (std::size_t j = 0; j < arm_mu.size(); ++j) {
      q_mu.definition.push_back({eta_mu[j], "p_" + node(arm_mu[j])});
      q_mu.noise.push_back({eta_mu[j], arm_mu[j]});
    }
    p_mu.definition = {{-1, "p_1"}, {-1, "p_beta''"}, {1, "p_" + node(a) + "'"}};
    p_mu.noise = {{-1, 1}, {1, a}};
    q_nu.definition = {{-1, "q_" + node(last)}, {-1, "p_beta''"}};
    for (std::size_t j = 0; j < arm_nu.size(); ++j) {
      q_nu.definition.push_back({eta_nu[j], "p_" + node(arm_nu[j])});
      q_nu.noise.push_back({eta_nu[j], arm_nu[j]});
    }
    p_nu.definition = {{-1, "p_" + node(last)}, {-1, "p_alpha''"}, {1, "p_" + node(b) + "'"}};
    p_nu.noise = {{-1, last}, {1, b}};
    s.measured = {"p_alpha''", "p_beta''"};
    for (NodeId k : arm_mu) s.measured.push_back("p_" + node(k));
    s.measured.push_back("p_" + node(a) + "'");
    s.measured.push_back("p_" + node(b) + "'");
    for (NodeId k : arm_nu) s.measured.push_back("p_" + node(k));
    return s;
  }

  const double r2 = std::sqrt(2.0);
  s.coupling = {Step::beam_splitter("alpha", node(a), "alpha1", "alpha2"),
                Step::beam_splitter("beta", node(b), "beta1", "beta2")};
  q_mu.definition = {{1, "q_1"}};
  for (std::size_t j = 0; j < arm_mu.size(); ++j) {
    q_mu.definition.push_back({-eta_mu[j], "p_" + node(arm_mu[j])});
    q_mu.noise.push_back({-eta_mu[j], arm_mu[j]});
  }
  q_mu.definition.push_back({r2, "q_alpha1"});
  p_mu.definition = {{1, "p_1"}, {r2, "p_alpha2"}, {r2, "q_beta1"}};
  p_mu.noise = {{1, 1}, {-1, a}};
  q_nu.definition = {{1, "q_" + node(last)}};
  for (std::size_t j = 0; j < arm_nu.size(); ++j) {
    q_nu.definition.push_back({-eta_nu[j], "p_" + node(arm_nu[j])});
    q_nu.noise.push_back({-eta_nu[j], arm_nu[j]});
  }
  q_nu.definition.push_back({r2, "q_beta1"});
  p_nu.definition = {{1, "p_" + node(last)}, {r2, "q_alpha1"}, {r2, "p_beta2"}};
  p_nu.noise = {{1, last}, {-1, b}};
  for (NodeId k : arm_mu) s.measured.push_back("p_" + node(k));
  s.measured.insert(s.measured.end(), {"q_alpha1", "p_alpha2", "q_beta1", "p_beta2"});
  for (NodeId k : arm_nu) s.measured.push_back("p_" + node(k));
  return s;
}

std::vector<Scenario> builtin_scenarios(int max_rails) {
  std::vector<Scenario> out = {l4_canonical_end_inputs(), l4_canonical_inner_inputs(),
                               l4_canonical_fourier_cluster(), l4_linear_optical()};
  for (int n = 1; n <= max_rails; ++n) {
    out.push_back(nrail_scenario(ClusterFamily::Canonical, n));
    out.push_back(nrail_scenario(ClusterFamily::LinearOptical, n));
  }
  return out;
}

FtEquivalenceReport verify_ft_cluster_equivalence(double r) {
  const ScenarioReport ft = run_scenario(l4_canonical_fourier_cluster(), r);
  const ScenarioReport inner = run_scenario(l4_canonical_inner_inputs(), r);
  FtEquivalenceReport rep;
  rep.fourier_cluster = correlators_from_outputs(ft.outputs, ft.registry);
  rep.inner_inputs = correlators_from_outputs(inner.outputs, inner.registry);
  rep.closed_form = closed_form_l4_correlators(ClusterFamily::Canonical, r);
  auto dev = [](const Correlators& x, const Correlators& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c)});
  };
  rep.max_deviation = std::max({dev(rep.fourier_cluster, rep.inner_inputs),
                                dev(rep.fourier_cluster, rep.closed_form),
                                dev(rep.inner_inputs, rep.closed_form)});
  return rep;
}

}  // namespace cvcluster
