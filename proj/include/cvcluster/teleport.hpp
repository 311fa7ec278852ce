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

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvcluster/canonical.hpp"
#include "cvcluster/entanglement.hpp"
#include "cvcluster/linear_optical.hpp"
#include "cvcluster/topology.hpp"

namespace cvcluster {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One gate of a teleportation pipeline, acting on named modes. Cluster
/// nodes start as "1".."M", the inputs as "alpha" and "beta". Every step
/// consumes its input names and introduces its output names.
struct Step {
  enum class Kind { Fourier, InverseFourier, Qnd, BeamSplitter };
  Kind kind;
  std::vector<std::string> in;
  std::vector<std::string> out;

  static Step fourier(std::string in, std::string out);
  static Step inverse_fourier(std::string in, std::string out);
  static Step qnd(std::string a, std::string b, std::string a_out, std::string b_out);
  /// Port a is the input mode, port b the cluster node; outputs (a+b)/sqrt2, (a-b)/sqrt2.
  static Step beam_splitter(std::string a, std::string b, std::string sum_out, std::string diff_out);
};

/// How the excess-noise operators are read off the prepared cluster.
enum class NullifierForm {
  MomentumMinusNeighborPositions,  // p_k - sum_{N_k} q_l
  PositionPlusNeighborMomenta,     // q_k + sum_{N_k} p_l
};

/// coef * quadrature, with the quadrature written "q_<mode>" or "p_<mode>".
struct Term {
  double coef;
  std::string quadrature;
};

struct NoiseTerm {
  double coef;
  NodeId node;
};

/// One output quadrature: its definition in measured/final-mode quadratures,
/// and its expansion as the ideal CZ image plus excess-noise operators.
struct OutputSpec {
  std::vector<Term> definition;
  std::vector<NoiseTerm> noise;
};

enum OutputIndex { kQMu = 0, kPMu = 1, kQNu = 2, kPNu = 3 };

struct Scenario {
  std::string name;
  ClusterFamily family = ClusterFamily::Canonical;
  ClusterSpec spec;
  std::vector<Step> cluster_prep;
  NullifierForm nullifier_form = NullifierForm::MomentumMinusNeighborPositions;
  std::vector<Step> input_prep;
  std::vector<Step> coupling;
  std::array<OutputSpec, 4> outputs;  // q_mu, p_mu, q_nu, p_nu
  std::vector<std::string> measured;  // quadrature labels, in display order
  std::array<std::string, 2> output_modes;  // final names of the corrected nodes
};

struct ScenarioReport {
  std::string name;
  OutputQuadratures outputs;
  ModeRegistry registry;
  std::array<double, 4> identity_residual{};
  double measured_commutator = 0.0;   // worst |[m_i, m_j]|
  double output_commutator = 0.0;     // worst deviation from the canonical set
  double noise_leak = 0.0;            // input or seed-position content of output - image
  std::string corrections;

  double worst_identity_residual() const;
  bool ok(double tol = 1e-12) const;
};

/// Builds the cluster at uniform squeezing r, runs the pipeline and checks
/// every definition against its expansion. Throws ScenarioError if a
/// residual exceeds 1e-12 or the scenario references unknown modes.
ScenarioReport run_scenario(const Scenario& s, double r);

/// The Weyl-Heisenberg and Fourier corrections implied by the definitions,
/// e.g. "X2(s1) Z2(s_alpha+s4) F2^2 X3(s4) Z3(s_beta+s1) F3^2".
std::string correction_recipe(const Scenario& s);

/// Chain of four nodes, inputs coupled to the end nodes 1 and 4.
Scenario l4_canonical_end_inputs();
/// Chain of four nodes, Fourier-transformed inputs coupled to nodes 2 and 3.
Scenario l4_canonical_inner_inputs();
/// Same arrangement with all cluster nodes Fourier transformed before coupling.
Scenario l4_canonical_fourier_cluster();
Scenario l4_linear_optical();
/// N-rail teleportation; rails == 1 is the six-node chain.
Scenario nrail_scenario(ClusterFamily family, int rails);
Scenario nrail_scenario(ClusterFamily family, int rails, const WeightVector& eta_mu,
                        const WeightVector& eta_nu);

std::vector<Scenario> builtin_scenarios(int max_rails = 10);

struct FtEquivalenceReport {
  Correlators fourier_cluster;
  Correlators inner_inputs;
  Correlators closed_form;
  double max_deviation = 0.0;
};

/// Correlators of the Fourier-transformed-cluster scheme against the
/// inner-input chain scheme and its closed form.
FtEquivalenceReport verify_ft_cluster_equivalence(double r);

}  // namespace cvcluster
