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

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvcluster/gates.hpp"
#include "cvcluster/quadrature.hpp"
#include "cvcluster/topology.hpp"

namespace cvcluster {

enum class ClusterFamily { Canonical, LinearOptical };

std::string to_string(ClusterFamily family);
/// Accepts "canonical" and "lo" / "linear-optical".
ClusterFamily parse_family(const std::string& text);

class WeightError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cluster node quadratures expressed in the squeezed seeds, which occupy
/// registry ids 1..M in node order.
struct ClusterState {
  ClusterSpec spec;
  std::vector<ModeState> nodes;  // nodes[k-1] is node k
  ModeRegistry registry;
  ClusterFamily family = ClusterFamily::Canonical;

  const ModeState& node(NodeId k) const;
};

/// Real weights summing to one. Negative entries are allowed.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> values);
  static WeightVector uniform(int n);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Squeezed seeds 1..M, one per node, plus a QND gate on every edge.
ClusterState build_canonical(const ClusterSpec& spec, double r);
ClusterState build_canonical(const ClusterSpec& spec, std::span<const double> r);

/// delta_k = p_k - sum_{l in N_k} q_l in base-mode terms.
OperatorExpr nullifier(const ClusterState& state, NodeId k);
std::vector<OperatorExpr> nullifiers(const ClusterState& state);

/// <delta_k delta_l> over the listed nodes.
Eigen::MatrixXd nullifier_covariance(const ClusterState& state, std::span<const NodeId> nodes);

/// Output quadratures of N-rail CZ teleportation. The registry holds the
/// cluster seeds followed by the coherent inputs alpha and beta.
struct NRailOutputs {
  ClusterState cluster;
  ModeRegistry registry;
  ModeId alpha = 0;
  ModeId beta = 0;
  OperatorExpr q_mu, p_mu, q_nu, p_nu;
};

NRailOutputs nrail_outputs_canonical(int rails, double r);
NRailOutputs nrail_outputs_canonical(int rails, double r, const WeightVector& eta_mu,
                                     const WeightVector& eta_nu);

/// Minimizer of eta^T C eta subject to sum eta = 1: C^-1 1 / (1^T C^-1 1).
/// Throws WeightError for non-square, asymmetric or singular C.
WeightVector optimal_weights(const Eigen::MatrixXd& noise_cov);

namespace detail {
// Registry with the cluster seeds and two coherent inputs appended.
NRailOutputs attach_inputs(ClusterState cluster);
void check_weights(const WeightVector& eta, int rails);
}  // namespace detail

}  // namespace cvcluster
