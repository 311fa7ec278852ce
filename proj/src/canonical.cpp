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

#include "cvcluster/canonical.hpp"

#include <cmath>
#include <numeric>
#include <tuple>

namespace cvcluster {

std::string to_string(ClusterFamily family) {
  return family == ClusterFamily::Canonical ? "canonical" : "lo";
}

ClusterFamily parse_family(const std::string& text) {
  if (text == "canonical") return ClusterFamily::Canonical;
  if (text == "lo" || text == "linear-optical") return ClusterFamily::LinearOptical;
  throw std::invalid_argument("unknown cluster family '" + text + "' (expected canonical or lo)");
}

const ModeState& ClusterState::node(NodeId k) const {
  if (k < 1 || k > static_cast<int>(nodes.size())) {
    throw TopologyError("node " + std::to_string(k) + " not in cluster");
  }
  return nodes[static_cast<std::size_t>(k - 1)];
}

WeightVector::WeightVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw WeightError("weight vector is empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw WeightError("weight vector has a non-finite entry");
  }
  const double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-12) {
    throw WeightError("weights must sum to 1, got " + std::to_string(sum));
  }
}

WeightVector WeightVector::uniform(int n) {
  if (n < 1) throw WeightError("uniform weights need n >= 1");
  return WeightVector(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

ClusterState build_canonical(const ClusterSpec& spec, double r) {
  std::vector<double> rs(static_cast<std::size_t>(spec.node_count()), r);
  return build_canonical(spec, rs);
}

ClusterState build_canonical(const ClusterSpec& spec, std::span<const double> r) {
  if (static_cast<int>(r.size()) != spec.node_count()) {
    throw std::invalid_argument("need one squeezing parameter per node");
  }
  ClusterState state{spec, {}, {}, ClusterFamily::Canonical};
  for (NodeId k = 1; k <= spec.node_count(); ++k) {
    const ModeId id = state.registry.add_squeezed(std::to_string(k), r[static_cast<std::size_t>(k - 1)]);
    state.nodes.push_back(ModeState::base(id));
  }
  // QND gates commute, so the edge order does not matter.
  for (const auto& [k, l] : spec.edges()) {
    auto& a = state.nodes[static_cast<std::size_t>(k - 1)];
    auto& b = state.nodes[static_cast<std::size_t>(l - 1)];
    std::tie(a, b) = apply_qnd(a, b);
  }
  return state;
}

OperatorExpr nullifier(const ClusterState& state, NodeId k) {
  OperatorExpr delta = state.node(k).p;
  for (NodeId l : state.spec.neighbors(k)) delta -= state.node(l).q;
  return delta;
}

std::vector<OperatorExpr> nullifiers(const ClusterState& state) {
  std::vector<OperatorExpr> out;
  out.reserve(state.nodes.size());
  for (NodeId k = 1; k <= state.spec.node_count(); ++k) out.push_back(nullifier(state, k));
  return out;
}

Eigen::MatrixXd nullifier_covariance(const ClusterState& state, std::span<const NodeId> nodes) {
  std::vector<OperatorExpr> deltas;
  for (NodeId k : nodes) deltas.push_back(nullifier(state, k));
  const auto n = static_cast<Eigen::Index>(deltas.size());
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      c(i, j) = c(j, i) = second_moment(deltas[static_cast<std::size_t>(i)],
                                        deltas[static_cast<std::size_t>(j)], state.registry);
    }
  }
  return c;
}

namespace detail {

NRailOutputs attach_inputs(ClusterState cluster) {
  NRailOutputs out{std::move(cluster), {}, 0, 0, {}, {}, {}, {}};
  out.registry = out.cluster.registry;
  out.alpha = out.registry.add_coherent("alpha");
  out.beta = out.registry.add_coherent("beta");
  return out;
}

void check_weights(const WeightVector& eta, int rails) {
  if (static_cast<int>(eta.size()) != rails) {
    throw WeightError("expected " + std::to_string(rails) + " weights, got " +
                      std::to_string(eta.size()));
  }
}

}  // namespace detail

NRailOutputs nrail_outputs_canonical(int rails, double r) {
  const auto eta = WeightVector::uniform(std::max(rails, 1));
  return nrail_outputs_canonical(rails, r, eta, eta);
}

NRailOutputs nrail_outputs_canonical(int rails, double r, const WeightVector& eta_mu,
                                     const WeightVector& eta_nu) {
  const ClusterSpec spec = nrail(rails);
  detail::check_weights(eta_mu, rails);
  detail::check_weights(eta_nu, rails);
  NRailOutputs out = detail::attach_inputs(build_canonical(spec, r));
  const auto& st = out.cluster;
  const int n = rails;
  const auto qa = OperatorExpr::position(out.alpha);
  const auto pa = OperatorExpr::momentum(out.alpha);
  const auto qb = OperatorExpr::position(out.beta);
  const auto pb = OperatorExpr::momentum(out.beta);

  out.q_mu = qa;
  const auto mid_mu = nrail_mid_rails(n, 0);
  for (std::size_t j = 0; j < mid_mu.size(); ++j) out.q_mu.add_scaled(nullifier(st, mid_mu[j]), eta_mu[j]);
  out.p_mu = pa + qb - nullifier(st, 1) + nullifier(st, n + 2);

  out.q_nu = qb;
  const auto mid_nu = nrail_mid_rails(n, 1);
  for (std::size_t j = 0; j < mid_nu.size(); ++j) out.q_nu.add_scaled(nullifier(st, mid_nu[j]), eta_nu[j]);
  out.p_nu = pb + qa - nullifier(st, 2 * n + 4) + nullifier(st, n + 3);
  return out;
}

WeightVector optimal_weights(const Eigen::MatrixXd& noise_cov) {
  const auto n = noise_cov.rows();
  if (n == 0 || noise_cov.cols() != n) throw WeightError("noise covariance must be square and non-empty");
  if (!noise_cov.allFinite()) throw WeightError("noise covariance has non-finite entries");
  const double scale = noise_cov.cwiseAbs().maxCoeff();
  if ((noise_cov - noise_cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0)) {
    throw WeightError("noise covariance is not symmetric");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(noise_cov);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw WeightError("noise covariance is singular");
  const Eigen::VectorXd w = lu.solve(Eigen::VectorXd::Ones(n));
  const double norm = w.sum();
  if (!std::isfinite(norm) || std::abs(norm) < 1e-300) {
    throw WeightError("constrained minimum does not exist for this covariance");
  }
  std::vector<double> eta(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) eta[static_cast<std::size_t>(i)] = w(i) / norm;
  // Renormalize so the sum check is exact to rounding.
  const double s = std::accumulate(eta.begin(), eta.end(), 0.0);
  for (double& v : eta) v /= s;
  return WeightVector(std::move(eta));
}

}  // namespace cvcluster
