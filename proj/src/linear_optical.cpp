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

#include "cvcluster/linear_optical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace cvcluster {

namespace {

constexpr double kConstraintTol = 1e-10;
constexpr double kPsdTol = 1e-10;
constexpr double kUnitarityTol = 1e-10;
constexpr double kPositionFreeTol = 1e-12;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

GMatrix solve_least_squares(const ClusterSpec& spec) {
  const int m = spec.node_count();
  // Unknown index for G_kl, k <= l, 1-based nodes.
  auto idx = [m](NodeId k, NodeId l) {
    if (k > l) std::swap(k, l);
    const int i = k - 1;
    const int j = l - 1;
    return i * m - i * (i - 1) / 2 + (j - i);
  };
  const int unknowns = m * (m + 1) / 2;
  const int equations = unknowns + m * (m - 1) / 2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(equations, unknowns);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(equations);
  int row = 0;
  for (NodeId k = 1; k <= m; ++k) {
    for (NodeId l = k; l <= m; ++l, ++row) {
      a(row, idx(k, l)) += 1.0;
      for (NodeId mm : spec.neighbors(k)) {
        for (NodeId n : spec.neighbors(l)) a(row, idx(mm, n)) += 1.0;
      }
      b(row) = k == l ? 1.0 : 0.0;
    }
  }
  for (NodeId k = 1; k <= m; ++k) {
    for (NodeId l = k + 1; l <= m; ++l, ++row) {
      for (NodeId n : spec.neighbors(l)) a(row, idx(k, n)) += 1.0;
      for (NodeId mm : spec.neighbors(k)) a(row, idx(mm, l)) -= 1.0;
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < unknowns) {
    throw SynthesisError("geometric constraints do not determine G uniquely (rank " +
                         std::to_string(qr.rank()) + " of " + std::to_string(unknowns) + ")");
  }
  const Eigen::VectorXd x = qr.solve(b);
  Eigen::MatrixXd g(m, m);
  for (NodeId k = 1; k <= m; ++k) {
    for (NodeId l = k; l <= m; ++l) g(k - 1, l - 1) = g(l - 1, k - 1) = x(idx(k, l));
  }
  return GMatrix(std::move(g));
}

GMatrix solve_gram_inverse(const ClusterSpec& spec) {
  const Eigen::MatrixXd adj = spec.adjacency_matrix();
  const auto m = adj.rows();
  const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m) + adj * adj;
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  Eigen::MatrixXd g = llt.solve(Eigen::MatrixXd::Identity(m, m));
  g = 0.5 * (g + g.transpose());
  return GMatrix(std::move(g));
}

}  // namespace

GMatrix::GMatrix(Eigen::MatrixXd entries) : g_(std::move(entries)) {
  if (g_.rows() != g_.cols()) throw SynthesisError("G must be square");
  if (!g_.allFinite()) throw SynthesisError("G has non-finite entries");
  if (g_.size() > 0 && (g_ - g_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw SynthesisError("G must be symmetric");
  }
}

double AlphaMatrix::gram_residual(const GMatrix& g) const {
  if (a_.rows() != g.size()) return std::numeric_limits<double>::infinity();
  return (a_ * a_.transpose() - g.matrix()).cwiseAbs().maxCoeff();
}

double geometric_constraint_residual(const ClusterSpec& spec, const Eigen::MatrixXd& g) {
  const int m = spec.node_count();
  if (g.rows() != m || g.cols() != m) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (NodeId k = 1; k <= m; ++k) {
    for (NodeId l = 1; l <= m; ++l) {
      double first = g(k - 1, l - 1) - (k == l ? 1.0 : 0.0);
      for (NodeId mm : spec.neighbors(k)) {
        for (NodeId n : spec.neighbors(l)) first += g(mm - 1, n - 1);
      }
      double second = 0.0;
      for (NodeId n : spec.neighbors(l)) second += g(k - 1, n - 1);
      for (NodeId mm : spec.neighbors(k)) second -= g(mm - 1, l - 1);
      worst = std::max({worst, std::abs(first), std::abs(second)});
    }
  }
  return worst;
}

GMatrix solve_geometric_constraints(const ClusterSpec& spec, ConstraintSolver solver) {
  if (solver == ConstraintSolver::Auto) {
    solver = spec.node_count() <= kLeastSquaresMaxNodes ? ConstraintSolver::LeastSquares
                                                        : ConstraintSolver::GramInverse;
  }
  GMatrix g = solver == ConstraintSolver::LeastSquares ? solve_least_squares(spec)
                                                       : solve_gram_inverse(spec);
  const double residual = geometric_constraint_residual(spec, g.matrix());
  if (!(residual <= kConstraintTol)) {
    throw SynthesisError("geometric constraints not satisfied, residual " + fmt(residual));
  }
  return g;
}

AlphaMatrix factor_alpha(const GMatrix& g, FactorFrame frame) {
  const auto m = g.size();
  if (m == 0) return AlphaMatrix(Eigen::MatrixXd(0, 0));
  if (frame == FactorFrame::SymmetricSqrt) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.matrix());
    if (es.info() != Eigen::Success) throw SynthesisError("eigendecomposition of G failed");
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (ev(i) < -kPsdTol) throw SynthesisError("G is not positive semidefinite (eigenvalue " + fmt(ev(i)) + ")");
      ev(i) = std::sqrt(std::max(ev(i), 0.0));
    }
    const Eigen::MatrixXd& v = es.eigenvectors();
    return AlphaMatrix(v * ev.asDiagonal() * v.transpose());
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(g.matrix());
  if (ldlt.info() != Eigen::Success) throw SynthesisError("LDLT factorization of G failed");
  Eigen::VectorXd d = ldlt.vectorD();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (d(i) < -kPsdTol) throw SynthesisError("G is not positive semidefinite (pivot " + fmt(d(i)) + ")");
    d(i) = std::sqrt(std::max(d(i), 0.0));
  }
  // G = P^T L D L^T P
  Eigen::MatrixXd l = ldlt.matrixL();
  Eigen::MatrixXd a = ldlt.transpositionsP().transpose() * (l * d.asDiagonal());
  return AlphaMatrix(std::move(a));
}

UMatrix assemble_u(const AlphaMatrix& alpha, const ClusterSpec& spec) {
  const Eigen::MatrixXd& a = alpha.matrix();
  if (a.rows() != spec.node_count() || a.cols() != spec.node_count()) {
    throw SynthesisError("alpha matrix size does not match the cluster");
  }
  const Eigen::MatrixXd b = spec.adjacency_matrix() * a;
  Eigen::MatrixXcd u(a.rows(), a.cols());
  u.real() = a;
  u.imag() = b;
  UMatrix out(std::move(u));
  const double residual = out.unitarity_residual();
  if (!(residual <= kUnitarityTol)) {
    throw SynthesisError("assembled U is not unitary, residual " + fmt(residual));
  }
  return out;
}

UMatrix synthesize_u(const ClusterSpec& spec, const SynthesisOptions& options) {
  const GMatrix g = solve_geometric_constraints(spec, options.solver);
  return assemble_u(factor_alpha(g, options.frame), spec);
}

ClusterState build_lo_cluster(const ClusterSpec& spec, double r, const SynthesisOptions& options) {
  return build_lo_cluster(spec, r, synthesize_u(spec, options));
}

ClusterState build_lo_cluster(const ClusterSpec& spec, double r, const UMatrix& u) {
  if (u.size() != spec.node_count()) throw SynthesisError("U size does not match the cluster");
  ClusterState state{spec, {}, {}, ClusterFamily::LinearOptical};
  std::vector<ModeState> seeds;
  for (NodeId k = 1; k <= spec.node_count(); ++k) {
    seeds.push_back(ModeState::base(state.registry.add_squeezed(std::to_string(k), r)));
  }
  state.nodes = apply_network(u, seeds);
  return state;
}

std::vector<OperatorExpr> nullifiers_lo(const ClusterState& state) {
  std::vector<OperatorExpr> out = nullifiers(state);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double leak = out[k].max_abs_position_coefficient();
    if (leak > kPositionFreeTol) {
      throw SynthesisError("nullifier of node " + std::to_string(k + 1) +
                           " has a position component " + fmt(leak));
    }
  }
  return out;
}

double verify_correlator_identity(const ClusterState& state) {
  const auto& seeds = state.registry.modes();
  if (seeds.empty()) return 0.0;
  const auto* first = std::get_if<SqueezedVacuum>(&seeds.front().kind);
  if (first == nullptr) throw std::invalid_argument("cluster seeds must be squeezed");
  for (const auto& s : seeds) {
    const auto* sq = std::get_if<SqueezedVacuum>(&s.kind);
    if (sq == nullptr || sq->r != first->r) {
      throw std::invalid_argument("correlator identity needs uniform squeezing");
    }
  }
  const double unit = std::exp(-2.0 * first->r) / 4.0;
  const auto deltas = nullifiers_lo(state);
  const Eigen::MatrixXi mkl = common_neighbor_matrix(state.spec);
  double worst = 0.0;
  const int m = state.spec.node_count();
  for (int k = 0; k < m; ++k) {
    for (int l = k; l < m; ++l) {
      const double expected = (mkl(k, l) + (k == l ? 1.0 : 0.0)) * unit;
      const double got = second_moment(deltas[static_cast<std::size_t>(k)],
                                       deltas[static_cast<std::size_t>(l)], state.registry);
      worst = std::max(worst, std::abs(got - expected));
    }
  }
  return worst;
}

NRailOutputs nrail_outputs_lo(int rails, double r, const SynthesisOptions& options) {
  const auto eta = WeightVector::uniform(std::max(rails, 1));
  return nrail_outputs_lo(rails, r, eta, eta, options);
}

namespace {

NRailOutputs lo_outputs(ClusterState cluster, int rails, const WeightVector& eta_mu,
                        const WeightVector& eta_nu) {
  NRailOutputs out = detail::attach_inputs(std::move(cluster));
  const auto deltas = nullifiers_lo(out.cluster);
  auto delta = [&deltas](NodeId k) -> const OperatorExpr& {
    return deltas[static_cast<std::size_t>(k - 1)];
  };
  const int n = rails;
  const auto qa = OperatorExpr::position(out.alpha);
  const auto pa = OperatorExpr::momentum(out.alpha);
  const auto qb = OperatorExpr::position(out.beta);
  const auto pb = OperatorExpr::momentum(out.beta);

  out.q_mu = qa;
  const auto mid_mu = nrail_mid_rails(n, 0);
  for (std::size_t j = 0; j < mid_mu.size(); ++j) out.q_mu.add_scaled(delta(mid_mu[j]), -eta_mu[j]);
  out.p_mu = pa + qb + delta(1) - delta(n + 2);

  out.q_nu = qb;
  const auto mid_nu = nrail_mid_rails(n, 1);
  for (std::size_t j = 0; j < mid_nu.size(); ++j) out.q_nu.add_scaled(delta(mid_nu[j]), -eta_nu[j]);
  out.p_nu = pb + qa + delta(2 * n + 4) - delta(n + 3);
  return out;
}

}  // namespace

NRailOutputs nrail_outputs_lo(int rails, double r, const WeightVector& eta_mu,
                              const WeightVector& eta_nu, const SynthesisOptions& options) {
  const ClusterSpec spec = nrail(rails);
  detail::check_weights(eta_mu, rails);
  detail::check_weights(eta_nu, rails);
  return lo_outputs(build_lo_cluster(spec, r, options), rails, eta_mu, eta_nu);
}

NRailOutputs nrail_outputs_lo(int rails, double r, const UMatrix& u) {
  const auto eta = WeightVector::uniform(std::max(rails, 1));
  return lo_outputs(build_lo_cluster(nrail(rails), r, u), rails, eta, eta);
}

}  // namespace cvcluster
