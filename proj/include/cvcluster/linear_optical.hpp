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

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cvcluster/canonical.hpp"
#include "cvcluster/network.hpp"
#include "cvcluster/topology.hpp"

namespace cvcluster {

class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gram matrix G_kl = alpha_k . alpha_l of a linear-optical cluster.
class GMatrix {
 public:
  explicit GMatrix(Eigen::MatrixXd entries);
  const Eigen::MatrixXd& matrix() const { return g_; }
  Eigen::Index size() const { return g_.rows(); }
  double operator()(NodeId k, NodeId l) const { return g_(k - 1, l - 1); }

 private:
  Eigen::MatrixXd g_;
};

/// Rows are the alpha_k vectors.
class AlphaMatrix {
 public:
  explicit AlphaMatrix(Eigen::MatrixXd rows) : a_(std::move(rows)) {}
  const Eigen::MatrixXd& matrix() const { return a_; }
  Eigen::Index size() const { return a_.rows(); }
  /// max |A A^T - G|
  double gram_residual(const GMatrix& g) const;

 private:
  Eigen::MatrixXd a_;
};

enum class ConstraintSolver {
  Auto,         // least squares on small clusters, the closed form otherwise
  LeastSquares, // dense QR over the M(M+1)/2 distinct entries of G
  GramInverse,  // G = (I + Adj^2)^-1, from U U^dag = I with U = (I + i Adj) A
};

enum class FactorFrame { PivotedLdlt, SymmetricSqrt };

struct SynthesisOptions {
  ConstraintSolver solver = ConstraintSolver::Auto;
  FactorFrame frame = FactorFrame::PivotedLdlt;
};

/// Largest node count for which Auto picks the least-squares route.
inline constexpr int kLeastSquaresMaxNodes = 48;

/// Worst violation of
///   G_kl + sum_{m in N_k, n in N_l} G_mn = delta_kl
///   sum_{n in N_l} G_kn - sum_{m in N_k} G_ml = 0
/// over all k, l.
double geometric_constraint_residual(const ClusterSpec& spec, const Eigen::MatrixXd& g);

/// Throws SynthesisError on a rank-deficient system or a residual above 1e-10.
GMatrix solve_geometric_constraints(const ClusterSpec& spec,
                                    ConstraintSolver solver = ConstraintSolver::Auto);

/// Any real A with A A^T = G. Eigenvalues or pivots down to -1e-10 are clipped
/// to zero; anything more negative throws SynthesisError.
AlphaMatrix factor_alpha(const GMatrix& g, FactorFrame frame = FactorFrame::PivotedLdlt);

/// Row k is alpha_k + i sum_{l in N_k} alpha_l. Throws SynthesisError unless
/// the result is unitary to 1e-10.
UMatrix assemble_u(const AlphaMatrix& alpha, const ClusterSpec& spec);

UMatrix synthesize_u(const ClusterSpec& spec, const SynthesisOptions& options = {});

ClusterState build_lo_cluster(const ClusterSpec& spec, double r, const SynthesisOptions& options = {});
/// Seeds passed through a given unitary, for externally supplied frames.
ClusterState build_lo_cluster(const ClusterSpec& spec, double r, const UMatrix& u);

/// All nullifiers, checked to be free of position quadratures to 1e-12.
std::vector<OperatorExpr> nullifiers_lo(const ClusterState& state);

/// Worst |<delta_k delta_l> - (M_kl + delta_kl) e^{-2r}/4| over all pairs.
/// Requires uniform squeezing.
double verify_correlator_identity(const ClusterState& state);

NRailOutputs nrail_outputs_lo(int rails, double r, const SynthesisOptions& options = {});
NRailOutputs nrail_outputs_lo(int rails, double r, const WeightVector& eta_mu,
                              const WeightVector& eta_nu, const SynthesisOptions& options = {});
/// Uniform weights over a cluster built from a given network unitary.
NRailOutputs nrail_outputs_lo(int rails, double r, const UMatrix& u);

}  // namespace cvcluster
