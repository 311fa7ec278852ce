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

#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "cvcluster/canonical.hpp"
#include "cvcluster/linear_optical.hpp"
#include "cvcluster/quadrature.hpp"

namespace cvcluster {

/// X-form summary of the output covariance: a = <dq^2>, b = <dp^2>,
/// c = <{dq_mu, dp_nu}>/2.
struct Correlators {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

class XFormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered (q_mu, p_mu, q_nu, p_nu).
struct OutputQuadratures {
  OperatorExpr q_mu, p_mu, q_nu, p_nu;
};

/// The X-form matrix built from (a, b, c).
Eigen::Matrix4d covariance_matrix(const Correlators& c);
/// Full symmetrized covariance of the four outputs.
Eigen::Matrix4d covariance_matrix(const OutputQuadratures& out, const ModeRegistry& reg);

/// Reads (a, b, c) after checking the X-form pattern and the mu/nu symmetry to
/// 1e-12. Throws XFormError naming the first offending entry.
Correlators correlators_from_outputs(const OutputQuadratures& out, const ModeRegistry& reg);
Correlators correlators_from_outputs(const NRailOutputs& out);

struct SymplecticPair {
  double minus = 0.0;
  double plus = 0.0;
};

/// lambda_pm = |sqrt(ab) pm c|, sorted.
SymplecticPair symplectic_pt(const Correlators& c);
/// Symplectic spectrum of an arbitrary two-mode covariance (q1, p1, q2, p2).
SymplecticPair symplectic_spectrum(const Eigen::Matrix4d& v);
/// Spectrum after the partial transpose p2 -> -p2.
SymplecticPair symplectic_pt_generic(const Eigen::Matrix4d& v);

/// max(0, -ln(4 lambda_minus)).
double log_negativity(double lambda_minus);
/// -ln(sqrt2 - 1), the infinite-squeezing value.
double ideal_log_negativity();

/// Rail count per arm, possibly the infinite limit.
class Rails {
 public:
  static Rails finite(int n);
  static Rails infinite() { return Rails(0); }
  bool is_infinite() const { return n_ == 0; }
  /// Throws std::logic_error for the infinite limit.
  int count() const;
  std::string to_string() const;

 private:
  explicit Rails(int n) : n_(n) {}
  int n_;
};

/// Analytic output correlators of N-rail teleportation at uniform squeezing r.
Correlators closed_form_correlators(ClusterFamily family, Rails rails, double r);
/// Analytic correlators of the four-node chain with inputs on the inner nodes.
Correlators closed_form_l4_correlators(ClusterFamily family, double r);
double en_closed(ClusterFamily family, Rails rails, double r);
double en_of(const Correlators& c);

/// Root of f on [lo, hi] (f(lo), f(hi) of opposite sign) to |f| <= ftol.
double bisect(const std::function<double(double)>& f, double lo, double hi, double ftol = 1e-12);

/// Squeezing at which the closed-form E_N reaches half the ideal value.
double rbar(ClusterFamily family, Rails rails);
/// Largest r at which the closed-form E_N is still zero.
double zero_entanglement_boundary(ClusterFamily family, Rails rails);

struct WitnessValue {
  double w = 0.0;      // W_g = 2(a + g^2 b - 2 g c)
  double bound = 0.0;  // g
  bool entangled = false;
};

WitnessValue witness_wg(const Correlators& c, double g);
/// g* = (c + 1/4) / b.
double optimal_gain(const Correlators& c);

/// 10 log10(e^{-2r}).
double db_of_r(double r);

/// Output operators of an N-rail cluster built once; only the seed variances
/// change with r.
class PipelineModel {
 public:
  PipelineModel(ClusterFamily family, int rails);
  Correlators correlators(double r) const;
  double log_negativity(double r) const;
  const NRailOutputs& outputs() const { return out_; }
  ClusterFamily family() const { return family_; }
  int rails() const { return rails_; }

 private:
  ClusterFamily family_;
  int rails_;
  NRailOutputs out_;
};

}  // namespace cvcluster
