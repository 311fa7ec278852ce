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

#include "cvcluster/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cvcluster {

namespace {

constexpr double kXFormTol = 1e-12;

const char* const kOutputNames[4] = {"q_mu", "p_mu", "q_nu", "p_nu"};

std::string entry_name(int i, int j) {
  return std::string("V(") + kOutputNames[i] + ", " + kOutputNames[j] + ")";
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

Eigen::Matrix4d covariance_matrix(const Correlators& c) {
  Eigen::Matrix4d v;
  v << c.a, 0, 0, c.c,
       0, c.b, c.c, 0,
       0, c.c, c.a, 0,
       c.c, 0, 0, c.b;
  return v;
}

Eigen::Matrix4d covariance_matrix(const OutputQuadratures& out, const ModeRegistry& reg) {
  const OperatorExpr* xi[4] = {&out.q_mu, &out.p_mu, &out.q_nu, &out.p_nu};
  Eigen::Matrix4d v;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) v(i, j) = v(j, i) = second_moment(*xi[i], *xi[j], reg);
  }
  return v;
}

Correlators correlators_from_outputs(const OutputQuadratures& out, const ModeRegistry& reg) {
  const Eigen::Matrix4d v = covariance_matrix(out, reg);
  // Pairs that vanish in the X-form.
  const int zeros[4][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  for (const auto& z : zeros) {
    if (std::abs(v(z[0], z[1])) > kXFormTol) {
      throw XFormError("covariance is not X-form: " + entry_name(z[0], z[1]) + " = " + fmt(v(z[0], z[1])));
    }
  }
  if (std::abs(v(0, 0) - v(2, 2)) > kXFormTol) {
    throw XFormError("covariance is not X-form: " + entry_name(0, 0) + " != " + entry_name(2, 2));
  }
  if (std::abs(v(1, 1) - v(3, 3)) > kXFormTol) {
    throw XFormError("covariance is not X-form: " + entry_name(1, 1) + " != " + entry_name(3, 3));
  }
  if (std::abs(v(0, 3) - v(1, 2)) > kXFormTol) {
    throw XFormError("covariance is not X-form: " + entry_name(0, 3) + " != " + entry_name(1, 2));
  }
  return {v(0, 0), v(1, 1), v(0, 3)};
}

Correlators correlators_from_outputs(const NRailOutputs& out) {
  return correlators_from_outputs({out.q_mu, out.p_mu, out.q_nu, out.p_nu}, out.registry);
}

SymplecticPair symplectic_pt(const Correlators& c) {
  const double s = std::sqrt(c.a * c.b);
  const double l1 = std::abs(s - c.c);
  const double l2 = std::abs(s + c.c);
  return {std::min(l1, l2), std::max(l1, l2)};
}

SymplecticPair symplectic_spectrum(const Eigen::Matrix4d& v) {
  const double det_a = v.topLeftCorner<2, 2>().determinant();
  const double det_b = v.bottomRightCorner<2, 2>().determinant();
  const double det_c = v.topRightCorner<2, 2>().determinant();
  const double delta = det_a + det_b + 2.0 * det_c;
  const double det_v = v.determinant();
  const double disc = std::sqrt(std::max(delta * delta - 4.0 * det_v, 0.0));
  const double minus2 = std::max((delta - disc) / 2.0, 0.0);
  const double plus2 = (delta + disc) / 2.0;
  return {std::sqrt(minus2), std::sqrt(plus2)};
}

SymplecticPair symplectic_pt_generic(const Eigen::Matrix4d& v) {
  const Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  return symplectic_spectrum(flip.asDiagonal() * v * flip.asDiagonal());
}

double log_negativity(double lambda_minus) {
  if (!(lambda_minus > 0.0)) throw std::invalid_argument("symplectic eigenvalue must be positive");
  return std::max(0.0, -std::log(4.0 * lambda_minus));
}

double ideal_log_negativity() { return -std::log(std::sqrt(2.0) - 1.0); }

Rails Rails::finite(int n) {
  if (n < 1) throw std::invalid_argument("rail count must be >= 1, got " + std::to_string(n));
  return Rails(n);
}

int Rails::count() const {
  if (is_infinite()) throw std::logic_error("rail count is infinite");
  return n_;
}

std::string Rails::to_string() const { return is_infinite() ? "inf" : std::to_string(n_); }

Correlators closed_form_correlators(ClusterFamily family, Rails rails, double r) {
  const double x = std::exp(-2.0 * r);
  if (family == ClusterFamily::Canonical) {
    const double a = rails.is_infinite() ? 0.25 : (1.0 + x / rails.count()) / 4.0;
    return {a, (1.0 + x) / 2.0, 0.25};
  }
  double a = (1.0 + 2.0 * x) / 4.0;
  if (!rails.is_infinite()) {
    const double n = rails.count();
    a = (1.0 + (2.0 * n + 1.0) / n * x) / 4.0;
  }
  return {a, (2.0 + 3.0 * x) / 4.0, (1.0 + x) / 4.0};
}

Correlators closed_form_l4_correlators(ClusterFamily family, double r) {
  const double x = std::exp(-2.0 * r);
  if (family == ClusterFamily::Canonical) return {(1.0 + x) / 4.0, (2.0 + x) / 4.0, 0.25};
  return {(1.0 + 2.0 * x) / 4.0, (2.0 + 3.0 * x) / 4.0, (1.0 + x) / 4.0};
}

double en_of(const Correlators& c) { return log_negativity(symplectic_pt(c).minus); }

double en_closed(ClusterFamily family, Rails rails, double r) {
  return en_of(closed_form_correlators(family, rails, r));
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double ftol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::domain_error("bisection bracket [" + fmt(lo) + ", " + fmt(hi) + "] has no sign change");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= ftol || mid == lo || mid == hi) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

double threshold_root(ClusterFamily family, Rails rails, double target) {
  return bisect(
      [&](double r) {
        const Correlators c = closed_form_correlators(family, rails, r);
        return std::sqrt(c.a * c.b) - c.c - target;
      },
      0.0, 5.0);
}

}  // namespace

double rbar(ClusterFamily family, Rails rails) {
  return threshold_root(family, rails, std::sqrt(std::sqrt(2.0) - 1.0) / 4.0);
}

double zero_entanglement_boundary(ClusterFamily family, Rails rails) {
  return threshold_root(family, rails, 0.25);
}

WitnessValue witness_wg(const Correlators& c, double g) {
  const double w = 2.0 * (c.a + g * g * c.b - 2.0 * g * c.c);
  return {w, g, w < g};
}

double optimal_gain(const Correlators& c) {
  if (!(c.b > 0.0)) throw std::invalid_argument("optimal gain needs b > 0");
  return (c.c + 0.25) / c.b;
}

double db_of_r(double r) { return 10.0 * std::log10(std::exp(-2.0 * r)); }

namespace {

NRailOutputs build_outputs(ClusterFamily family, int rails) {
  return family == ClusterFamily::Canonical ? nrail_outputs_canonical(rails, 0.0)
                                            : nrail_outputs_lo(rails, 0.0);
}

}  // namespace

PipelineModel::PipelineModel(ClusterFamily family, int rails)
    : family_(family), rails_(rails), out_(build_outputs(family, rails)) {}

Correlators PipelineModel::correlators(double r) const {
  const ModeRegistry reg = out_.registry.with_uniform_squeezing(r);
  return correlators_from_outputs({out_.q_mu, out_.p_mu, out_.q_nu, out_.p_nu}, reg);
}

double PipelineModel::log_negativity(double r) const { return en_of(correlators(r)); }

}  // namespace cvcluster
