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

// Independent reference computations shared by the unit and acceptance tests.
// Nothing here calls into the library's numerical routines.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace cvtest {

inline Eigen::MatrixXd rational(int denom, std::initializer_list<std::initializer_list<int>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int v : row) m(i, j++) = static_cast<double>(v) / denom;
    ++i;
  }
  return m;
}

inline Eigen::MatrixXd g_l4() {
  return rational(5, {{3, 0, -1, 0}, {0, 2, 0, -1}, {-1, 0, 2, 0}, {0, -1, 0, 3}});
}

inline Eigen::MatrixXd g_l6() {
  return rational(13, {{8, 0, -3, 0, 1, 0},
                       {0, 5, 0, -2, 0, 1},
                       {-3, 0, 6, 0, -2, 0},
                       {0, -2, 0, 6, 0, -3},
                       {1, 0, -2, 0, 5, 0},
                       {0, 1, 0, -3, 0, 8}});
}

inline Eigen::MatrixXd g_2r() {
  return rational(34, {{18, 0, 0, -10, 0, 2, 2, 0},
                       {0, 21, -13, 0, -3, 0, 0, 2},
                       {0, -13, 21, 0, -3, 0, 0, 2},
                       {-10, 0, 0, 15, 0, -3, -3, 0},
                       {0, -3, -3, 0, 15, 0, 0, -10},
                       {2, 0, 0, -3, 0, 21, -13, 0},
                       {2, 0, 0, -3, 0, -13, 21, 0},
                       {0, 2, 2, 0, -10, 0, 0, 18}});
}

inline Eigen::MatrixXd g_3r() {
  return rational(65, {{32, 0, 0, 0, -21, 0, 3, 3, 3, 0},
                       {0, 47, -18, -18, 0, -4, 0, 0, 0, 3},
                       {0, -18, 47, -18, 0, -4, 0, 0, 0, 3},
                       {0, -18, -18, 47, 0, -4, 0, 0, 0, 3},
                       {-21, 0, 0, 0, 28, 0, -4, -4, -4, 0},
                       {0, -4, -4, -4, 0, 28, 0, 0, 0, -21},
                       {3, 0, 0, 0, -4, 0, 47, -18, -18, 0},
                       {3, 0, 0, 0, -4, 0, -18, 47, -18, 0},
                       {3, 0, 0, 0, -4, 0, -18, -18, 47, 0},
                       {0, 3, 3, 3, 0, -21, 0, 0, 0, 32}});
}

// Hand-built U for the four-node chain, rows u_k = alpha_k + i beta_k.
inline Eigen::MatrixXcd u_l4() {
  using C = std::complex<double>;
  const double s2 = 1.0 / std::sqrt(2.0), s10 = 1.0 / std::sqrt(10.0);
  const C i(0.0, 1.0);
  Eigen::MatrixXcd u(4, 4);
  u << s2, 2.0 * i * s10, -s10, 0.0,
       i * s2, 2.0 * s10, i * s10, 0.0,
       0.0, i * s10, 2.0 * s10, i * s2,
       0.0, -s10, 2.0 * i * s10, s2;
  return u;
}

inline Eigen::MatrixXcd u_2r() {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  const double r3 = 1.0 / std::sqrt(3.0), r15 = 1.0 / std::sqrt(15.0);
  const double a = std::sqrt(10.0 / 51.0), b = std::sqrt(6.0 / 85.0), c = std::sqrt(5.0 / 102.0);
  const double d = std::sqrt(3.0 / 170.0), e = std::sqrt(3.0 / 5.0), f = std::sqrt(15.0 / 34.0);
  const double h = std::sqrt(27.0 / 170.0);
  Eigen::MatrixXcd u(8, 8);
  u << r3, i * r3, i * r15, -a, -b * i, 0.0, 0.0, 0.0,
       i * r3, r3, -2.0 * r15, c * i, -d, 0.0, 0.0, 0.0,
       i * r3, 0.0, e, c * i, -d, 0.0, 0.0, 0.0,
       0.0, i * r3, i * r15, f, h * i, 0.0, 0.0, 0.0,
       0.0, 0.0, 0.0, h * i, f, i * r15, i * r3, 0.0,
       0.0, 0.0, 0.0, -d, c * i, e, 0.0, i * r3,
       0.0, 0.0, 0.0, -d, c * i, -2.0 * r15, r3, i * r3,
       0.0, 0.0, 0.0, -b * i, -a, i * r15, i * r3, r3;
  return u;
}

// J = [[0, I], [-I, 0]] in (q_1..q_n, p_1..p_n) ordering.
inline Eigen::MatrixXd symplectic_form(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return j;
}

// Two-mode symplectic eigenvalues from the spectrum of i Omega V, with
// Omega for the (q1, p1, q2, p2) ordering. Returns {minus, plus}.
inline std::pair<double, double> symplectic_eigs_4x4(const Eigen::Matrix4d& v) {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  const Eigen::Matrix4cd m = std::complex<double>(0.0, 1.0) * (omega * v).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m);
  std::vector<double> mags;
  for (int k = 0; k < 4; ++k) mags.push_back(std::abs(es.eigenvalues()(k)));
  std::sort(mags.begin(), mags.end());
  return {0.5 * (mags[0] + mags[1]), 0.5 * (mags[2] + mags[3])};
}

// Negates every entry that couples to p2.
inline Eigen::Matrix4d partial_transpose(const Eigen::Matrix4d& v) {
  Eigen::Matrix4d flip = Eigen::Matrix4d::Identity();
  flip(3, 3) = -1.0;
  return flip * v * flip;
}

// V + i Omega / 4 >= 0 (uncertainty principle at hbar = 1/2).
inline bool physical_4x4(const Eigen::Matrix4d& v, double tol = 1e-12) {
  Eigen::Matrix4cd h = v.cast<std::complex<double>>();
  const std::complex<double> i4(0.0, 0.25);
  h(0, 1) += i4;
  h(1, 0) -= i4;
  h(2, 3) += i4;
  h(3, 2) -= i4;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  return es.eigenvalues().minCoeff() >= -tol;
}

inline Eigen::Matrix4d x_form(double a, double b, double c) {
  Eigen::Matrix4d v;
  v << a, 0, 0, c,
       0, b, c, 0,
       0, c, a, 0,
       c, 0, 0, b;
  return v;
}

// Closed-form correlators, written out independently of the library.
struct Abc {
  double a, b, c;
};

inline Abc canonical_abc(double n_rails, double r) {
  const double x = std::exp(-2.0 * r);
  return {(1.0 + x / n_rails) / 4.0, (1.0 + x) / 2.0, 0.25};
}

inline Abc lo_abc(double n_rails, double r) {
  const double x = std::exp(-2.0 * r);
  return {(1.0 + (2.0 * n_rails + 1.0) / n_rails * x) / 4.0, (2.0 + 3.0 * x) / 4.0, (1.0 + x) / 4.0};
}

inline double en_abc(const Abc& v) {
  const double lm = std::abs(std::sqrt(v.a * v.b) - v.c);
  return std::max(0.0, -std::log(4.0 * lm));
}

inline std::mt19937_64 rng(unsigned long long seed) { return std::mt19937_64(seed); }

}  // namespace cvtest
