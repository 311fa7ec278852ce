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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "cvcluster/canonical.hpp"
#include "cvcluster/entanglement.hpp"
#include "oracles.hpp"

namespace cvcluster {
namespace {

TEST(BuildCanonical, NodeQuadratures) {
  const ClusterState s = build_canonical(linear_chain(3), 0.4);
  EXPECT_EQ(s.registry.size(), 3u);
  EXPECT_EQ(s.node(2).q, OperatorExpr::position(2));
  EXPECT_EQ(s.node(2).p, OperatorExpr::momentum(2) + OperatorExpr::position(1) + OperatorExpr::position(3));
  EXPECT_EQ(s.family, ClusterFamily::Canonical);
  EXPECT_THROW(s.node(4), TopologyError);
}

TEST(BuildCanonical, NullifiersAreSeedMomenta) {
  for (const ClusterSpec& spec : {linear_chain(4), linear_chain(6), nrail(2), nrail(3), nrail(7)}) {
    const ClusterState s = build_canonical(spec, 0.9);
    const auto deltas = nullifiers(s);
    for (NodeId k = 1; k <= spec.node_count(); ++k) {
      EXPECT_EQ(deltas[static_cast<std::size_t>(k - 1)], OperatorExpr::momentum(k));
    }
  }
}

TEST(BuildCanonical, PerNodeSqueezing) {
  const std::vector<double> r = {0.1, 0.5, 1.0, 2.0};
  const ClusterState s = build_canonical(linear_chain(4), r);
  const std::vector<NodeId> all = {1, 2, 3, 4};
  const Eigen::MatrixXd c = nullifier_covariance(s, all);
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(c(k, k), std::exp(-2.0 * r[static_cast<std::size_t>(k)]) / 4.0, 1e-15);
    for (int l = 0; l < 4; ++l) {
      if (l != k) EXPECT_EQ(c(k, l), 0.0);
    }
  }
  const std::vector<double> short_r = {0.1};
  EXPECT_THROW(build_canonical(linear_chain(4), short_r), std::invalid_argument);
}

TEST(WeightVector, Validation) {
  EXPECT_NO_THROW(WeightVector({0.25, 0.75}));
  EXPECT_NO_THROW(WeightVector({1.5, -0.5}));
  EXPECT_THROW(WeightVector({0.5, 0.4}), WeightError);
  EXPECT_THROW(WeightVector({}), WeightError);
  const WeightVector u = WeightVector::uniform(4);
  for (double v : u.values()) EXPECT_DOUBLE_EQ(v, 0.25);
  EXPECT_THROW(WeightVector::uniform(0), WeightError);
}

TEST(OptimalWeights, InverseVarianceForDiagonalNoise) {
  const Eigen::Vector3d var(0.2, 0.05, 0.4);
  const WeightVector eta = optimal_weights(var.asDiagonal().toDenseMatrix());
  const Eigen::Vector3d inv = var.cwiseInverse();
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(eta[static_cast<std::size_t>(k)], inv(k) / inv.sum(), 1e-14);
}

TEST(OptimalWeights, Errors) {
  EXPECT_THROW(optimal_weights(Eigen::MatrixXd(2, 3)), WeightError);
  EXPECT_THROW(optimal_weights(Eigen::MatrixXd::Zero(2, 2)), WeightError);
  Eigen::Matrix2d asym;
  asym << 1, 0.2, 0.1, 1;
  EXPECT_THROW(optimal_weights(asym), WeightError);
  Eigen::Matrix2d nan_m = Eigen::Matrix2d::Identity();
  nan_m(0, 0) = std::nan("");
  EXPECT_THROW(optimal_weights(nan_m), WeightError);
}

double quadratic(const Eigen::MatrixXd& c, const std::vector<double>& eta) {
  const Eigen::Map<const Eigen::VectorXd> v(eta.data(), static_cast<Eigen::Index>(eta.size()));
  return v.dot(c * v);
}

TEST(OptimalWeightsProperty, NoUnitSumVectorDoesBetter) {
  auto gen = cvtest::rng(41);
  std::uniform_int_distribution<int> size(1, 6);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(gen);
    Eigen::MatrixXd l(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) l(i, j) = z(gen);
    }
    const Eigen::MatrixXd c = l * l.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
    const WeightVector eta = optimal_weights(c);
    EXPECT_NEAR(std::accumulate(eta.values().begin(), eta.values().end(), 0.0), 1.0, 1e-12);
    const double best = quadratic(c, eta.values());
    for (int k = 0; k < 20; ++k) {
      std::vector<double> d(static_cast<std::size_t>(n));
      for (double& v : d) v = z(gen);
      const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
      std::vector<double> other = eta.values();
      for (std::size_t i = 0; i < other.size(); ++i) other[i] += 0.1 * (d[i] - mean);
      ASSERT_GE(quadratic(c, other), best - 1e-12);
    }
  }
}

TEST(NRailCanonical, CorrelatorsMatchClosedForm) {
  for (int n : {1, 2, 3, 5, 10}) {
    for (double r : {0.0, 0.35, 1.2}) {
      const Correlators c = correlators_from_outputs(nrail_outputs_canonical(n, r));
      const cvtest::Abc o = cvtest::canonical_abc(n, r);
      EXPECT_NEAR(c.a, o.a, 1e-13) << n << " " << r;
      EXPECT_NEAR(c.b, o.b, 1e-13);
      EXPECT_NEAR(c.c, o.c, 1e-13);
    }
  }
}

TEST(NRailCanonical, OutputsAreInputImagesPlusMidRailNoise) {
  const int n = 3;
  const NRailOutputs o = nrail_outputs_canonical(n, 0.7);
  // the CZ image: q_mu ~ q_alpha, p_mu ~ p_alpha + q_beta
  EXPECT_DOUBLE_EQ(std::abs(o.q_mu.q_coef(o.alpha)), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(o.p_mu.p_coef(o.alpha)), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(o.p_mu.q_coef(o.beta)), 1.0);
  for (NodeId k : nrail_mid_rails(n, 0)) EXPECT_NEAR(std::abs(o.q_mu.p_coef(k)), 1.0 / n, 1e-15);
  // no seed position leaks into any output
  for (const OperatorExpr* e : {&o.q_mu, &o.p_mu, &o.q_nu, &o.p_nu}) {
    for (const auto& [id, c] : e->q()) EXPECT_TRUE(id == o.alpha || id == o.beta) << id;
  }
}

TEST(NRailCanonical, PerturbedWeightsAddNoise) {
  auto gen = cvtest::rng(42);
  std::normal_distribution<double> z(0.0, 0.2);
  const int n = 4;
  const double r = 0.6;
  const auto q_mu_noise = [&](const WeightVector& eta) {
    const NRailOutputs o = nrail_outputs_canonical(n, r, eta, WeightVector::uniform(n));
    return second_moment(o.q_mu, o.q_mu, o.registry);
  };
  const double base = q_mu_noise(WeightVector::uniform(n));
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> eta(n);
    double s = 0.0;
    for (double& v : eta) s += v = z(gen);
    for (double& v : eta) v = 1.0 / n + v - s / n;
    EXPECT_GT(q_mu_noise(WeightVector(eta)), base);
  }
  EXPECT_THROW(nrail_outputs_canonical(n, r, WeightVector::uniform(3), WeightVector::uniform(n)), WeightError);
}

TEST(Family, Names) {
  EXPECT_EQ(to_string(ClusterFamily::Canonical), "canonical");
  EXPECT_EQ(to_string(ClusterFamily::LinearOptical), "lo");
  EXPECT_EQ(parse_family("lo"), ClusterFamily::LinearOptical);
  EXPECT_EQ(parse_family("canonical"), ClusterFamily::Canonical);
  EXPECT_THROW(parse_family("optical"), std::invalid_argument);
}

}  // namespace
}  // namespace cvcluster
