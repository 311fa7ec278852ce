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
#include <random>

#include "cvcluster/quadrature.hpp"
#include "oracles.hpp"

namespace cvcluster {
namespace {

TEST(Registry, SequentialIdsAndLabels) {
  ModeRegistry reg;
  EXPECT_EQ(reg.add_squeezed("s1", 0.3), 1);
  EXPECT_EQ(reg.add_squeezed("s2", 0.7), 2);
  EXPECT_EQ(reg.add_coherent("alpha"), 3);
  EXPECT_EQ(reg.size(), 3u);
  EXPECT_EQ(reg.mode(3).label, "alpha");
  EXPECT_TRUE(reg.mode(1).is_squeezed());
  EXPECT_FALSE(reg.mode(3).is_squeezed());
  EXPECT_FALSE(reg.contains(4));
  EXPECT_THROW(reg.mode(0), RegistryError);
}

TEST(Registry, SqueezedAndCoherentVariances) {
  ModeRegistry reg;
  reg.add_squeezed("s", 0.8);
  reg.add_coherent("in");
  EXPECT_NEAR(reg.mode(1).variance_q(), std::exp(1.6) / 4.0, 1e-15);
  EXPECT_NEAR(reg.mode(1).variance_p(), std::exp(-1.6) / 4.0, 1e-15);
  EXPECT_DOUBLE_EQ(reg.mode(2).variance_q(), 0.25);
  EXPECT_DOUBLE_EQ(reg.mode(2).variance_p(), 0.25);
  // product of variances saturates the uncertainty bound
  EXPECT_NEAR(reg.mode(1).variance_q() * reg.mode(1).variance_p(), 1.0 / 16.0, 1e-15);
}

TEST(Registry, UniformSqueezingLeavesInputsAlone) {
  ModeRegistry reg;
  reg.add_squeezed("s1", 0.1);
  reg.add_coherent("alpha");
  reg.add_squeezed("s2", 1.2);
  const ModeRegistry u = reg.with_uniform_squeezing(0.5);
  EXPECT_NEAR(u.mode(1).variance_p(), std::exp(-1.0) / 4.0, 1e-15);
  EXPECT_NEAR(u.mode(3).variance_p(), std::exp(-1.0) / 4.0, 1e-15);
  EXPECT_DOUBLE_EQ(u.mode(2).variance_p(), 0.25);
  EXPECT_EQ(u.mode(2).label, "alpha");
}

TEST(OperatorExpr, CanonicalPair) {
  const auto q = OperatorExpr::position(1);
  const auto p = OperatorExpr::momentum(1);
  EXPECT_DOUBLE_EQ(commutator(q, p), 0.5);
  EXPECT_DOUBLE_EQ(commutator(p, q), -0.5);
  EXPECT_DOUBLE_EQ(commutator(q, q), 0.0);
  EXPECT_DOUBLE_EQ(commutator(q, OperatorExpr::momentum(2)), 0.0);
}

TEST(OperatorExpr, ExactCancellationDropsTerms) {
  OperatorExpr e = OperatorExpr::position(3, 2.0) + OperatorExpr::momentum(4);
  e -= OperatorExpr::position(3, 2.0);
  EXPECT_EQ(e.q().size(), 0u);
  EXPECT_EQ(e, OperatorExpr::momentum(4));
  EXPECT_TRUE((e - e).is_zero());
}

TEST(OperatorExpr, Accessors) {
  const OperatorExpr e = OperatorExpr::position(2, -3.0) + OperatorExpr::momentum(5, 0.5);
  EXPECT_DOUBLE_EQ(e.q_coef(2), -3.0);
  EXPECT_DOUBLE_EQ(e.q_coef(5), 0.0);
  EXPECT_DOUBLE_EQ(e.p_coef(5), 0.5);
  EXPECT_DOUBLE_EQ(e.max_abs_coefficient(), 3.0);
  EXPECT_DOUBLE_EQ(e.max_abs_position_coefficient(), 3.0);
  EXPECT_DOUBLE_EQ(OperatorExpr::momentum(1, 7.0).max_abs_position_coefficient(), 0.0);
}

TEST(OperatorExpr, SecondMomentOfProductState) {
  ModeRegistry reg;
  reg.add_squeezed("s", 0.4);
  reg.add_coherent("c");
  const OperatorExpr e = OperatorExpr::position(1, 2.0) + OperatorExpr::momentum(1, -1.0) +
                         OperatorExpr::position(2, 3.0);
  // q and p of a squeezed vacuum are uncorrelated; cross terms vanish
  const double expected = 4.0 * std::exp(0.8) / 4.0 + std::exp(-0.8) / 4.0 + 9.0 / 4.0;
  EXPECT_NEAR(second_moment(e, e, reg), expected, 1e-14);
  EXPECT_NEAR(second_moment(OperatorExpr::position(1), OperatorExpr::momentum(1), reg), 0.0, 1e-15);
}

TEST(OperatorExpr, UnregisteredModesRejected) {
  ModeRegistry reg;
  reg.add_coherent("a");
  const OperatorExpr bad = OperatorExpr::position(2);
  EXPECT_THROW(require_registered(bad, reg), RegistryError);
  EXPECT_THROW(second_moment(bad, bad, reg), RegistryError);
  EXPECT_THROW(commutator(bad, OperatorExpr::momentum(1), reg), RegistryError);
  EXPECT_NO_THROW(require_registered(OperatorExpr::momentum(1), reg));
}

TEST(OperatorExpr, ToStringNamesModes) {
  ModeRegistry reg;
  reg.add_coherent("alpha");
  const std::string s = (OperatorExpr::position(1) - OperatorExpr::momentum(1, 2.0)).to_string(&reg);
  EXPECT_NE(s.find("alpha"), std::string::npos);
}

OperatorExpr random_expr(std::mt19937_64& gen, int modes) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> count(0, 2 * modes);
  OperatorExpr e;
  const int terms = count(gen);
  std::uniform_int_distribution<int> mode(1, modes);
  for (int t = 0; t < terms; ++t) {
    if (gen() & 1u) {
      e += OperatorExpr::position(mode(gen), coef(gen));
    } else {
      e += OperatorExpr::momentum(mode(gen), coef(gen));
    }
  }
  return e;
}

// Dense (q..., p...) coefficient vector for the symplectic-form oracle.
Eigen::VectorXd dense(const OperatorExpr& e, int modes) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * modes);
  for (const auto& [id, c] : e.q()) v(id - 1) = c;
  for (const auto& [id, c] : e.p()) v(modes + id - 1) = c;
  return v;
}

TEST(OperatorExprProperty, CommutatorMatchesSymplecticForm) {
  auto gen = cvtest::rng(11);
  constexpr int kModes = 5;
  const Eigen::MatrixXd j = cvtest::symplectic_form(kModes);
  for (int trial = 0; trial < 300; ++trial) {
    const OperatorExpr a = random_expr(gen, kModes);
    const OperatorExpr b = random_expr(gen, kModes);
    const double oracle = 0.5 * dense(a, kModes).dot(j * dense(b, kModes));
    ASSERT_NEAR(commutator(a, b), oracle, 1e-12) << "trial " << trial;
    ASSERT_NEAR(commutator(a, b), -commutator(b, a), 1e-15);
  }
}

TEST(OperatorExprProperty, LinearityAndSecondMomentOracle) {
  auto gen = cvtest::rng(12);
  constexpr int kModes = 4;
  ModeRegistry reg;
  std::uniform_real_distribution<double> rr(0.0, 1.5);
  for (int k = 0; k < kModes; ++k) {
    if (k % 2 == 0) {
      reg.add_squeezed("s", rr(gen));
    } else {
      reg.add_coherent("c");
    }
  }
  Eigen::VectorXd var(2 * kModes);
  for (int k = 0; k < kModes; ++k) {
    var(k) = reg.mode(k + 1).variance_q();
    var(kModes + k) = reg.mode(k + 1).variance_p();
  }
  std::uniform_real_distribution<double> sc(-3.0, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    const OperatorExpr a = random_expr(gen, kModes);
    const OperatorExpr b = random_expr(gen, kModes);
    const OperatorExpr c = random_expr(gen, kModes);
    const double s = sc(gen);
    ASSERT_TRUE(approx_equal((a + b) * s, a * s + b * s, 1e-12));
    ASSERT_TRUE(approx_equal(OperatorExpr(a).add_scaled(b, s), a + s * b, 1e-12));
    ASSERT_NEAR(commutator(a + b, c), commutator(a, c) + commutator(b, c), 1e-12);
    const double oracle = (dense(a, kModes).array() * dense(b, kModes).array() * var.array()).sum();
    ASSERT_NEAR(second_moment(a, b, reg), oracle, 1e-12);
    ASSERT_LE(max_abs_diff(a, a), 0.0);
  }
}

}  // namespace
}  // namespace cvcluster
