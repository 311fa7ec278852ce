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

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cvcluster {

using ModeId = int;

// Quadratures are q = (a + a^dag)/2 and p = (a - a^dag)/(2i), so [q, p] = i/2.
inline constexpr double kHbar = 0.5;

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SqueezedVacuum {
  double r = 0.0;
};

struct CoherentInput {};

using ModeKind = std::variant<SqueezedVacuum, CoherentInput>;

struct BaseMode {
  ModeId id = 0;
  std::string label;
  ModeKind kind;

  double variance_q() const;
  double variance_p() const;
  bool is_squeezed() const { return std::holds_alternative<SqueezedVacuum>(kind); }
};

/// Ordered set of independent base modes. Ids are assigned sequentially from 1,
/// so the first M squeezed seeds of a cluster carry the node numbers 1..M.
class ModeRegistry {
 public:
  ModeId add_squeezed(std::string label, double r);
  ModeId add_coherent(std::string label);

  bool contains(ModeId id) const;
  const BaseMode& mode(ModeId id) const;
  std::size_t size() const { return modes_.size(); }
  const std::vector<BaseMode>& modes() const { return modes_; }

  /// Copy with every squeezed seed set to the same parameter r.
  ModeRegistry with_uniform_squeezing(double r) const;

 private:
  ModeId add(std::string label, ModeKind kind);
  std::vector<BaseMode> modes_;
};

/// Real linear combination of base-mode quadratures: sum_l (q_l qbar_l + p_l pbar_l).
/// Coefficients that cancel to exactly zero are dropped, so == is exact
/// coefficient-wise equality.
class OperatorExpr {
 public:
  using Coefficients = std::map<ModeId, double>;

  OperatorExpr() = default;

  static OperatorExpr position(ModeId id, double coef = 1.0);
  static OperatorExpr momentum(ModeId id, double coef = 1.0);

  const Coefficients& q() const { return q_; }
  const Coefficients& p() const { return p_; }
  double q_coef(ModeId id) const;
  double p_coef(ModeId id) const;

  bool is_zero() const { return q_.empty() && p_.empty(); }
  double max_abs_coefficient() const;
  /// Largest |coefficient| on any position quadrature.
  double max_abs_position_coefficient() const;

  OperatorExpr& operator+=(const OperatorExpr& other);
  OperatorExpr& operator-=(const OperatorExpr& other);
  OperatorExpr& operator*=(double s);
  /// this += s * other, without a temporary.
  OperatorExpr& add_scaled(const OperatorExpr& other, double s);

  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend OperatorExpr operator*(OperatorExpr a, double s) { return a *= s; }
  friend OperatorExpr operator*(double s, OperatorExpr a) { return a *= s; }
  friend OperatorExpr operator-(OperatorExpr a) { return a *= -1.0; }
  friend bool operator==(const OperatorExpr&, const OperatorExpr&) = default;

  std::string to_string(const ModeRegistry* registry = nullptr) const;

 private:
  Coefficients q_;
  Coefficients p_;
};

/// Largest coefficient-wise |a - b|.
double max_abs_diff(const OperatorExpr& a, const OperatorExpr& b);
bool approx_equal(const OperatorExpr& a, const OperatorExpr& b, double tol = 1e-12);

/// c such that [A, B] = i c.
double commutator(const OperatorExpr& a, const OperatorExpr& b);
/// Same, after checking that every referenced mode is registered.
double commutator(const OperatorExpr& a, const OperatorExpr& b, const ModeRegistry& reg);

/// <{dA, dB}>/2 over the product state of the registry.
double second_moment(const OperatorExpr& a, const OperatorExpr& b, const ModeRegistry& reg);

/// Throws RegistryError if expr references an id unknown to reg.
void require_registered(const OperatorExpr& expr, const ModeRegistry& reg);

}  // namespace cvcluster
