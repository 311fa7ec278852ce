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

#include "cvcluster/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cvcluster {

namespace {

void accumulate(OperatorExpr::Coefficients& into, const OperatorExpr::Coefficients& from,
                double scale) {
  for (const auto& [id, c] : from) {
    auto [it, inserted] = into.try_emplace(id, scale * c);
    if (!inserted) {
      it->second += scale * c;
      if (it->second == 0.0) into.erase(it);
    } else if (it->second == 0.0) {
      into.erase(it);
    }
  }
}

double lookup(const OperatorExpr::Coefficients& m, ModeId id) {
  auto it = m.find(id);
  return it == m.end() ? 0.0 : it->second;
}

double max_diff(const OperatorExpr::Coefficients& a, const OperatorExpr::Coefficients& b) {
  double worst = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      worst = std::max(worst, std::abs(ia->second));
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      worst = std::max(worst, std::abs(ib->second));
      ++ib;
    } else {
      worst = std::max(worst, std::abs(ia->second - ib->second));
      ++ia;
      ++ib;
    }
  }
  return worst;
}

// sum_k x[k] * y[k] over the common keys.
template <typename F>
double merge_dot(const OperatorExpr::Coefficients& x, const OperatorExpr::Coefficients& y,
                 F weight) {
  double total = 0.0;
  auto ix = x.begin();
  auto iy = y.begin();
  while (ix != x.end() && iy != y.end()) {
    if (ix->first < iy->first) {
      ++ix;
    } else if (iy->first < ix->first) {
      ++iy;
    } else {
      total += ix->second * iy->second * weight(ix->first);
      ++ix;
      ++iy;
    }
  }
  return total;
}

}  // namespace

double BaseMode::variance_q() const {
  if (const auto* s = std::get_if<SqueezedVacuum>(&kind)) return std::exp(2.0 * s->r) / 4.0;
  return 0.25;
}

double BaseMode::variance_p() const {
  if (const auto* s = std::get_if<SqueezedVacuum>(&kind)) return std::exp(-2.0 * s->r) / 4.0;
  return 0.25;
}

ModeId ModeRegistry::add(std::string label, ModeKind kind) {
  const ModeId id = static_cast<ModeId>(modes_.size()) + 1;
  modes_.push_back(BaseMode{id, std::move(label), kind});
  return id;
}

ModeId ModeRegistry::add_squeezed(std::string label, double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw RegistryError("squeezing parameter must be finite and >= 0, got " +
                        std::to_string(r));
  }
  return add(std::move(label), SqueezedVacuum{r});
}

ModeId ModeRegistry::add_coherent(std::string label) {
  return add(std::move(label), CoherentInput{});
}

bool ModeRegistry::contains(ModeId id) const {
  return id >= 1 && static_cast<std::size_t>(id) <= modes_.size();
}

const BaseMode& ModeRegistry::mode(ModeId id) const {
  if (!contains(id)) throw RegistryError("unknown mode id " + std::to_string(id));
  return modes_[static_cast<std::size_t>(id - 1)];
}

ModeRegistry ModeRegistry::with_uniform_squeezing(double r) const {
  if (!std::isfinite(r) || r < 0.0) {
    throw RegistryError("squeezing parameter must be finite and >= 0");
  }
  ModeRegistry out = *this;
  for (auto& m : out.modes_) {
    if (auto* s = std::get_if<SqueezedVacuum>(&m.kind)) s->r = r;
  }
  return out;
}

OperatorExpr OperatorExpr::position(ModeId id, double coef) {
  OperatorExpr e;
  if (coef != 0.0) e.q_[id] = coef;
  return e;
}

OperatorExpr OperatorExpr::momentum(ModeId id, double coef) {
  OperatorExpr e;
  if (coef != 0.0) e.p_[id] = coef;
  return e;
}

double OperatorExpr::q_coef(ModeId id) const { return lookup(q_, id); }
double OperatorExpr::p_coef(ModeId id) const { return lookup(p_, id); }

double OperatorExpr::max_abs_coefficient() const {
  double worst = max_abs_position_coefficient();
  for (const auto& [id, c] : p_) worst = std::max(worst, std::abs(c));
  return worst;
}

double OperatorExpr::max_abs_position_coefficient() const {
  double worst = 0.0;
  for (const auto& [id, c] : q_) worst = std::max(worst, std::abs(c));
  return worst;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& other) {
  return add_scaled(other, 1.0);
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& other) {
  return add_scaled(other, -1.0);
}

OperatorExpr& OperatorExpr::operator*=(double s) {
  if (s == 0.0) {
    q_.clear();
    p_.clear();
    return *this;
  }
  for (auto& [id, c] : q_) c *= s;
  for (auto& [id, c] : p_) c *= s;
  return *this;
}

OperatorExpr& OperatorExpr::add_scaled(const OperatorExpr& other, double s) {
  if (s == 0.0) return *this;
  if (&other == this) return *this *= (1.0 + s);
  accumulate(q_, other.q_, s);
  accumulate(p_, other.p_, s);
  return *this;
}

std::string OperatorExpr::to_string(const ModeRegistry* registry) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  auto emit = [&](const Coefficients& m, const char* quad) {
    for (const auto& [id, c] : m) {
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      const double mag = std::abs(c);
      if (mag != 1.0) os << mag << "*";
      os << quad << "[";
      if (registry != nullptr && registry->contains(id)) os << registry->mode(id).label;
      else os << id;
      os << "]";
    }
  };
  emit(q_, "q");
  emit(p_, "p");
  return os.str();
}

double max_abs_diff(const OperatorExpr& a, const OperatorExpr& b) {
  return std::max(max_diff(a.q(), b.q()), max_diff(a.p(), b.p()));
}

bool approx_equal(const OperatorExpr& a, const OperatorExpr& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

double commutator(const OperatorExpr& a, const OperatorExpr& b) {
  auto one = [](ModeId) { return 1.0; };
  return kHbar * (merge_dot(a.q(), b.p(), one) - merge_dot(a.p(), b.q(), one));
}

double commutator(const OperatorExpr& a, const OperatorExpr& b, const ModeRegistry& reg) {
  require_registered(a, reg);
  require_registered(b, reg);
  return commutator(a, b);
}

void require_registered(const OperatorExpr& expr, const ModeRegistry& reg) {
  for (const auto& [id, c] : expr.q()) {
    if (!reg.contains(id)) throw RegistryError("unknown mode id " + std::to_string(id));
  }
  for (const auto& [id, c] : expr.p()) {
    if (!reg.contains(id)) throw RegistryError("unknown mode id " + std::to_string(id));
  }
}

double second_moment(const OperatorExpr& a, const OperatorExpr& b, const ModeRegistry& reg) {
  require_registered(a, reg);
  require_registered(b, reg);
  // Base modes are uncorrelated and have vanishing symmetrized q-p moments.
  const double qq = merge_dot(a.q(), b.q(), [&](ModeId id) { return reg.mode(id).variance_q(); });
  const double pp = merge_dot(a.p(), b.p(), [&](ModeId id) { return reg.mode(id).variance_p(); });
  return qq + pp;
}

}  // namespace cvcluster
