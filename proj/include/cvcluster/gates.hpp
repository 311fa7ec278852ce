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

#include <span>
#include <utility>
#include <vector>

#include "cvcluster/network.hpp"
#include "cvcluster/quadrature.hpp"

namespace cvcluster {

/// Heisenberg-picture quadratures of one labeled mode.
struct ModeState {
  OperatorExpr q;
  OperatorExpr p;

  static ModeState base(ModeId id) {
    return {OperatorExpr::position(id), OperatorExpr::momentum(id)};
  }
  friend bool operator==(const ModeState&, const ModeState&) = default;
};

enum class FourierDirection { Forward, Inverse };

/// Symmetric CZ coupling exp(2i q_a q_b): q unchanged, each p picks up the other q.
std::pair<ModeState, ModeState> apply_qnd(const ModeState& a, const ModeState& b);

/// 50:50 beam splitter with rows (1, 1)/sqrt2 and (1, -1)/sqrt2.
/// first = (a + b)/sqrt2, second = (a - b)/sqrt2.
std::pair<ModeState, ModeState> apply_beamsplitter_5050(const ModeState& a, const ModeState& b);

/// Forward F: (q, p) -> (-p, q). Inverse: (q, p) -> (p, -q).
ModeState apply_fourier(const ModeState& a, FourierDirection direction = FourierDirection::Forward);

/// Maps seeds through U = A + iB:
///   q_k = sum_l (A_kl q_l - B_kl p_l),  p_k = sum_l (A_kl p_l + B_kl q_l).
/// Throws std::invalid_argument on a size mismatch. Unitarity is the caller's concern.
std::vector<ModeState> apply_network(const UMatrix& u, std::span<const ModeState> seeds);

}  // namespace cvcluster
