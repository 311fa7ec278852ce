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

#include "cvcluster/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvcluster {

std::pair<ModeState, ModeState> apply_qnd(const ModeState& a, const ModeState& b) {
  ModeState a_out{a.q, a.p + b.q};
  ModeState b_out{b.q, b.p + a.q};
  return {std::move(a_out), std::move(b_out)};
}

std::pair<ModeState, ModeState> apply_beamsplitter_5050(const ModeState& a, const ModeState& b) {
  const double h = 1.0 / std::sqrt(2.0);
  ModeState sum{(a.q + b.q) * h, (a.p + b.p) * h};
  ModeState diff{(a.q - b.q) * h, (a.p - b.p) * h};
  return {std::move(sum), std::move(diff)};
}

ModeState apply_fourier(const ModeState& a, FourierDirection direction) {
  if (direction == FourierDirection::Forward) return {-a.p, a.q};
  return {a.p, -a.q};
}

std::vector<ModeState> apply_network(const UMatrix& u, std::span<const ModeState> seeds) {
  const Eigen::MatrixXcd& m = u.matrix();
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.cols()) != seeds.size()) {
    throw std::invalid_argument("network of size " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + " applied to " +
                                std::to_string(seeds.size()) + " seeds");
  }
  std::vector<ModeState> out(seeds.size());
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    ModeState& mode = out[static_cast<std::size_t>(k)];
    for (Eigen::Index l = 0; l < m.cols(); ++l) {
      const double re = m(k, l).real();
      const double im = m(k, l).imag();
      const ModeState& seed = seeds[static_cast<std::size_t>(l)];
      mode.q.add_scaled(seed.q, re).add_scaled(seed.p, -im);
      mode.p.add_scaled(seed.p, re).add_scaled(seed.q, im);
    }
  }
  return out;
}

}  // namespace cvcluster
