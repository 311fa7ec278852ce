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

#include <limits>

#include <Eigen/Dense>

namespace cvcluster {

/// Square complex matrix a_k = sum_l U_kl abar_l of a passive linear-optical network.
class UMatrix {
 public:
  UMatrix() = default;
  explicit UMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {}

  const Eigen::MatrixXcd& matrix() const { return entries_; }
  Eigen::MatrixXd real_part() const { return entries_.real(); }
  Eigen::MatrixXd imag_part() const { return entries_.imag(); }
  Eigen::Index size() const { return entries_.rows(); }

  /// max_ij |(U^dag U - I)_ij|
  double unitarity_residual() const {
    const Eigen::Index n = entries_.rows();
    if (n != entries_.cols()) return std::numeric_limits<double>::infinity();
    return (entries_.adjoint() * entries_ - Eigen::MatrixXcd::Identity(n, n))
        .cwiseAbs()
        .maxCoeff();
  }

 private:
  Eigen::MatrixXcd entries_;
};

}  // namespace cvcluster
