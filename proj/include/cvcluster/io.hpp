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

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cvcluster/network.hpp"
#include "cvcluster/teleport.hpp"
#include "cvcluster/topology.hpp"

namespace cvcluster {

/// {"nodes": M, "edges": [[k, l], ...], "inputs": {"alpha": k, ...}, "outputs": [mu, nu]}
nlohmann::json topology_to_json(const ClusterSpec& spec);
/// Throws TopologyError on malformed documents.
ClusterSpec topology_from_json(const nlohmann::json& doc);

/// Row-major nested arrays; complex entries as [re, im].
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);

/// One CSV row per matrix row, 17 significant digits. Complex matrices get
/// paired columns re_1, im_1, re_2, im_2, ...
std::string matrix_to_csv(const Eigen::MatrixXd& m);
std::string matrix_to_csv(const Eigen::MatrixXcd& m);

/// Name, family, measured quadratures and correction recipe per scenario.
nlohmann::json scenarios_to_json(const std::vector<Scenario>& scenarios);

/// "%.17g"
std::string format_double(double x);

}  // namespace cvcluster
