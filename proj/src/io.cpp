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

#include "cvcluster/io.hpp"

#include <cstdio>

namespace cvcluster {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json topology_to_json(const ClusterSpec& spec) {
  json edges = json::array();
  for (const auto& [k, l] : spec.edges()) edges.push_back({k, l});
  json inputs = json::object();
  for (const auto& [label, node] : spec.inputs()) inputs[label] = node;
  json doc = {{"nodes", spec.node_count()}, {"edges", edges}, {"inputs", inputs}};
  if (spec.outputs()) {
    doc["outputs"] = {spec.outputs()->first, spec.outputs()->second};
  } else {
    doc["outputs"] = nullptr;
  }
  return doc;
}

ClusterSpec topology_from_json(const json& doc) {
  try {
    const int nodes = doc.at("nodes").get<int>();
    std::vector<ClusterSpec::Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw TopologyError("each edge must be a pair of node ids");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::map<std::string, NodeId> inputs;
    if (doc.contains("inputs")) {
      for (const auto& [label, node] : doc.at("inputs").items()) inputs[label] = node.get<int>();
    }
    std::optional<std::pair<NodeId, NodeId>> outputs;
    if (doc.contains("outputs") && !doc.at("outputs").is_null()) {
      const auto& o = doc.at("outputs");
      if (!o.is_array() || o.size() != 2) throw TopologyError("outputs must be a pair of node ids");
      outputs = std::pair{o[0].get<int>(), o[1].get<int>()};
    }
    return ClusterSpec(nodes, edges, std::move(inputs), outputs);
  } catch (const json::exception& e) {
    throw TopologyError(std::string("malformed topology document: ") + e.what());
  }
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? ",c" : "c") + std::to_string(j + 1);
  out += "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? "," : "") + format_double(m(i, j));
    out += "\n";
  }
  return out;
}

std::string matrix_to_csv(const Eigen::MatrixXcd& m) {
  std::string out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const std::string k = std::to_string(j + 1);
    out += (j ? ",re_" : "re_") + k + ",im_" + k;
  }
  out += "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out += (j ? "," : "") + format_double(m(i, j).real()) + "," + format_double(m(i, j).imag());
    }
    out += "\n";
  }
  return out;
}

json scenarios_to_json(const std::vector<Scenario>& scenarios) {
  json out = json::array();
  for (const auto& s : scenarios) {
    out.push_back({{"name", s.name},
                   {"family", to_string(s.family)},
                   {"topology", topology_to_json(s.spec)},
                   {"measured", s.measured},
                   {"output_modes", s.output_modes},
                   {"corrections", correction_recipe(s)}});
  }
  return out;
}

}  // namespace cvcluster
