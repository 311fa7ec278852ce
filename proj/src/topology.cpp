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

#include "cvcluster/topology.hpp"

#include <algorithm>
#include <charconv>

namespace cvcluster {

ClusterSpec::ClusterSpec(int node_count, const std::vector<Edge>& edges,
                         std::map<std::string, NodeId> inputs,
                         std::optional<std::pair<NodeId, NodeId>> outputs)
    : node_count_(node_count),
      adjacency_(static_cast<std::size_t>(std::max(node_count, 0))),
      inputs_(std::move(inputs)),
      outputs_(outputs) {
  if (node_count < 1) throw TopologyError("cluster needs at least one node");
  for (const auto& [k, l] : edges) {
    check_node(k, "edge endpoint");
    check_node(l, "edge endpoint");
    if (k == l) throw TopologyError("self-loop on node " + std::to_string(k));
    adjacency_[static_cast<std::size_t>(k - 1)].insert(l);
    adjacency_[static_cast<std::size_t>(l - 1)].insert(k);
  }
  for (const auto& [label, node] : inputs_) check_node(node, "input attachment");
  if (outputs_) {
    check_node(outputs_->first, "output node");
    check_node(outputs_->second, "output node");
  }
}

void ClusterSpec::check_node(NodeId k, const char* what) const {
  if (k < 1 || k > node_count_) {
    throw TopologyError(std::string(what) + " " + std::to_string(k) + " outside 1.." +
                        std::to_string(node_count_));
  }
}

const std::set<NodeId>& ClusterSpec::neighbors(NodeId k) const {
  check_node(k, "node");
  return adjacency_[static_cast<std::size_t>(k - 1)];
}

bool ClusterSpec::adjacent(NodeId k, NodeId l) const { return neighbors(k).contains(l); }

std::vector<ClusterSpec::Edge> ClusterSpec::edges() const {
  std::vector<Edge> out;
  for (NodeId k = 1; k <= node_count_; ++k) {
    for (NodeId l : adjacency_[static_cast<std::size_t>(k - 1)]) {
      if (k < l) out.emplace_back(k, l);
    }
  }
  return out;
}

NodeId ClusterSpec::input_node(const std::string& label) const {
  auto it = inputs_.find(label);
  if (it == inputs_.end()) throw TopologyError("no input attachment named '" + label + "'");
  return it->second;
}

ClusterSpec ClusterSpec::with_attachments(
    std::map<std::string, NodeId> inputs,
    std::optional<std::pair<NodeId, NodeId>> outputs) const {
  return ClusterSpec(node_count_, edges(), std::move(inputs), outputs);
}

Eigen::MatrixXd ClusterSpec::adjacency_matrix() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(node_count_, node_count_);
  for (const auto& [k, l] : edges()) {
    a(k - 1, l - 1) = 1.0;
    a(l - 1, k - 1) = 1.0;
  }
  return a;
}

ClusterSpec linear_chain(int node_count) {
  if (node_count < 1) throw TopologyError("linear chain needs at least one node");
  std::vector<ClusterSpec::Edge> edges;
  for (NodeId k = 1; k < node_count; ++k) edges.emplace_back(k, k + 1);
  if (node_count >= 2 && node_count % 2 == 0) {
    const NodeId mid = node_count / 2;
    return ClusterSpec(node_count, edges, {{"alpha", mid}, {"beta", mid + 1}},
                       std::pair{1, node_count});
  }
  return ClusterSpec(node_count, edges);
}

ClusterSpec nrail(int rails) {
  if (rails < 1) throw TopologyError("N-rail cluster needs N >= 1, got " + std::to_string(rails));
  const int n = rails;
  std::vector<ClusterSpec::Edge> edges;
  for (NodeId k = 2; k <= n + 1; ++k) {
    edges.emplace_back(1, k);
    edges.emplace_back(k, n + 2);
  }
  edges.emplace_back(n + 2, n + 3);
  for (NodeId k = n + 4; k <= 2 * n + 3; ++k) {
    edges.emplace_back(n + 3, k);
    edges.emplace_back(k, 2 * n + 4);
  }
  return ClusterSpec(2 * n + 4, edges, {{"alpha", n + 2}, {"beta", n + 3}},
                     std::pair{1, 2 * n + 4});
}

std::vector<NodeId> nrail_mid_rails(int rails, int arm) {
  if (rails < 1) throw TopologyError("N-rail cluster needs N >= 1");
  if (arm != 0 && arm != 1) throw TopologyError("arm must be 0 or 1");
  std::vector<NodeId> out;
  const NodeId first = arm == 0 ? 2 : rails + 4;
  for (int j = 0; j < rails; ++j) out.push_back(first + j);
  return out;
}

int common_neighbors(const ClusterSpec& spec, NodeId k, NodeId l) {
  const auto& nk = spec.neighbors(k);
  if (k == l) return static_cast<int>(nk.size());
  const auto& nl = spec.neighbors(l);
  int count = 0;
  for (NodeId m : nk) count += nl.contains(m) ? 1 : 0;
  return count;
}

Eigen::MatrixXi common_neighbor_matrix(const ClusterSpec& spec) {
  const int m = spec.node_count();
  Eigen::MatrixXi out(m, m);
  for (NodeId k = 1; k <= m; ++k) {
    for (NodeId l = k; l <= m; ++l) {
      out(k - 1, l - 1) = out(l - 1, k - 1) = common_neighbors(spec, k, l);
    }
  }
  return out;
}

namespace {

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

ClusterSpec topology_by_name(const std::string& name) {
  std::string_view s = name;
  if (s.size() > 1 && (s.front() == 'L' || s.front() == 'l')) {
    if (auto m = parse_int(s.substr(1))) return linear_chain(*m);
  }
  if (s.size() > 1 && (s.back() == 'R' || s.back() == 'r')) {
    if (auto n = parse_int(s.substr(0, s.size() - 1))) return nrail(*n);
  }
  if (s.starts_with("nrail:")) {
    if (auto n = parse_int(s.substr(6))) return nrail(*n);
  }
  throw TopologyError("unknown topology '" + name + "' (expected L<M>, <N>R or nrail:<N>)");
}

}  // namespace cvcluster
