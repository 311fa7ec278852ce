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

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cvcluster {

using NodeId = int;

class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected cluster graph on nodes 1..M with named input attachments and an
/// optional ordered pair of output nodes (mu, nu).
class ClusterSpec {
 public:
  using Edge = std::pair<NodeId, NodeId>;

  ClusterSpec(int node_count, const std::vector<Edge>& edges,
              std::map<std::string, NodeId> inputs = {},
              std::optional<std::pair<NodeId, NodeId>> outputs = std::nullopt);

  int node_count() const { return node_count_; }
  const std::set<NodeId>& neighbors(NodeId k) const;
  int degree(NodeId k) const { return static_cast<int>(neighbors(k).size()); }
  bool adjacent(NodeId k, NodeId l) const;
  /// Edges as (k, l) with k < l, sorted.
  std::vector<Edge> edges() const;

  const std::map<std::string, NodeId>& inputs() const { return inputs_; }
  NodeId input_node(const std::string& label) const;
  const std::optional<std::pair<NodeId, NodeId>>& outputs() const { return outputs_; }

  /// Same graph, different attachments.
  ClusterSpec with_attachments(std::map<std::string, NodeId> inputs,
                               std::optional<std::pair<NodeId, NodeId>> outputs) const;

  /// 0/1 adjacency matrix, row/column k-1 for node k.
  Eigen::MatrixXd adjacency_matrix() const;

  friend bool operator==(const ClusterSpec&, const ClusterSpec&) = default;

 private:
  void check_node(NodeId k, const char* what) const;

  int node_count_ = 0;
  std::vector<std::set<NodeId>> adjacency_;
  std::map<std::string, NodeId> inputs_;
  std::optional<std::pair<NodeId, NodeId>> outputs_;
};

/// Path 1-2-...-M. For even M >= 2 the inputs alpha, beta attach to the two
/// central nodes and the outputs are (1, M).
ClusterSpec linear_chain(int node_count);

/// Two-arm N-rail cluster on 2N+4 nodes. Node 1 and node N+2 are joined
/// through the mid-rails 2..N+1; likewise N+3 and 2N+4 through N+4..2N+3;
/// N+2 and N+3 are joined directly. alpha -> N+2, beta -> N+3, outputs (1, 2N+4).
ClusterSpec nrail(int rails);

/// Mid-rail nodes of one arm of nrail(rails): arm 0 is 2..N+1, arm 1 is N+4..2N+3.
std::vector<NodeId> nrail_mid_rails(int rails, int arm);

/// Degree of k when k == l, otherwise |N_k intersect N_l|.
int common_neighbors(const ClusterSpec& spec, NodeId k, NodeId l);
Eigen::MatrixXi common_neighbor_matrix(const ClusterSpec& spec);

/// Named topologies: "L<M>" linear chain, "<N>R" or "nrail:<N>" N-rail.
ClusterSpec topology_by_name(const std::string& name);

}  // namespace cvcluster
