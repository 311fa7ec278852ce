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

#include <random>
#include <set>

#include "cvcluster/topology.hpp"
#include "oracles.hpp"

namespace cvcluster {
namespace {

TEST(ClusterSpec, RejectsBadNodes) {
  EXPECT_THROW(ClusterSpec(0, {}), TopologyError);
  EXPECT_THROW(ClusterSpec(3, {{1, 4}}), TopologyError);
  EXPECT_THROW(ClusterSpec(3, {{2, 2}}), TopologyError);
  EXPECT_THROW(ClusterSpec(3, {{1, 2}}, {{"alpha", 5}}), TopologyError);
  EXPECT_THROW(ClusterSpec(3, {{1, 2}}, {}, std::pair{1, 0}), TopologyError);
}

TEST(ClusterSpec, DuplicateEdgesCollapse) {
  const ClusterSpec s(3, {{1, 2}, {2, 1}, {2, 3}});
  EXPECT_EQ(s.edges().size(), 2u);
  EXPECT_EQ(s.degree(2), 2);
  EXPECT_TRUE(s.adjacent(3, 2));
  EXPECT_FALSE(s.adjacent(1, 3));
}

TEST(ClusterSpec, InputLookup) {
  const ClusterSpec s = linear_chain(4);
  EXPECT_EQ(s.input_node("alpha"), 2);
  EXPECT_EQ(s.input_node("beta"), 3);
  EXPECT_THROW(s.input_node("gamma"), TopologyError);
  ASSERT_TRUE(s.outputs().has_value());
  EXPECT_EQ(*s.outputs(), (std::pair{1, 4}));
  const ClusterSpec ends = s.with_attachments({{"alpha", 1}, {"beta", 4}}, std::pair{2, 3});
  EXPECT_EQ(ends.edges(), s.edges());
  EXPECT_EQ(ends.input_node("alpha"), 1);
  EXPECT_FALSE(ends == s);
}

TEST(LinearChain, Path) {
  const ClusterSpec s = linear_chain(6);
  EXPECT_EQ(s.node_count(), 6);
  EXPECT_EQ(s.edges().size(), 5u);
  EXPECT_EQ(s.degree(1), 1);
  EXPECT_EQ(s.degree(3), 2);
  EXPECT_EQ(s.input_node("alpha"), 3);
  EXPECT_EQ(s.input_node("beta"), 4);
  EXPECT_TRUE(linear_chain(5).inputs().empty());
  EXPECT_THROW(linear_chain(0), TopologyError);
}

TEST(NRail, Shape) {
  for (int n = 1; n <= 12; ++n) {
    const ClusterSpec s = nrail(n);
    EXPECT_EQ(s.node_count(), 2 * n + 4);
    EXPECT_EQ(static_cast<int>(s.edges().size()), 4 * n + 1);
    EXPECT_EQ(s.degree(1), n);
    EXPECT_EQ(s.degree(n + 2), n + 1);
    EXPECT_EQ(s.degree(n + 3), n + 1);
    EXPECT_EQ(s.degree(2 * n + 4), n);
    EXPECT_TRUE(s.adjacent(n + 2, n + 3));
    for (int arm = 0; arm < 2; ++arm) {
      for (NodeId k : nrail_mid_rails(n, arm)) EXPECT_EQ(s.degree(k), 2) << n << " " << k;
    }
    EXPECT_EQ(s.input_node("alpha"), n + 2);
    EXPECT_EQ(s.input_node("beta"), n + 3);
    EXPECT_EQ(*s.outputs(), (std::pair{1, 2 * n + 4}));
  }
  EXPECT_THROW(nrail(0), TopologyError);
  EXPECT_THROW(nrail_mid_rails(2, 2), TopologyError);
}

TEST(NRail, OneRailIsTheSixChain) {
  const ClusterSpec one = nrail(1);
  const ClusterSpec six = linear_chain(6);
  EXPECT_EQ(one.edges(), six.edges());
  EXPECT_EQ(one.inputs(), six.inputs());
  EXPECT_EQ(one.outputs(), six.outputs());
}

TEST(NRail, MidRails) {
  EXPECT_EQ(nrail_mid_rails(3, 0), (std::vector<NodeId>{2, 3, 4}));
  EXPECT_EQ(nrail_mid_rails(3, 1), (std::vector<NodeId>{7, 8, 9}));
}

TEST(CommonNeighbors, MatchesAdjacencySquared) {
  auto gen = cvtest::rng(31);
  std::uniform_int_distribution<int> size(1, 12);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = size(gen);
    std::vector<ClusterSpec::Edge> edges;
    for (int k = 1; k <= m; ++k) {
      for (int l = k + 1; l <= m; ++l) {
        if (coin(gen)) edges.emplace_back(k, l);
      }
    }
    const ClusterSpec s(m, edges);
    const Eigen::MatrixXd a = s.adjacency_matrix();
    const Eigen::MatrixXd a2 = a * a;
    const Eigen::MatrixXi cn = common_neighbor_matrix(s);
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) ASSERT_EQ(cn(k, l), static_cast<int>(a2(k, l)));
    }
  }
}

TEST(CommonNeighbors, NRailMidRailsShareBothHubs) {
  const ClusterSpec s = nrail(3);
  EXPECT_EQ(common_neighbors(s, 2, 3), 2);
  EXPECT_EQ(common_neighbors(s, 1, 5), 3);
  EXPECT_EQ(common_neighbors(s, 1, 10), 0);
  EXPECT_EQ(common_neighbors(s, 5, 5), 4);
}

TEST(TopologyByName, Forms) {
  EXPECT_EQ(topology_by_name("L4"), linear_chain(4));
  EXPECT_EQ(topology_by_name("3R"), nrail(3));
  EXPECT_EQ(topology_by_name("nrail:7"), nrail(7));
  for (const char* bad : {"", "L", "R", "Lx", "2Q", "nrail:", "nrail:-1", "L0", "0R"}) {
    EXPECT_THROW(topology_by_name(bad), TopologyError) << bad;
  }
}

}  // namespace
}  // namespace cvcluster
