#include <cmath>
#include <doctest.h>

#include "gossipsim/decompose.hpp"
#include "test_support.hpp"

using namespace gossipsim;

TEST_CASE("find_sparse_cut on the dumbbell") {
  const Graph bell = make_dumbbell(4);
  const auto cut = find_sparse_cut(bell, VertexSet::all(8), 0.2);
  REQUIRE(cut.has_value());
  CHECK(cut->certified);
  CHECK(cut->cut_volume == doctest::Approx(13.0));
  CHECK(cut->conductance == doctest::Approx(1.0 / 13.0));
  // Both clique sides tie at volume 13; the lexicographically smaller wins.
  CHECK(cut->cut == VertexSet{0, 1, 2, 3});
}

TEST_CASE("find_sparse_cut finds nothing on K4 at xi=0.5") {
  const Graph k4 = make_clique(4);
  CHECK_FALSE(find_sparse_cut(k4, VertexSet::all(4), 0.5).has_value());
  // The best cut of K4 has conductance 2/3, so xi=0.7 admits it.
  const auto cut = find_sparse_cut(k4, VertexSet::all(4), 0.7);
  REQUIRE(cut.has_value());
  CHECK(cut->conductance == doctest::Approx(2.0 / 3.0));
  CHECK(cut->cut.size() == 2);
}

TEST_CASE("find_sparse_cut corner cases") {
  const Graph k4 = make_clique(4);
  CHECK_FALSE(find_sparse_cut(k4, VertexSet{0}, 0.9).has_value());
  CHECK_THROWS_AS(
      (void)find_sparse_cut(make_clique(8), VertexSet::all(8), 0.5, ConductanceMode::kExact, 4),
      TooLargeForExact);
  // Two-node edge: either endpoint is eligible when xi >= 1 is allowed.
  const Graph edge = make_path(2);
  const auto cut = find_sparse_cut(edge, VertexSet::all(2), 1.0);
  REQUIRE(cut.has_value());
  CHECK(cut->cut == VertexSet{0});
  CHECK(cut->conductance == doctest::Approx(1.0));
}

TEST_CASE("cluster keeps K4 whole") {
  const Graph k4 = make_clique(4);
  const ClusterPartition p = cluster(k4, VertexSet::all(4), 0.5);
  REQUIRE(p.clusters.size() == 1);
  CHECK(p.clusters[0].members == VertexSet::all(4));
  CHECK(p.total_cut_weight == 0.0);
  CHECK(p.recursion_depth == 0);
}

TEST_CASE("cluster splits disconnected components for free") {
  Graph two_k3(6);
  for (NodeId base : {NodeId{0}, NodeId{3}})
    for (NodeId i = 0; i < 3; ++i)
      for (NodeId j = i + 1; j < 3; ++j) two_k3.add_edge(base + i, base + j);
  const ClusterPartition p = cluster(two_k3, VertexSet::all(6), 0.3);
  CHECK(p.clusters.size() == 2);
  CHECK(p.total_cut_weight == 0.0);
  for (const auto& info : p.clusters) CHECK(info.members.size() == 3);
}

TEST_CASE("cluster of a single node") {
  Graph lone(1);
  const ClusterPartition p = cluster(lone, VertexSet::all(1), 0.5);
  REQUIRE(p.clusters.size() == 1);
  CHECK(p.clusters[0].members == VertexSet{0});
}

TEST_CASE("cluster rejects sub-unit weights") {
  Graph g(2);
  g.add_edge(0, 1, 0.5);
  CHECK_THROWS_AS((void)cluster(g, VertexSet::all(2), 0.3), InvalidParams);
  CHECK_THROWS_AS((void)cluster(make_path(3), VertexSet::all(3), 1.5), InvalidParams);
}

TEST_CASE("verify_partition accepts singleton partition of an edgeless graph") {
  Graph empty(4);
  ClusterPartition p;
  p.xi = 0.5;
  for (NodeId v = 0; v < 4; ++v) {
    ClusterInfo info;
    info.members = VertexSet{v};
    p.clusters.push_back(info);
  }
  const PartitionCheck check = verify_partition(empty, p, 1.0 / 3.0);
  CHECK(check.disjoint_cover);
  CHECK(check.all_hold);
  for (const auto& row : check.clusters) CHECK(row.vacuous);
}

TEST_CASE("cluster output passes verify_partition on small graphs") {
  const std::vector<Graph> corpus = {
      make_path(6),         make_cycle(7),       make_star(8),
      make_clique(5),       make_dumbbell(4),    testing::random_graph(10, 0.3, 1),
      testing::random_graph(12, 0.25, 2), testing::random_tree(11, 3),
  };
  for (const double zeta : {1.0 / 6.0, 1.0 / 3.0}) {
    for (const auto& g : corpus) {
      const double vol = g.total_volume();
      const double xi = 3.0 * zeta / (std::log(vol) / std::log(4.0 / 3.0));
      const ClusterPartition p = cluster(g, VertexSet::all(g.node_count()), xi);
      const PartitionCheck check = verify_partition(g, p, zeta);
      CHECK(check.disjoint_cover);
      CHECK(check.stored_values_match);
      CHECK(check.all_hold);
      CHECK(p.recursion_depth <= static_cast<std::size_t>(std::log(vol) / std::log(4.0 / 3.0)));
    }
  }
}

TEST_CASE("verify_partition reports honest failures") {
  // A hand-built partition of the dumbbell that cuts straight through one
  // clique: the low-conductance half-clique clusters must fail the bound.
  const Graph bell = make_dumbbell(4);
  ClusterPartition p;
  p.xi = 0.5;
  ClusterInfo a, b;
  a.members = VertexSet{0, 1, 4, 5};
  b.members = VertexSet{2, 3, 6, 7};
  p.clusters = {a, b};
  p.total_cut_weight = cut_weight(bell, p.clusters[0].members, p.clusters[1].members);
  const PartitionCheck check = verify_partition(bell, p, 1.0 / 3.0);
  CHECK(check.disjoint_cover);
  bool some_cluster_failed = false;
  for (const auto& row : check.clusters) some_cluster_failed = some_cluster_failed || !row.holds;
  CHECK(some_cluster_failed);
  CHECK_FALSE(check.all_hold);
}

TEST_CASE("verify_balcut examples") {
  const BalcutCheck k4 = verify_balcut(make_clique(4), VertexSet::all(4), 0.5);
  CHECK_FALSE(k4.max_cut.has_value());
  CHECK(k4.precondition);
  CHECK(k4.phi_remainder == doctest::Approx(2.0 / 3.0));
  CHECK(k4.holds);

  const BalcutCheck star = verify_balcut(make_star(8), VertexSet::all(9), 0.3);
  CHECK_FALSE(star.max_cut.has_value());  // every cut of the star has phi 1
  CHECK(star.precondition);
  CHECK(star.phi_remainder == doctest::Approx(1.0));
  CHECK(star.holds);

  // Two-node graph with xi >= 1: one endpoint is an eligible cut with half
  // the volume, so the precondition does not trigger.
  const BalcutCheck pair = verify_balcut(make_path(2), VertexSet::all(2), 1.0);
  REQUIRE(pair.max_cut.has_value());
  CHECK_FALSE(pair.precondition);
  CHECK(pair.holds);
}

TEST_CASE("balcut assertion on random graphs") {
  int triggered = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 4 + seed % 9;
    const Graph g = testing::random_graph(n, 0.3, seed * 11 + 2);
    for (const double xi : {0.1, 0.2, 0.3}) {
      const BalcutCheck check = verify_balcut(g, VertexSet::all(n), xi);
      CHECK(check.holds);
      triggered += check.precondition;
    }
  }
  CHECK(triggered > 0);
}
