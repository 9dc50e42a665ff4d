#include <bit>
#include <cmath>
#include <doctest.h>
#include <sstream>

#include "gossipsim/graph.hpp"
#include "test_support.hpp"

using namespace gossipsim;

namespace {

// Independent brute-force enumerator for Phi(H): walks every unordered
// bipartition by mask and recomputes volumes and cut weights directly from
// the adjacency, sharing no code with the library implementation.
double brute_force_set_conductance(const Graph& g, const VertexSet& h) {
  const std::vector<NodeId> mem(h.begin(), h.end());
  const std::size_t k = mem.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask + 1 < (1ULL << k); ++mask) {
    std::vector<NodeId> side_a, side_b;
    for (std::size_t i = 0; i < k; ++i)
      ((mask >> i) & 1 ? side_a : side_b).push_back(mem[i]);
    double vol_a = 0, vol_b = 0, cut = 0;
    for (NodeId u : side_a) vol_a += g.weighted_degree(u);
    for (NodeId u : side_b) vol_b += g.weighted_degree(u);
    for (NodeId u : side_a)
      for (NodeId v : side_b) cut += g.edge_weight(u, v);
    if (vol_a <= 0 || vol_b <= 0) continue;
    best = std::min(best, cut / std::min(vol_a, vol_b));
  }
  return best;
}

// Subset-enumeration oracle for hereditary density.
int brute_force_density(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> adj(n, 0);
  for (NodeId u = 0; u < n; ++u)
    for (const auto& [v, w] : g.neighbors(u)) adj[u] |= 1u << v;
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int edges2 = 0;
    int size = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (!((mask >> u) & 1)) continue;
      ++size;
      edges2 += std::popcount(adj[u] & mask);
    }
    const int edges = edges2 / 2;
    best = std::max(best, (edges + size - 1) / size);
  }
  return best;
}

}  // namespace

TEST_CASE("volume basics") {
  const Graph star = make_star(5);
  CHECK(volume(star, VertexSet{0}) == doctest::Approx(5.0));
  CHECK(volume(star, VertexSet::all(star.node_count())) ==
        doctest::Approx(2.0 * star.edge_count()));
  CHECK(volume(star, VertexSet{}) == 0.0);
}

TEST_CASE("volume splits additively") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = testing::random_graph(12, 0.3, seed);
    const VertexSet s = testing::random_subset(12, seed);
    const VertexSet rest = VertexSet::all(12).minus(s);
    CHECK(volume(g, s) + volume(g, rest) == doctest::Approx(g.total_volume()));
  }
}

TEST_CASE("cut_weight definition") {
  const Graph k4 = make_clique(4);
  CHECK(cut_weight(k4, VertexSet{0}, VertexSet{1, 2, 3}) == doctest::Approx(3.0));
  const VertexSet all = VertexSet::all(4);
  CHECK(cut_weight(k4, all, all) == doctest::Approx(k4.total_volume()));
  const Graph path = make_path(3);
  CHECK(cut_weight(path, VertexSet{0}, VertexSet{2}) == 0.0);
}

TEST_CASE("cut_weight counts self-loops once per ordered pair") {
  Graph g(2);
  g.add_edge(0, 1);
  g.add_self_loop_weight(0, 2.0);  // a loop of weight 1 stored as w_uu = 2
  CHECK(cut_weight(g, VertexSet{0}, VertexSet{0}) == doctest::Approx(2.0));
  CHECK(volume(g, VertexSet{0}) == doctest::Approx(3.0));
}

TEST_CASE("cut_conductance") {
  const Graph k4 = make_clique(4);
  CHECK(cut_conductance(k4, VertexSet{0}, VertexSet{1, 2, 3}) == doctest::Approx(1.0));

  const Graph path = make_path(3);
  CHECK(cut_conductance(path, VertexSet{0}, VertexSet{2}) == doctest::Approx(0.0));

  const Graph bell = make_dumbbell(4);
  CHECK(cut_conductance(bell, VertexSet{0, 1, 2, 3}, VertexSet{4, 5, 6, 7}) ==
        doctest::Approx(1.0 / 13.0));

  CHECK_THROWS_AS((void)cut_conductance(path, VertexSet{0, 1}, VertexSet{1, 2}), OverlappingSets);
  Graph lonely(3);
  lonely.add_edge(0, 1);
  CHECK_THROWS_AS((void)cut_conductance(lonely, VertexSet{2}, VertexSet{0}), ZeroVolume);
}

TEST_CASE("set_conductance exact examples") {
  // Expected values frozen from the enumeration oracle below: the balanced
  // K4 split {0,1}|{2,3} has w=4 against min volume 6, and every bipartition
  // of the 3-path has cut weight equal to the smaller side's volume.
  const Graph k4 = make_clique(4);
  CHECK(set_conductance(k4, VertexSet::all(4)).value == doctest::Approx(2.0 / 3.0));
  CHECK(brute_force_set_conductance(k4, VertexSet::all(4)) == doctest::Approx(2.0 / 3.0));

  const Graph path = make_path(3);
  CHECK(set_conductance(path, VertexSet::all(3)).value == doctest::Approx(1.0));
  CHECK(brute_force_set_conductance(path, VertexSet::all(3)) == doctest::Approx(1.0));

  const Graph edge = make_path(2);
  CHECK(set_conductance(edge, VertexSet::all(2)).value == doctest::Approx(1.0));
}

TEST_CASE("set_conductance matches the independent enumerator") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 4 + seed % 7;  // up to 10
    const Graph g = testing::random_graph(n, 0.4, seed);
    const VertexSet h = VertexSet::all(n);
    const double expected = brute_force_set_conductance(g, h);
    const Conductance got = set_conductance(g, h, ConductanceMode::kExact);
    CHECK(got.certified);
    if (std::isinf(expected)) {
      CHECK(std::isinf(got.value));
    } else {
      CHECK(got.value == doctest::Approx(expected));
    }
    // Subsets too.
    const VertexSet sub = testing::random_subset(n, seed);
    if (sub.size() >= 2) {
      const double exp_sub = brute_force_set_conductance(g, sub);
      const Conductance got_sub = set_conductance(g, sub, ConductanceMode::kExact);
      if (std::isinf(exp_sub)) {
        CHECK(std::isinf(got_sub.value));
      } else {
        CHECK(got_sub.value == doctest::Approx(exp_sub));
      }
    }
  }
}

TEST_CASE("set_conductance guards") {
  const Graph g = make_clique(4);
  CHECK_THROWS_AS((void)set_conductance(g, VertexSet{0}), InvalidParams);
  CHECK_THROWS_AS((void)set_conductance(g, VertexSet::all(4), ConductanceMode::kExact, 3),
                  TooLargeForExact);
  // Sweep mode still yields an upper bound on a bigger instance.
  const Graph big = make_dumbbell(12);
  const Conductance sweep = set_conductance(big, VertexSet::all(24), ConductanceMode::kSweep);
  CHECK_FALSE(sweep.certified);
  const double bridge_phi = 1.0 / (12.0 * 11.0 + 1.0);
  CHECK(sweep.value == doctest::Approx(bridge_phi));  // sweep finds the bottleneck cut
}

TEST_CASE("strongly_induced folds boundary weight into loops") {
  const Graph k3 = make_clique(3);
  const Graph h = strongly_induced(k3, VertexSet{0, 1});
  CHECK(h.node_count() == 2);
  CHECK(h.edge_weight(0, 1) == doctest::Approx(1.0));
  CHECK(h.self_loop(0) == doctest::Approx(1.0));
  CHECK(h.self_loop(1) == doctest::Approx(1.0));

  const Graph star = make_star(3);
  const Graph just_center = strongly_induced(star, VertexSet{0});
  CHECK(just_center.node_count() == 1);
  CHECK(just_center.self_loop(0) == doctest::Approx(3.0));
}

TEST_CASE("strongly_induced with U = V is the identity") {
  const Graph g = testing::random_graph(8, 0.4, 7);
  const Graph h = strongly_induced(g, VertexSet::all(8));
  for (NodeId u = 0; u < 8; ++u) {
    CHECK(h.self_loop(u) == g.self_loop(u));
    for (NodeId v = 0; v < 8; ++v) CHECK(h.edge_weight(u, v) == g.edge_weight(u, v));
  }
}

TEST_CASE("strongly_induced preserves volumes and conductance") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 6 + seed % 5;
    const Graph g = testing::random_graph(n, 0.4, seed);
    const VertexSet u = testing::random_subset(n, seed * 31 + 1);
    const Graph h = strongly_induced(g, u);
    // Volume preservation for random subsets of U (ids reindexed in h).
    const std::vector<NodeId> mem(u.begin(), u.end());
    const VertexSet a_local = testing::random_subset(mem.size(), seed * 7 + 3);
    std::vector<NodeId> a_global;
    for (NodeId i : a_local) a_global.push_back(mem[i]);
    CHECK(volume(h, a_local) == doctest::Approx(volume(g, VertexSet(a_global))));
    // Phi_H(U) = Phi_G(U) on small instances.
    if (u.size() >= 2) {
      const double in_g = set_conductance(g, u, ConductanceMode::kExact).value;
      const double in_h =
          set_conductance(h, VertexSet::all(h.node_count()), ConductanceMode::kExact).value;
      if (std::isinf(in_g)) {
        CHECK(std::isinf(in_h));
      } else {
        CHECK(in_h == doctest::Approx(in_g));
      }
    }
  }
}

TEST_CASE("hereditary_density examples") {
  CHECK(hereditary_density(make_path(6)) == 1);
  CHECK(hereditary_density(make_star(9)) == 1);
  CHECK(hereditary_density(make_clique(5)) == 2);
  CHECK(hereditary_density(Graph(4)) == 0);
  CHECK(hereditary_density(make_clique(4)) == 2);  // C(4,2)=6 > 4
}

TEST_CASE("hereditary_density matches subset enumeration") {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 100; ++seed) {
    const std::size_t n = 4 + seed % 9;  // up to 12
    const Graph g = testing::random_graph(n, 0.35, seed ^ 0xd1ce);
    CHECK(hereditary_density(g) == brute_force_density(g));
    ++checked;
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph t = testing::random_tree(10, seed);
    CHECK(hereditary_density(t) == 1);
  }
}

TEST_CASE("generators") {
  const Graph star = make_star(5);
  CHECK(star.node_count() == 6);
  CHECK(star.edge_count() == 5);

  const Graph bell = make_dumbbell(4);
  CHECK(bell.node_count() == 8);
  CHECK(bell.edge_count() == 13);

  const Graph fig = make_figure1(100);
  // hubs + 7 z nodes + 100 u nodes + four attached 2-cliques per u node
  CHECK(fig.node_count() == 2 + 7 + 100 + 800);
  CHECK(fig.edge_count() == 2 * 107 + 100 * 12);
  CHECK_FALSE(fig.has_edge(0, 1));
  for (NodeId x = 2; x < 2 + 7; ++x) CHECK(fig.degree(x) == 2);      // z layer
  for (NodeId u = 9; u < 9 + 100; ++u) CHECK(fig.degree(u) == 10);   // u layer

  const Graph er1 = make_erdos_renyi(40, 0.2, 9);
  const Graph er2 = make_erdos_renyi(40, 0.2, 9);
  CHECK(er1.edge_count() == er2.edge_count());
  for (NodeId u = 0; u < 40; ++u)
    for (const auto& [v, w] : er1.neighbors(u)) CHECK(er2.has_edge(u, v));

  CHECK_THROWS_AS((void)make_star(0), InvalidParams);
  CHECK_THROWS_AS((void)make_erdos_renyi(10, 1.5, 0), InvalidParams);
  CHECK_THROWS_AS((void)make_cycle(2), InvalidParams);
}

TEST_CASE("graph guards") {
  Graph g(3);
  g.add_edge(0, 1);
  CHECK_THROWS_AS(g.add_edge(1, 0), InvalidParams);
  CHECK_THROWS_AS(g.add_edge(1, 1), InvalidParams);
  CHECK_THROWS_AS(g.add_edge(0, 5), InvalidParams);
  CHECK_THROWS_AS(g.add_edge(0, 2, 0.0), InvalidParams);
}

TEST_CASE("bfs and diameter") {
  const Graph path = make_path(5);
  const auto dist = bfs_distances(path, 0);
  CHECK(dist == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
  CHECK(diameter(path) == 4);
  CHECK(is_connected(path));

  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_FALSE(is_connected(split));
  CHECK_THROWS_AS((void)diameter(split), Disconnected);
}

TEST_CASE("file format round trip") {
  const Graph bell = make_dumbbell(3);
  std::stringstream buf;
  write_graph(bell, buf, "dumbbell(3)");
  const Graph back = parse_graph(buf);
  CHECK(back.node_count() == bell.node_count());
  CHECK(back.edge_count() == bell.edge_count());
  for (NodeId u = 0; u < bell.node_count(); ++u)
    for (const auto& [v, w] : bell.neighbors(u)) CHECK(back.edge_weight(u, v) == w);
}

TEST_CASE("file format accepts comments, weights and loops") {
  std::stringstream in(
      "# a comment\n"
      "\n"
      "3 3\n"
      "0 1 2.5\n"
      "1 2   # trailing comment\n"
      "0 0 4\n");
  const Graph g = parse_graph(in);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_weight(0, 1) == doctest::Approx(2.5));
  CHECK(g.edge_weight(1, 2) == doctest::Approx(1.0));
  CHECK(g.self_loop(0) == doctest::Approx(4.0));
}

TEST_CASE("file format diagnostics") {
  std::stringstream missing("0 1\n");
  CHECK_THROWS_AS((void)parse_graph(missing), ParseError);

  std::stringstream out_of_range("2 1\n0 5\n");
  CHECK_THROWS_AS((void)parse_graph(out_of_range), ParseError);

  std::stringstream wrong_count("3 2\n0 1\n");
  CHECK_THROWS_AS((void)parse_graph(wrong_count), ParseError);

  std::stringstream junk("3 1\nzero one\n");
  CHECK_THROWS_AS((void)parse_graph(junk), ParseError);
}

TEST_CASE("writer emits edges with u < v") {
  const Graph g = make_cycle(4);
  std::stringstream buf;
  write_graph(g, buf);
  std::string line;
  std::getline(buf, line);  // header
  while (std::getline(buf, line)) {
    std::istringstream fields(line);
    NodeId u, v;
    fields >> u >> v;
    CHECK(u < v);
  }
}
