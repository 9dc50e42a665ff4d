#include <doctest.h>

#include "gossipsim/spanner.hpp"
#include "test_support.hpp"

using namespace gossipsim;

namespace {

SuperstepReport traced_superstep(const Graph& g, std::uint64_t seed) {
  SuperstepOptions opts;
  opts.record_traces = true;
  return superstep(g, RandomSource(seed), opts);
}

}  // namespace

TEST_CASE("extract_spanner on a single edge") {
  const Graph pair = make_path(2);
  const SuperstepReport rep = traced_superstep(pair, 4);
  const SpannerResult s = extract_spanner(pair, rep);
  CHECK(s.subgraph.edge_count() == 1);
  CHECK(s.source_rounds == 2 * rep.tau);
}

TEST_CASE("extract_spanner keeps the dumbbell bridge") {
  const Graph bell = make_dumbbell(4);
  const SuperstepReport rep = traced_superstep(bell, 11);
  const SpannerResult s = extract_spanner(bell, rep);
  CHECK(s.subgraph.has_edge(3, 4));  // only path between the cliques
  CHECK(s.subgraph.edge_count() <= bell.edge_count());
}

TEST_CASE("extract_spanner guards") {
  const Graph g(4);
  const SpannerResult s = extract_spanner(g, std::span<const ProcessTrace>{}, 0, true);
  CHECK(s.subgraph.edge_count() == 0);

  CHECK_THROWS_AS((void)extract_spanner(g, std::span<const ProcessTrace>{}, 0, false),
                  IncompleteRun);

  SuperstepOptions no_traces;
  const Graph pair = make_path(2);
  const SuperstepReport rep = superstep(pair, RandomSource(1), no_traces);
  CHECK_THROWS_AS((void)extract_spanner(pair, rep), InvalidParams);
}

TEST_CASE("verify_stretch") {
  const Graph c6 = make_cycle(6);
  CHECK(verify_stretch(c6, c6, 1, 0).holds);

  Graph c6_minus(6);
  for (NodeId i = 0; i + 1 < 6; ++i) c6_minus.add_edge(i, i + 1);  // drop edge 5-0
  CHECK(verify_stretch(c6, c6_minus, 5, 0).holds);

  const StretchCheck fails = verify_stretch(c6, c6_minus, 4, 0);
  CHECK_FALSE(fails.holds);
  REQUIRE(fails.worst_pair.has_value());
  CHECK(*fails.worst_pair == std::make_pair(NodeId{0}, NodeId{5}));
  CHECK(fails.worst_distance == doctest::Approx(5.0));

  CHECK_THROWS_AS((void)verify_stretch(c6_minus, c6, 1, 0), NotSubgraph);

  // Additive allowance admits the same subgraph.
  CHECK(verify_stretch(c6, c6_minus, 1, 4).holds);
  // Neighbor-only mode looks at distance-1 pairs only.
  CHECK(verify_stretch(c6, c6_minus, 5, 0, true).holds);
  CHECK_FALSE(verify_stretch(c6, c6_minus, 4, 0, true).holds);
}

TEST_CASE("spanner_density delegates to hereditary density") {
  CHECK(spanner_density(testing::random_tree(12, 3)) == 1);
  CHECK(spanner_density(make_clique(5)) == 2);
}

TEST_CASE("extracted spanners satisfy the stretch and density bounds") {
  const std::vector<Graph> corpus = {
      make_clique(16), make_dumbbell(6), make_star(12),
      testing::random_graph(24, 0.2, 5), make_cycle(12),
  };
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Graph& g = corpus[i];
    const SuperstepReport rep = traced_superstep(g, 100 + i);
    SpannerResult s = extract_spanner(g, rep);
    REQUIRE(certify_spanner(g, s));
    REQUIRE(s.certified_stretch.has_value());
    const double t = static_cast<double>(s.source_rounds);
    CHECK(s.certified_stretch->first <= t);
    CHECK(s.density <= static_cast<int>(s.source_rounds));
    CHECK(verify_stretch(g, s.subgraph, t, 0, true).holds);
    CHECK(verify_stretch(g, s.subgraph, t, 0).holds);  // pair stretch follows
  }
}

TEST_CASE("certify_spanner refuses a disconnected extraction") {
  const Graph bell = make_dumbbell(3);
  Graph no_bridge(6);
  for (NodeId base : {NodeId{0}, NodeId{3}})
    for (NodeId i = 0; i < 3; ++i)
      for (NodeId j = i + 1; j < 3; ++j) no_bridge.add_edge(base + i, base + j);
  SpannerResult s;
  s.subgraph = no_bridge;
  s.source_rounds = 10;
  CHECK_FALSE(certify_spanner(bell, s));
  CHECK_FALSE(s.certified_stretch.has_value());
}
