#include <bit>
#include <doctest.h>
#include <sstream>

#include "gossipsim/engine.hpp"
#include "test_support.hpp"

using namespace gossipsim;

namespace {

MessageId payload(NodeId v) { return MessageId{MessageKind::kPayload, v, 0}; }

}  // namespace

TEST_CASE("sample_activation picks within the frontier") {
  const Graph path = make_path(3);
  DirectedEdgeSet frontier(3);
  frontier.insert(0, 1);
  const RandomSource rng(1);
  const ActivationSet a = sample_activation(path, frontier, rng, 0);
  CHECK(a.choice[0] == 1);
  CHECK(a.choice[1] == ActivationSet::kIdle);
  CHECK(a.choice[2] == ActivationSet::kIdle);
  CHECK(a.active_count() == 1);

  const ActivationSet idle = sample_activation(path, DirectedEdgeSet(3), rng, 0);
  CHECK(idle.active_count() == 0);
}

TEST_CASE("sample_activation is uniform over out-edges") {
  const Graph star = make_star(5);
  const DirectedEdgeSet frontier = DirectedEdgeSet::full(star);
  const RandomSource rng(42);
  std::vector<int> hits(6, 0);
  const int samples = 10000;
  for (int t = 0; t < samples; ++t) {
    const ActivationSet a = sample_activation(star, frontier, rng, t);
    ++hits[a.choice[0]];
  }
  for (NodeId leaf = 1; leaf <= 5; ++leaf) {
    const double freq = static_cast<double>(hits[leaf]) / samples;
    CHECK(freq > 1.0 / 5 - 0.02);
    CHECK(freq < 1.0 / 5 + 0.02);
  }
}

TEST_CASE("symmetric_closure") {
  ActivationSet a(3);
  a.choice[1] = 2;
  const DirectedEdgeSet closure = symmetric_closure(a);
  CHECK(closure.contains(1, 2));
  CHECK(closure.contains(2, 1));
  CHECK(closure.size() == 2);
  CHECK(closure.is_symmetric());

  CHECK(symmetric_closure(ActivationSet(4)).empty());

  ActivationSet both(3);
  both.choice[1] = 2;
  both.choice[2] = 1;
  CHECK(symmetric_closure(both).size() == 2);
}

TEST_CASE("apply_round does one simultaneous hop") {
  const Graph path = make_path(3);
  KnowledgeState state = KnowledgeState::with_payloads(3);
  DirectedEdgeSet closure(3);
  closure.insert(0, 1);
  closure.insert(1, 0);
  const KnowledgeState next = apply_round(state, closure);
  CHECK(next.knows(0, payload(1)));
  CHECK(next.knows(1, payload(0)));
  CHECK_FALSE(next.knows(2, payload(0)));
  CHECK_FALSE(next.knows(0, payload(2)));

  const KnowledgeState same = apply_round(state, DirectedEdgeSet(3));
  for (NodeId u = 0; u < 3; ++u) CHECK(same.known_count(u) == 1);

  DirectedEdgeSet bad(3);
  bad.insert(0, 1);
  CHECK_THROWS_AS((void)apply_round(state, bad), AsymmetricClosure);
}

TEST_CASE("apply_round does not relay within a round") {
  // Triangle with all edges active: everyone learns the neighbors' payloads
  // but nothing propagates two hops in one round.
  const Graph tri = make_cycle(3);
  KnowledgeState state(3);
  state.grant(0, payload(0));  // only node 0 holds a message
  DirectedEdgeSet closure(3);
  for (NodeId u = 0; u < 3; ++u)
    for (NodeId w = 0; w < 3; ++w)
      if (u != w) closure.insert(u, w);
  const KnowledgeState next = apply_round(state, closure);
  CHECK(next.knows(1, payload(0)));
  CHECK(next.knows(2, payload(0)));

  // Path variant: 0-1 and 1-2 both active, 2 must not learn 0's payload.
  KnowledgeState chain = KnowledgeState::with_payloads(3);
  DirectedEdgeSet two(3);
  two.insert(0, 1);
  two.insert(1, 0);
  two.insert(1, 2);
  two.insert(2, 1);
  const KnowledgeState after = apply_round(chain, two);
  CHECK(after.knows(1, payload(0)));
  CHECK(after.knows(1, payload(2)));
  CHECK_FALSE(after.knows(2, payload(0)));
  CHECK_FALSE(after.knows(0, payload(2)));
}

TEST_CASE("knowledge is monotone under rounds") {
  const Graph g = testing::random_graph(12, 0.3, 5);
  const DirectedEdgeSet frontier = DirectedEdgeSet::full(g);
  KnowledgeState state = KnowledgeState::with_payloads(12);
  const RandomSource rng(17);
  for (int t = 0; t < 10; ++t) {
    const ActivationSet a = sample_activation(g, frontier, rng, t);
    const KnowledgeState next = apply_round(state, symmetric_closure(a));
    for (NodeId u = 0; u < 12; ++u) {
      CHECK(next.known_count(u) >= state.known_count(u));
      CHECK(next.knows(u, payload(u)));
    }
    state = next;
  }
}

TEST_CASE("run_process basics") {
  const Graph pair = make_path(2);
  const auto [state0, trace0] =
      run_process(pair, DirectedEdgeSet::full(pair), 0, RandomSource(3));
  CHECK(trace0.length() == 0);
  CHECK(state0.known_count(0) == 1);

  const auto [state1, trace1] =
      run_process(pair, DirectedEdgeSet::full(pair), 1, RandomSource(3));
  CHECK(trace1.length() == 1);
  CHECK(state1.knows(0, payload(1)));
  CHECK(state1.knows(1, payload(0)));
}

TEST_CASE("clique broadcast reaches everyone quickly") {
  const std::size_t n = 64;
  const Graph clique = make_clique(n);
  const DirectedEdgeSet frontier = DirectedEdgeSet::full(clique);
  const std::size_t budget = 4 * 6;  // 4 log2 n
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    KnowledgeState initial(n);
    initial.grant(0, payload(0));
    const auto [state, trace] =
        run_process(clique, frontier, budget, RandomSource(seed), std::move(initial));
    bool all = true;
    for (NodeId u = 0; u < n; ++u) all = all && state.knows(u, payload(0));
    successes += all;
  }
  CHECK(successes >= 29);
}

TEST_CASE("reverse is an involution") {
  const Graph g = testing::random_graph(10, 0.4, 11);
  const auto [state, trace] = run_process(g, DirectedEdgeSet::full(g), 7, RandomSource(5));
  CHECK(reverse(reverse(trace)) == trace);
  ProcessTrace single;
  single.rounds.emplace_back(10);
  CHECK(reverse(single) == single);
}

TEST_CASE("reversal lemma on random traces") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t n = 4 + seed % 9;
    const Graph g = testing::random_graph(n, 0.35, seed * 13 + 1);
    const std::size_t tau = 1 + seed % 8;
    const auto [fwd_state, trace] =
        run_process(g, DirectedEdgeSet::full(g), tau, RandomSource(seed));
    const KnowledgeState rev_state =
        replay(g, reverse(trace), KnowledgeState::with_payloads(n));
    for (NodeId u = 0; u < n; ++u)
      for (NodeId w = 0; w < n; ++w)
        CHECK(fwd_state.knows(u, payload(w)) == rev_state.knows(w, payload(u)));
  }
}

TEST_CASE("replay reproduces a recorded run") {
  const Graph g = testing::random_graph(9, 0.4, 23);
  const auto [state, trace] = run_process(g, DirectedEdgeSet::full(g), 6, RandomSource(8));
  const KnowledgeState again = replay(g, trace, KnowledgeState::with_payloads(9));
  for (NodeId u = 0; u < 9; ++u) {
    CHECK(again.known_count(u) == state.known_count(u));
    for (NodeId w = 0; w < 9; ++w) CHECK(again.knows(u, payload(w)) == state.knows(u, payload(w)));
  }
  const KnowledgeState untouched = replay(g, ProcessTrace{}, KnowledgeState::with_payloads(9));
  for (NodeId u = 0; u < 9; ++u) CHECK(untouched.known_count(u) == 1);
}

TEST_CASE("identical seeds give identical traces") {
  const Graph g = testing::random_graph(15, 0.3, 2);
  const auto [s1, t1] = run_process(g, DirectedEdgeSet::full(g), 12, RandomSource(99));
  const auto [s2, t2] = run_process(g, DirectedEdgeSet::full(g), 12, RandomSource(99));
  CHECK(t1 == t2);
  const auto [s3, t3] = run_process(g, DirectedEdgeSet::full(g), 12, RandomSource(100));
  CHECK(t1.rounds != t3.rounds);
}

TEST_CASE("transfer stats count connections") {
  const Graph pair = make_path(2);
  TransferStats stats;
  (void)run_process(pair, DirectedEdgeSet::full(pair), 3, RandomSource(1),
                    KnowledgeState::with_payloads(2), &stats);
  CHECK(stats.connections == 3);  // one pair activated per round
  CHECK(stats.transfers >= 2);    // both payloads crossed at least once
}

TEST_CASE("trace dump round trip") {
  const Graph g = testing::random_graph(8, 0.4, 3);
  const auto [state, trace] = run_process(g, DirectedEdgeSet::full(g), 5, RandomSource(7));
  const auto [state2, trace2] = run_process(g, DirectedEdgeSet::full(g), 4, RandomSource(9));

  std::stringstream buf;
  const std::vector<ProcessTrace> traces{trace, trace2};
  dump_traces(traces, g.node_count(), 9, true, buf);

  const TraceDump dump = parse_traces(buf);
  CHECK(dump.node_count == g.node_count());
  CHECK(dump.total_rounds == 9);
  CHECK(dump.completed);
  REQUIRE(dump.traces.size() == 2);
  CHECK(dump.traces[0] == trace);
  CHECK(dump.traces[1] == trace2);
}

TEST_CASE("trace dump diagnostics") {
  std::stringstream no_meta("0 1>2\n");
  CHECK_THROWS_AS((void)parse_traces(no_meta), ParseError);

  std::stringstream bad_token("# nodes 3 traces 1 total_rounds 2 completed 1\ntrace 0 rounds 1\n0 1-2\n");
  CHECK_THROWS_AS((void)parse_traces(bad_token), ParseError);
}
