"""Smoke tests for the Python bindings."""

import pytest

import gossipsim as gs


def test_generate_and_inspect():
    g, name = gs.generate("dumbbell(4)")
    assert name == "dumbbell(4)"
    assert g.n == 8
    assert g.m == 13
    assert g.has_edge(3, 4)
    assert g.degree(0) == 3
    assert g.total_volume() == pytest.approx(26.0)


def test_conductance_quantities():
    g, _ = gs.generate("dumbbell(4)")
    side = list(range(4))
    rest = list(range(4, 8))
    assert gs.volume(g, side) == pytest.approx(13.0)
    assert gs.cut_conductance(g, side, rest) == pytest.approx(1.0 / 13.0)
    value, certified = gs.set_conductance(g, list(range(8)))
    assert certified
    assert value == pytest.approx(1.0 / 13.0)
    assert gs.hereditary_density(g) == 2


def test_engine_reversal():
    g, _ = gs.generate("er(24,0.2,5)")
    state, trace = gs.run_process(g, tau=12, seed=3)
    rev = gs.replay(g, gs.reverse_trace(trace))
    for u in range(g.n):
        for w in range(g.n):
            assert state.knows_payload(u, w) == rev.knows_payload(w, u)


def test_superstep_completes():
    g, _ = gs.generate("clique(8)")
    rep = gs.superstep(g, seed=1)
    assert rep.completed
    assert rep.invariants_ok()
    assert rep.total_rounds == 2 * rep.tau * rep.iterations


def test_rumor_within_diameter():
    g, _ = gs.generate("path(6)")
    rep = gs.rumor_by_superstep(g, seed=2)
    assert rep.completed
    assert rep.invocations <= rep.diameter == 5


def test_direct_exchange_bounds():
    g, _ = gs.generate("star(32)")
    rep = gs.direct_exchange(g, epsilon=0.5)
    assert rep.completed
    assert rep.max_initiations <= 2 * 1.5 * 1.5 * 1  # delta = 1
    assert gs.schedule_replay(g, rep.schedule) == 1


def test_decomposition_oracle():
    g, _ = gs.generate("dumbbell(4)")
    partition = gs.cluster(g, list(range(g.n)), xi=0.2)
    assert len(partition.clusters) == 2
    check = gs.verify_partition(g, partition, zeta=1.0 / 3.0)
    assert check.disjoint_cover
    balcut = gs.verify_balcut(g, list(range(g.n)), xi=0.2)
    assert balcut.holds


def test_spanner_extraction():
    g, _ = gs.generate("dumbbell(5)")
    s = gs.extract_spanner(g, seed=4)
    assert s.subgraph.has_edge(4, 5)  # the bridge
    alpha, beta = s.certified_stretch
    assert beta == 0
    assert alpha <= s.source_rounds
    assert s.density <= s.source_rounds
    holds, worst = gs.verify_stretch(g, s.subgraph, alpha, neighbors_only=True)
    assert holds and worst is None


def test_simulators_match_reference():
    g, _ = gs.generate("path(7)")
    ref = gs.run_local(g, "flooding", tape_seed=9)
    assert ref.local_rounds == 6
    for simulator in ("superstep", "round_robin", "direct_exchange", "spanner"):
        out = gs.simulate(g, simulator, "flooding", tape_seed=9, seed=1)
        assert out.matches_reference, simulator
        assert out.outputs == ref.outputs


def test_errors_surface_as_python_exceptions():
    g, _ = gs.generate("path(4)")
    with pytest.raises(gs.GossipError):
        gs.cut_conductance(g, [0, 1], [1, 2])
    with pytest.raises(gs.GossipError):
        gs.generate("wibble(3)")
