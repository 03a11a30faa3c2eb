import math
import random

import networkx as nx
import pytest
from _corpus import random_multigraph

from cyclepack.erdos_posa import (compression_step, cycles_or_fvs,
                                  maximal_deg23_subgraph, ep_constant)
from cyclepack.generators import disjoint_cycles
from cyclepack.multigraph import MultiGraph, is_fvs, log2_ceil, verify_packing
from cyclepack.oracle import max_cycle_packing_bruteforce
from cyclepack.trace import TracedGraph


def cubic(n, seed):
    h = nx.random_regular_graph(3, n, seed=seed)
    return MultiGraph(range(n), list(h.edges()))


def check_v_s_uniqueness(g: MultiGraph, h: MultiGraph) -> None:
    rest = [v for v in g.vertices if v not in h]
    v2 = {v for v in h.vertices if h.degree(v) == 2}
    for comp in g.subgraph(rest).components():
        members = set(comp)
        touching = {v for v in v2 if any(w in members for w in g.neighbors(v))}
        assert len(touching) <= 1, f"component {comp} touches {touching}"


def test_constant():
    c = ep_constant()
    assert c == 1597
    assert 1596 < 150 * math.log2(1596)
    assert 1597 >= 150 * math.log2(1597)
    assert 2048 >= 150 * math.log2(2048) == 1650


def test_h_examples():
    c5 = MultiGraph(range(5), [(i, (i + 1) % 5) for i in range(5)])
    assert maximal_deg23_subgraph(c5) == c5
    k4 = MultiGraph(range(4), [(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert maximal_deg23_subgraph(k4) == k4
    lolly = MultiGraph(edges=[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)])
    h = maximal_deg23_subgraph(lolly)
    assert sorted(h.vertices) == [0, 1, 2]
    check_v_s_uniqueness(lolly, h)
    assert maximal_deg23_subgraph(MultiGraph(range(3), [(0, 1)])) is None


def test_h_properties_random():
    rng = random.Random(2)
    for _ in range(200):
        n = rng.randint(2, 40)
        g = random_multigraph(rng, n, rng.randint(n // 2, 2 * n))
        h = maximal_deg23_subgraph(g)
        if g.is_acyclic():
            assert h is None
            continue
        assert all(h.degree(v) in (2, 3) for v in h.vertices)
        for u, v, m in h.edges():
            assert g.multiplicity(u, v) >= m
        check_v_s_uniqueness(g, h)


def test_outcome_examples():
    forest = MultiGraph(range(4), [(0, 1), (1, 2), (1, 3)])
    out = cycles_or_fvs(forest, 3)
    assert out.fvs == set() and out.cycles is None
    c5 = MultiGraph(range(5), [(i, (i + 1) % 5) for i in range(5)])
    out = cycles_or_fvs(c5, 1)
    assert sorted(out.cycles[0]) == list(range(5))
    for k in (2, 3, 4):
        g = disjoint_cycles(k, 3)
        out = cycles_or_fvs(g, k)
        assert verify_packing(g, out.cycles, k)
        assert all(len(c) == 3 for c in out.cycles)


def _certify(g, k, out, c):
    if out.cycles is not None:
        return verify_packing(g, out.cycles, k)
    return is_fvs(g, out.fvs) and len(out.fvs) <= c * k * log2_ceil(k)


def test_certifies_on_random_graphs():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(1, 200)
        g = random_multigraph(rng, n, rng.randint(0, 2 * n), p_loop=0.02, p_double=0.05)
        k = rng.randint(1, 4)
        assert _certify(g, k, cycles_or_fvs(g, k), 1597)


def test_large_instance():
    rng = random.Random(4)
    g = random_multigraph(rng, 10_000, 11_000, p_loop=0.0005, p_double=0.001)
    assert _certify(g, 3, cycles_or_fvs(g, 3), 1597)


@pytest.mark.parametrize("seed", range(6))
def test_compression_snapshots_lift(seed):
    g = cubic(14, seed)
    tg = TracedGraph.of(g)
    for _ in range(5):
        before = tg.graph.copy()
        step = TracedGraph.of(before)
        name = compression_step(step)
        assert name in ("loop", "triple", "double", "spread")
        assert len(step.graph) == len(before) - 2
        kmax, packing = max_cycle_packing_bruteforce(step.graph)
        lifted = step.lift_packing(packing)
        assert verify_packing(before, lifted, kmax)
        compression_step(tg)


def test_compression_step_kinds():
    seen = set()
    for seed in range(30):
        tg = TracedGraph.of(cubic(20, seed))
        while len(tg.graph) > 4:
            seen.add(compression_step(tg))
    assert {"spread", "double"} <= seen


def test_compressed_route_under_small_constant():
    routes = set()
    for seed in range(20):
        g = cubic(100, seed)
        for k in (2, 3):
            out = cycles_or_fvs(g, k, c=4)
            routes.add(out.route)
            assert _certify(g, k, out, 4)
    assert "compressed" in routes


def test_tiny_constant_falls_back_to_oversized_fvs():
    routes = set()
    for seed in range(10):
        g = cubic(100, seed)
        out = cycles_or_fvs(g, 4, c=2)
        routes.add(out.route)
        if out.route == "fvs-oversized":
            assert is_fvs(g, out.fvs) and len(out.fvs) > 2 * 4 * log2_ceil(4)
        else:
            assert _certify(g, 4, out, 2)
    assert "fvs-oversized" in routes


def test_small_graph_k4_skeleton_under_override():
    k4 = MultiGraph(range(4), [(a, b) for a in range(4) for b in range(a + 1, 4)])
    g = k4.copy()
    for v in range(4):
        g.add_edge(v, 4 + v)
        g.add_edge(4 + v, 4 + (v + 1) % 4)
    out = cycles_or_fvs(g, 2, c=1)
    assert out.route in ("fvs-oversized", "compressed", "attached-cycles")
    assert _certify(g, 2, out, 10 ** 6)
