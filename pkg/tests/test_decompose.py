import random

import pytest
from _corpus import forest_plus_s, random_multigraph

from cyclepack.decompose import (GirthPreconditionError, check_core_size_bound, check_core_structure,
                                 core_decomposition, core_size_bounds, find_s_set, girth_target,
                                 low_degree_count, prune_low_degree)
from cyclepack.generators import disjoint_cycles
from cyclepack.multigraph import MultiGraph, verify_packing
from cyclepack.oracle import girth_bruteforce, max_cycle_packing_bruteforce
from cyclepack.reduce import reduce
from cyclepack.trace import replay


def triangle_and_c50(shared: bool) -> MultiGraph:
    g = MultiGraph(edges=[(0, 1), (1, 2), (2, 0)])
    ring = [2] + list(range(3, 52)) if shared else list(range(3, 53))
    for a, b in zip(ring, ring[1:] + ring[:1]):
        g.add_edge(a, b)
    return g


def test_girth_target():
    assert girth_target(16) == 102
    assert girth_target(256) == 134
    assert girth_target(2) == 7
    assert all(girth_target(k) == 7 for k in range(1, 5))
    with pytest.raises(ValueError):
        girth_target(0)


def test_s_set_examples():
    tree = MultiGraph(range(6), [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])
    assert find_s_set(tree, 2, 7).S == set()
    # a lone long cycle reduces to a loop, so one of its vertices must go into S
    c50 = MultiGraph(range(50), [(i, (i + 1) % 50) for i in range(50)])
    res = find_s_set(c50, 2, 7)
    assert len(res.S) == 1 and reduce(c50.without(res.S)).reduced.is_acyclic()
    for k in (2, 3):
        res = find_s_set(disjoint_cycles(k, 3), k, 7)
        assert verify_packing(disjoint_cycles(k, 3), res.packing, k)
    g = triangle_and_c50(shared=False)
    res = find_s_set(g, 2, 7)
    assert verify_packing(g, res.packing, 2)
    g = triangle_and_c50(shared=True)
    res = find_s_set(g, 2, 7)
    assert res.packing is None and res.S and res.S <= {0, 1, 2}
    assert reduce(g.without(res.S)).reduced.is_acyclic()


def test_s_set_postconditions_random():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(1, 14)
        g = random_multigraph(rng, n, rng.randint(0, 2 * n))
        k = rng.randint(1, 4)
        gval = girth_target(k)
        res = find_s_set(g, k, gval, c=rng.choice([None, 3, 4]))
        if res.packing is not None:
            assert verify_packing(g, res.packing, k)
            continue
        assert len(res.S) < gval * k
        gi = girth_bruteforce(reduce(g.without(res.S)).reduced)
        assert gi is None or gi > gval


def test_core_size_bound():
    first, second = core_size_bounds(2, 7)
    assert first > 1e6 and second is not None
    assert check_core_size_bound(MultiGraph(range(3), [(0, 1)]), set(), 1, 7)
    assert check_core_size_bound(disjoint_cycles(2, 3), {0}, 2, 7, c=2)


# -- pruning -----------------------------------------------------------------------------


def test_prune_forest_with_empty_x():
    g = MultiGraph(range(6), [(0, 1), (1, 2), (2, 3), (1, 4)])
    pr = prune_low_degree(g, set())
    assert len(pr.graph) == 0


def test_prune_pendant_example():
    g = MultiGraph(range(27))
    for p in range(2, 27):
        g.add_edge(p, 0)
        g.add_edge(p, 1)
    pr = prune_low_degree(g, {0, 1})
    assert low_degree_count(pr.graph, {0, 1}) <= 20


def test_prune_identity_when_min_degree_two():
    g = MultiGraph(range(6), [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 0)])
    pr = prune_low_degree(g, set())
    assert pr.graph == g and not pr.deleted and not pr.contracted
    k5 = MultiGraph(range(5), [(a, b) for a in range(5) for b in range(a + 1, 5)])
    pr = prune_low_degree(k5, {0})
    assert pr.graph == k5 and not pr.marked


def test_prune_preserves_answers():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.randint(1, 10)
        g = random_multigraph(rng, n, rng.randint(0, 2 * n))
        X = set(rng.sample(range(n), rng.randint(0, min(3, n))))
        pr = prune_low_degree(g, X)
        assert replay(g, pr.trace.events) == pr.graph
        assert low_degree_count(pr.graph, X) <= len(X) ** 2 * (2 * len(X) + 1)
        kg = max_cycle_packing_bruteforce(g)[0]
        kp, packing = max_cycle_packing_bruteforce(pr.graph)
        for k in range(1, 4):
            assert (kg >= k) == (kp >= k)
        assert verify_packing(g, pr.traced.lift_packing(packing), kp)


# -- core decomposition -----------------------------------------------------------------


def test_core_single_long_cycle():
    """A cycle left in G - S reduces to a loop, which breaks the girth precondition."""
    g = MultiGraph(range(11), [(i, (i + 1) % 10) for i in range(10)] + [(10, 0), (10, 5)])
    with pytest.raises(GirthPreconditionError):
        core_decomposition(g, {10}, 2)
    # cutting the cycle at the hub leaves a path hanging between two S vertices
    g.remove_edge(9, 0)
    g.add_edge(11, 9)
    g.add_edge(11, 3)
    traced, core = core_decomposition(g, {10, 11}, 2)
    assert not core.R and core.T
    check_core_structure(traced.graph, core, 2)


def test_core_empty_remainder():
    g = MultiGraph(edges=[(0, 0)])
    _, core = core_decomposition(g, {0}, 1)
    assert not (core.R or core.T or core.paths or core.p_star)


def test_core_rejects_short_girth():
    with pytest.raises(GirthPreconditionError):
        core_decomposition(disjoint_cycles(2, 3), set(), 2)


def test_core_invariants_random():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(3, 16)
        g, S = forest_plus_s(rng, n, rng.randint(1, 2))
        k = rng.randint(1, 3)
        traced, core = core_decomposition(g, S, k)
        h = traced.graph
        check_core_structure(h, core, len(S | core.R))
        # every inner path vertex sees only the path, its end vertices, Z_P or S
        inner = {v for p in core.p_star for v in p}
        allowed = inner | core.z_p | core.S | core.T
        for v in inner:
            assert all(w in allowed for w in h.neighbors(v))
        kg = max_cycle_packing_bruteforce(g)[0] if len(g) <= 12 else None
        if kg is not None and len(h) <= 12:
            assert max_cycle_packing_bruteforce(h)[0] == kg
