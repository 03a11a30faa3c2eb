import random

import pytest
from _corpus import connected_graph, random_multigraph

from cyclepack.girth import girth, greedy_fvs, shortest_cycle_with_fvs
from cyclepack.multigraph import MultiGraph, is_fvs, is_valid_cycle
from cyclepack.oracle import girth_bruteforce


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph(range(10), outer + spokes + inner)


def test_examples():
    c5 = MultiGraph(range(5), [(i, (i + 1) % 5) for i in range(5)])
    assert len(shortest_cycle_with_fvs(c5, {0})) == 5
    g = MultiGraph(edges=[(0, 1), (1, 2), (2, 0), (5, 5)])
    assert shortest_cycle_with_fvs(g, {0, 5}) == [5]
    assert shortest_cycle_with_fvs(MultiGraph(range(3), [(0, 1), (1, 2)]), set()) is None


def test_petersen_any_fvs():
    p = petersen()
    assert girth_bruteforce(p) == 5
    rng = random.Random(0)
    tried = 0
    while tried < 20:
        f = set(rng.sample(range(10), rng.randint(3, 6)))
        if is_fvs(p, f):
            assert len(shortest_cycle_with_fvs(p, f)) == 5
            tried += 1


def test_rejects_non_fvs():
    c5 = MultiGraph(range(5), [(i, (i + 1) % 5) for i in range(5)])
    with pytest.raises(ValueError):
        shortest_cycle_with_fvs(c5, set())


def test_multigraph_exactness():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(1, 9)
        g = random_multigraph(rng, n, rng.randint(0, 2 * n))
        cyc = shortest_cycle_with_fvs(g, greedy_fvs(g))
        expected = girth_bruteforce(g)
        if expected is None:
            assert cyc is None
        else:
            assert is_valid_cycle(g, cyc) and len(cyc) == expected


def test_connected_exactness_with_random_fvs():
    rng = random.Random(6)
    for _ in range(200):
        n = rng.randint(3, 25)
        g = connected_graph(rng, n, rng.randint(0, n))
        fvs = greedy_fvs(g) | set(rng.sample(range(n), rng.randint(0, 3)))
        assert girth(g, fvs) == girth_bruteforce(g)
