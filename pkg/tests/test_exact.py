import math
import random
from itertools import combinations, product

import pytest
from _corpus import ordered_disjoint_tuples, random_multigraph, simple_cycles, simple_graph

from cyclepack.exact import (count_Q, ie_decide, ie_search, ie_signed_sum, ie_signed_sum_exact,
                             simplify_for_dp)
from cyclepack.multigraph import MultiGraph, verify_packing
from cyclepack.oracle import max_cycle_packing_bruteforce


def cycle(n):
    return MultiGraph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return MultiGraph(range(n), list(combinations(range(n), 2)))


def _closed_walks(g: MultiGraph, alive: list[int], m: int):
    """Sequences c_1..c_m, consecutive and wrap-around adjacent, with c_{m-1} != c_1."""
    for seq in product(alive, repeat=m):
        if all(g.multiplicity(seq[i], seq[(i + 1) % m]) for i in range(m)) and seq[m - 2] != seq[0]:
            yield seq


def _brute_q(g: MultiGraph, fvs: set[int], k: int, ell: int) -> int:
    alive = [v for v in g.vertices if v not in fvs]
    counts = {m: sum(1 for _ in _closed_walks(g, alive, m)) for m in range(3, ell + 1)}
    total = 0

    def parts(left: int, slots: int):
        if slots == 0:
            if left == 0:
                yield ()
            return
        for m in range(3, left + 1):
            for rest in parts(left - m, slots - 1):
                yield (m,) + rest

    for comp in parts(ell, k):
        total += math.prod(counts[m] for m in comp)
    return total


# -- derived values, checked by direct enumeration before the DP ------------------


def test_c3_tuple_enumeration_gives_six():
    g = cycle(3)
    walks = list(_closed_walks(g, g.vertices, 3))
    assert len(walks) == 6
    assert _brute_q(g, set(), 1, 3) == 6


def test_c3_signed_sum_is_six():
    assert ie_signed_sum_exact(cycle(3), 1) == 6
    assert ie_signed_sum(cycle(3), 1) == 6


def test_count_q_examples():
    assert count_Q(cycle(3), set(), 1, 3) == 6
    assert count_Q(MultiGraph(range(3), [(0, 1), (1, 2)]), set(), 1, 3) == 0
    assert count_Q(cycle(3), {0}, 1, 3) == 0
    with pytest.raises(ValueError):
        count_Q(cycle(3), set(), 2, 3)


def test_count_q_matches_enumeration():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(3, 6)
        g = simple_graph(rng, n, rng.randint(3, 10))
        fvs = set(rng.sample(range(n), rng.randint(0, 2)))
        for k in (1, 2):
            for ell in range(2 * k, n + 1):
                assert count_Q(g, fvs, k, ell) == _brute_q(g, fvs, k, ell)


def test_signed_sum_counts_rooted_ordered_packings():
    """Each ordered tuple of disjoint cycles contributes 2|C| per cycle (start and direction)."""
    rng = random.Random(4)
    for _ in range(60):
        n = rng.randint(3, 7)
        g = simple_graph(rng, n, rng.randint(3, 12))
        cycles = simple_cycles(g)
        for k in (1, 2):
            expected = sum(math.prod(2 * len(c) for c in tup) for tup in ordered_disjoint_tuples(cycles, k))
            assert ie_signed_sum_exact(g, k) == expected
            assert ie_signed_sum(g, k) == expected


def test_signed_sum_invariant_under_relabeling():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(3, 7)
        g = simple_graph(rng, n, rng.randint(3, 12))
        perm = list(range(n))
        rng.shuffle(perm)
        h = MultiGraph(range(n), [(perm[u], perm[v]) for u, v, _ in g.edges()])
        assert ie_signed_sum(g, 2) == ie_signed_sum(h, 2)


# -- simplification ----------------------------------------------------------------


def test_simplify_examples():
    g = cycle(4)
    s, _ = simplify_for_dp(g)
    assert s == g
    s, tr = simplify_for_dp(MultiGraph(edges=[(0, 0)]))
    assert len(s) == 3 and s.num_edges() == 3 and len(tr.added) == 2
    s, tr = simplify_for_dp(MultiGraph(edges=[(0, 1, 2)]))
    assert len(s) == 3 and s.num_edges() == 3
    assert tr.replay() == s


def test_simplify_preserves_kmax():
    rng = random.Random(8)
    for _ in range(80):
        n = rng.randint(1, 6)
        g = random_multigraph(rng, n, rng.randint(0, 2 * n))
        s, _ = simplify_for_dp(g)
        assert all(u != v and m == 1 for u, v, m in s.edges())
        if len(s) <= 12:
            assert max_cycle_packing_bruteforce(s)[0] == max_cycle_packing_bruteforce(g)[0]


# -- decision and search -----------------------------------------------------------


def test_decide_examples():
    assert ie_decide(cycle(3), 1)
    assert not ie_decide(cycle(5), 2)
    assert not ie_decide(complete(5), 2)
    assert ie_decide(complete(6), 2)


@pytest.mark.parametrize("preprocess", [True, False])
def test_decide_matches_oracle(preprocess):
    rng = random.Random(21 + preprocess)
    for _ in range(80):
        n = rng.randint(1, 8)
        g = random_multigraph(rng, n, rng.randint(0, 2 * n))
        kmax = max_cycle_packing_bruteforce(g)[0]
        for k in range(1, 4):
            assert ie_decide(g, k, preprocess=preprocess) == (kmax >= k)


def test_exact_integer_mode_agrees():
    rng = random.Random(30)
    for _ in range(30):
        g = random_multigraph(rng, 6, 9)
        for k in (1, 2):
            assert ie_decide(g, k, exact_ints=True) == ie_decide(g, k)


def test_search_examples():
    two = MultiGraph(edges=[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    found = ie_search(two, 2)
    assert sorted(sorted(c) for c in found) == [[0, 1, 2], [3, 4, 5]]
    found = ie_search(complete(4), 1)
    assert verify_packing(complete(4), found, 1)
    assert ie_search(cycle(5), 2) is None


def test_search_certifies():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randint(1, 8)
        g = random_multigraph(rng, n, rng.randint(0, 2 * n))
        kmax = max_cycle_packing_bruteforce(g)[0]
        for k in range(1, kmax + 2):
            found = ie_search(g, k)
            if k <= kmax:
                assert verify_packing(g, found, k)
            else:
                assert found is None
