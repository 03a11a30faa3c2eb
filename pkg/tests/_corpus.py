"""Seeded instance families shared by the test modules."""
from __future__ import annotations

import random
from itertools import permutations

from cyclepack.multigraph import MultiGraph


def random_multigraph(rng: random.Random, n: int, m: int, p_loop: float = 0.08,
                      p_double: float = 0.15) -> MultiGraph:
    g = MultiGraph(range(n))
    for _ in range(m if n else 0):
        u = rng.randrange(n)
        if rng.random() < p_loop:
            g.add_edge(u, u)
            continue
        v = rng.randrange(n)
        if u == v:
            continue
        g.add_edge(u, v, 2 if rng.random() < p_double else 1)
    return g


def small_corpus(seed: int, count: int, n_max: int = 9) -> list[MultiGraph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, n_max)
        out.append(random_multigraph(rng, n, rng.randint(0, 2 * n + 2)))
    return out


def simple_graph(rng: random.Random, n: int, m: int) -> MultiGraph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return MultiGraph(range(n), rng.sample(pairs, min(m, len(pairs))))


def connected_graph(rng: random.Random, n: int, extra: int) -> MultiGraph:
    """Random spanning tree plus ``extra`` further simple edges."""
    g = MultiGraph(range(n))
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        g.add_edge(order[i], order[rng.randrange(i)])
    tries = 0
    while extra and tries < 50 * n:
        tries += 1
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v and not g.multiplicity(u, v):
            g.add_edge(u, v)
            extra -= 1
    return g


def forest_plus_s(rng: random.Random, n: int, s: int) -> tuple[MultiGraph, set[int]]:
    """Graph whose last ``s`` vertices hit every cycle: a forest plus a few hubs."""
    S = set(range(n - s, n))
    g = MultiGraph(range(n))
    for v in range(1, n - s):
        if rng.random() < 0.85:
            g.add_edge(v, rng.randrange(v))
    for v in S:
        for _ in range(rng.randint(1, 6)):
            g.add_edge(v, rng.randrange(n), rng.choice([1, 1, 1, 2]))
    return g, S


def simple_cycles(g: MultiGraph) -> list[tuple[int, ...]]:
    """All cycles of a simple graph with at least three vertices, each listed once."""
    adj = {v: set(g.neighbors(v)) - {v} for v in g.vertices}
    out = []

    def extend(path: list[int]) -> None:
        last = path[-1]
        for w in adj[last]:
            if w == path[0] and len(path) >= 3 and path[1] < path[-1]:
                out.append(tuple(path))
            elif w > path[0] and w not in path:
                path.append(w)
                extend(path)
                path.pop()

    for s in sorted(adj):
        extend([s])
    return out


def ordered_disjoint_tuples(cycles: list[tuple[int, ...]], k: int):
    """Ordered k-tuples of pairwise vertex-disjoint cycles."""
    for combo in permutations(range(len(cycles)), k):
        seen: set[int] = set()
        ok = True
        for i in combo:
            if seen & set(cycles[i]):
                ok = False
                break
            seen |= set(cycles[i])
        if ok:
            yield [cycles[i] for i in combo]
