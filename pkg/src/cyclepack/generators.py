"""Deterministic instance generators."""
from __future__ import annotations

import random

from .multigraph import MultiGraph

MODELS = ("disjoint_cycles", "gnm", "theta", "grid", "high_girth")


def _need(params: dict, *names: str) -> list[int]:
    out = []
    for name in names:
        if name not in params:
            raise ValueError(f"missing parameter {name!r}")
        value = int(params[name])
        if value < 0:
            raise ValueError(f"parameter {name!r} must be nonnegative")
        out.append(value)
    return out


def disjoint_cycles(count: int, length: int) -> MultiGraph:
    if length < 1:
        raise ValueError("cycle length must be >= 1")
    g = MultiGraph()
    for c in range(count):
        base = c * length
        if length == 1:
            g.add_edge(base, base)
        elif length == 2:
            g.add_edge(base, base + 1, 2)
        else:
            for i in range(length):
                g.add_edge(base + i, base + (i + 1) % length)
    return g


def gnm(n: int, m: int, seed: int) -> MultiGraph:
    """``m`` distinct simple edges chosen uniformly among the n(n-1)/2 pairs."""
    total = n * (n - 1) // 2
    if m > total:
        raise ValueError(f"m={m} exceeds the {total} available pairs")
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return MultiGraph(range(n), rng.sample(pairs, m))


def theta(strands: int, length: int) -> MultiGraph:
    """Two hubs joined by ``strands`` internally disjoint paths of ``length`` edges."""
    if length < 1:
        raise ValueError("strand length must be >= 1")
    g = MultiGraph([0, 1])
    nxt = 2
    for _ in range(strands):
        prev = 0
        for _ in range(length - 1):
            g.add_edge(prev, nxt)
            prev = nxt
            nxt += 1
        g.add_edge(prev, 1)
    return g


def grid(rows: int, cols: int) -> MultiGraph:
    g = MultiGraph(range(rows * cols))
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                g.add_edge(v, v + 1)
            if r + 1 < rows:
                g.add_edge(v, v + cols)
    return g


def high_girth(n: int, girth: int, seed: int) -> MultiGraph:
    """Random graph on ``n`` vertices in which every cycle has length >= ``girth``.

    Edges are proposed in random order and kept only if the current distance
    between the endpoints is at least ``girth - 1``.
    """
    from collections import deque

    rng = random.Random(seed)
    g = MultiGraph(range(n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    for u, v in pairs:
        dist = {u: 0}
        queue = deque([u])
        close = False
        while queue:
            x = queue.popleft()
            if dist[x] >= girth - 2:
                continue
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    if y == v:
                        close = True
                        break
                    queue.append(y)
            if close:
                break
        if not close:
            g.add_edge(u, v)
    return g


def generate(model: str, params: dict, seed: int = 0) -> MultiGraph:
    if model == "disjoint_cycles":
        count, length = _need(params, "count", "len")
        return disjoint_cycles(count, length)
    if model == "gnm":
        n, m = _need(params, "n", "m")
        return gnm(n, m, seed)
    if model == "theta":
        strands, length = _need(params, "strands", "len")
        return theta(strands, length)
    if model == "grid":
        rows, cols = _need(params, "rows", "cols")
        return grid(rows, cols)
    if model == "high_girth":
        n, gi = _need(params, "n", "girth")
        if gi < 3:
            raise ValueError("girth must be >= 3")
        return high_girth(n, gi, seed)
    raise ValueError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
