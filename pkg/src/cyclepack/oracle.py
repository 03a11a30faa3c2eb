"""Brute-force ground truth: maximum cycle packing and girth on small graphs."""
from __future__ import annotations

from collections import deque
from functools import lru_cache

from .multigraph import MultiGraph, verify_packing

PACKING_CAP = 12
GIRTH_CAP = 60


class OracleCapExceeded(ValueError):
    pass


def minimal_cycles(g: MultiGraph) -> list[list[int]]:
    """Loops, double edges and chordless cycles.

    A maximum packing can always be chosen among these: any other cycle
    contains one of them on a subset of its vertices.
    """
    out: list[list[int]] = [[v] for v in g.loop_vertices()]
    blocked = set(g.loop_vertices())
    for u, v, m in g.edges():
        if u != v and m >= 2 and u not in blocked and v not in blocked:
            out.append([u, v])
    verts = [v for v in g.vertices if v not in blocked]
    ok = set(verts)
    adj = {v: {w for w in g.neighbors(v) if w in ok} for v in verts}

    def extend(path: list[int], on_path: set[int]) -> None:
        s, last = path[0], path[-1]
        for x in sorted(adj[last]):
            if x <= s or x in on_path:
                continue
            if any(x in adj[p] for p in path[1:-1]):
                continue
            if len(path) >= 2 and s in adj[x]:
                if path[1] < x:
                    out.append(path + [x])
                continue
            on_path.add(x)
            path.append(x)
            extend(path, on_path)
            path.pop()
            on_path.discard(x)

    for s in verts:
        extend([s], {s})
    return out


def max_cycle_packing_bruteforce(g: MultiGraph, cap: int = PACKING_CAP) -> tuple[int, list[list[int]]]:
    if len(g) > cap:
        raise OracleCapExceeded(f"{len(g)} vertices exceeds the oracle cap of {cap}")
    verts = g.vertices
    bit = {v: 1 << i for i, v in enumerate(verts)}
    cycles = minimal_cycles(g)
    masks = []
    for c in cycles:
        m = 0
        for v in c:
            m |= bit[v]
        masks.append(m)
    through: dict[int, list[int]] = {i: [] for i in range(len(verts))}
    for ci, m in enumerate(masks):
        for i in range(len(verts)):
            if m >> i & 1:
                through[i].append(ci)

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[int, tuple[int, ...]]:
        if mask == 0:
            return 0, ()
        low = (mask & -mask).bit_length() - 1
        top = best(mask & ~(1 << low))
        for ci in through[low]:
            if masks[ci] & ~mask == 0:
                cnt, chosen = best(mask & ~masks[ci])
                if cnt + 1 > top[0]:
                    top = (cnt + 1, chosen + (ci,))
        return top

    k_max, chosen = best((1 << len(verts)) - 1)
    packing = [list(cycles[ci]) for ci in chosen]
    assert verify_packing(g, packing, k_max)
    return k_max, packing


def girth_bruteforce(g: MultiGraph, cap: int = GIRTH_CAP) -> int | None:
    if len(g) > cap:
        raise OracleCapExceeded(f"{len(g)} vertices exceeds the oracle cap of {cap}")
    if g.loop_vertices():
        return 1
    if any(m >= 2 for u, v, m in g.edges()):
        return 2
    best = None
    for s in g.vertices:
        dist = {s: 0}
        parent = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    walk = dist[x] + dist[y] + 1
                    if best is None or walk < best:
                        best = walk
    return best
