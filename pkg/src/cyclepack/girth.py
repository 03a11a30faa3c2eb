"""Shortest cycle of a multigraph, guided by a feedback vertex set.

Every cycle meets the feedback vertex set, so a BFS from each of its
vertices finds a closed walk no longer than the shortest cycle through that
root.  Candidates are built from the first level holding an edge inside the
level and the first level holding a vertex with two parents; both are closed
through the lowest common ancestor.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable

from .multigraph import MultiGraph, canonical_cycle, find_cycle, is_fvs


def greedy_fvs(g: MultiGraph) -> set[int]:
    """Some feedback vertex set: repeatedly take the highest-degree vertex of a found cycle."""
    h = g.copy()
    out: set[int] = set()
    while True:
        cyc = find_cycle(h)
        if cyc is None:
            return out
        v = max(cyc, key=lambda x: (h.degree(x), -x))
        out.add(v)
        h.remove_vertex(v)


def _climb(parent: dict[int, int], a: int, b: int) -> tuple[list[int], list[int]]:
    """Walk two same-depth vertices up until they meet; returns both paths, ancestor included."""
    left, right = [a], [b]
    while a != b:
        a = parent[a]
        b = parent[b]
        left.append(a)
        right.append(b)
    return left, right


def _candidates_from(g: MultiGraph, root: int) -> list[list[int]]:
    depth = {root: 0}
    parent = {root: root}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in depth:
                depth[y] = depth[x] + 1
                parent[y] = x
                order.append(y)
                queue.append(y)

    i1 = i2 = None
    same_level: list[tuple[int, int]] = []
    two_parents: list[tuple[int, int, int]] = []
    for x in order:
        d = depth[x]
        ups = []
        for y in g.neighbors(x):
            if depth[y] == d and x < y:
                same_level.append((d, x, y))
            elif depth[y] == d - 1:
                ups.append(y)
        if len(ups) >= 2:
            two_parents.append((d, x, ups[0], ups[1]))
    if same_level:
        i1 = min(t[0] for t in same_level)
    if two_parents:
        i2 = min(t[0] for t in two_parents)

    out = []
    for d, x, y in same_level:
        if d != i1:
            continue
        left, right = _climb(parent, x, y)
        out.append(left + right[-2::-1])
    for d, w, p, q in two_parents:
        if d != i2:
            continue
        left, right = _climb(parent, p, q)
        out.append([w] + left + right[-2::-1])
    return out


def shortest_cycle_with_fvs(g: MultiGraph, fvs: Iterable[int], check: bool = True,
                            collect: list | None = None) -> list[int] | None:
    """A shortest cycle of ``g``, or None if ``g`` is a forest.

    ``collect``, when given, receives every candidate cycle considered.
    """
    fvs = sorted(set(fvs))
    if check and not is_fvs(g, fvs):
        raise ValueError("given set is not a feedback vertex set")
    loops = g.loop_vertices()
    if loops:
        return [loops[0]]
    doubles = [(u, v) for u, v, m in g.edges() if m >= 2]
    if doubles:
        return list(doubles[0])
    best = None
    best_key = None
    for root in fvs:
        if root not in g:
            continue
        for cyc in _candidates_from(g, root):
            if collect is not None:
                collect.append(cyc)
            key = (len(cyc), canonical_cycle(cyc))
            if best_key is None or key < best_key:
                best, best_key = cyc, key
    if best is None:
        return None
    return list(best_key[1])


def girth(g: MultiGraph, fvs: Iterable[int] | None = None) -> int | None:
    """Length of a shortest cycle, None for forests."""
    if fvs is None:
        fvs = greedy_fvs(g)
    cyc = shortest_cycle_with_fvs(g, fvs, check=False)
    return None if cyc is None else len(cyc)
