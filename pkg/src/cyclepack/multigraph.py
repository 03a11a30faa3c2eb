"""Undirected multigraph with self-loops and per-pair multiplicities.

Vertices are nonnegative integers.  Fresh vertices are drawn from a counter
that only grows, so identifiers of deleted vertices are never reused.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Sequence


def pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


class MultiGraph:
    """Adjacency-map multigraph.

    ``_adj[u][v]`` is the number of parallel ``u``-``v`` edges for ``u != v``;
    loops are kept separately in ``_loops``.
    """

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Sequence[int]] = ()):
        self._adj: dict[int, dict[int, int]] = {}
        self._loops: dict[int, int] = {}
        self._next_id = 0
        for v in vertices:
            self.add_vertex(v)
        for e in edges:
            if len(e) == 2:
                self.add_edge(e[0], e[1])
            else:
                self.add_edge(e[0], e[1], e[2])

    # -- construction -----------------------------------------------------

    def add_vertex(self, v: int | None = None) -> int:
        if v is None:
            v = self._next_id
        if v < 0:
            raise ValueError(f"vertex ids must be nonnegative, got {v}")
        if v not in self._adj:
            self._adj[v] = {}
        self._next_id = max(self._next_id, v + 1)
        return v

    def new_vertex(self) -> int:
        return self.add_vertex(None)

    def add_edge(self, u: int, v: int, mult: int = 1) -> None:
        if mult < 1:
            raise ValueError("multiplicity must be >= 1")
        self.add_vertex(u)
        self.add_vertex(v)
        if u == v:
            self._loops[u] = self._loops.get(u, 0) + mult
            return
        self._adj[u][v] = self._adj[u].get(v, 0) + mult
        self._adj[v][u] = self._adj[v].get(u, 0) + mult

    def remove_edge(self, u: int, v: int, mult: int = 1) -> None:
        have = self.multiplicity(u, v)
        if mult > have:
            raise KeyError(f"cannot remove {mult} copies of {{{u},{v}}}; only {have} present")
        if u == v:
            left = have - mult
            if left:
                self._loops[u] = left
            else:
                self._loops.pop(u, None)
            return
        left = have - mult
        if left:
            self._adj[u][v] = left
            self._adj[v][u] = left
        else:
            del self._adj[u][v]
            del self._adj[v][u]

    def set_multiplicity(self, u: int, v: int, mult: int) -> None:
        have = self.multiplicity(u, v)
        if mult > have:
            self.add_edge(u, v, mult - have)
        elif mult < have:
            self.remove_edge(u, v, have - mult)

    def remove_vertex(self, v: int) -> None:
        for u in list(self._adj[v]):
            del self._adj[u][v]
        del self._adj[v]
        self._loops.pop(v, None)

    def remove_vertices(self, vs: Iterable[int]) -> None:
        for v in list(vs):
            if v in self._adj:
                self.remove_vertex(v)

    def copy(self) -> "MultiGraph":
        g = MultiGraph.__new__(MultiGraph)
        g._adj = {v: dict(nb) for v, nb in self._adj.items()}
        g._loops = dict(self._loops)
        g._next_id = self._next_id
        return g

    # -- queries ----------------------------------------------------------

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    @property
    def vertices(self) -> list[int]:
        return sorted(self._adj)

    @property
    def next_id(self) -> int:
        return self._next_id

    def reserve_ids(self, upto: int) -> None:
        """Make sure fresh ids start at ``upto`` or later."""
        self._next_id = max(self._next_id, upto)

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def neighbor_items(self, v: int) -> Iterator[tuple[int, int]]:
        return iter(self._adj[v].items())

    def multiplicity(self, u: int, v: int) -> int:
        if u == v:
            return self._loops.get(u, 0) if u in self._adj else 0
        nb = self._adj.get(u)
        return nb.get(v, 0) if nb else 0

    def loops(self, v: int) -> int:
        return self._loops.get(v, 0)

    def loop_vertices(self) -> list[int]:
        return sorted(v for v, c in self._loops.items() if c)

    def degree(self, v: int) -> int:
        return sum(self._adj[v].values()) + 2 * self._loops.get(v, 0)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(u, v, mult)`` once per vertex pair (``u <= v``), sorted."""
        out = []
        for u, nb in self._adj.items():
            for v, m in nb.items():
                if u < v:
                    out.append((u, v, m))
        for v, m in self._loops.items():
            out.append((v, v, m))
        out.sort()
        return iter(out)

    def num_edges(self) -> int:
        return sum(m for _, _, m in self.edges())

    def subgraph(self, keep: Iterable[int]) -> "MultiGraph":
        keep = set(keep)
        g = self.copy()
        g.remove_vertices([v for v in self._adj if v not in keep])
        return g

    def without(self, drop: Iterable[int]) -> "MultiGraph":
        g = self.copy()
        g.remove_vertices(drop)
        return g

    def components(self, among: Iterable[int] | None = None) -> list[list[int]]:
        allowed = set(self._adj) if among is None else set(among)
        seen: set[int] = set()
        comps = []
        for s in sorted(allowed):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y in allowed and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_acyclic(self) -> bool:
        if self._loops:
            return False
        for u, nb in self._adj.items():
            for m in nb.values():
                if m > 1:
                    return False
        edges = sum(len(nb) for nb in self._adj.values()) // 2
        return edges == len(self._adj) - len(self.components())

    def canonical(self) -> tuple:
        return (tuple(self.vertices), tuple(self.edges()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __repr__(self) -> str:
        return f"MultiGraph(n={len(self)}, m={self.num_edges()})"

    def check(self) -> None:
        """Raise AssertionError if internal maps are inconsistent."""
        for u, nb in self._adj.items():
            for v, m in nb.items():
                assert u != v, "loop stored in adjacency"
                assert m >= 1
                assert self._adj[v][u] == m, f"asymmetric multiplicity at {{{u},{v}}}"
        for v, m in self._loops.items():
            assert v in self._adj and m >= 1


# -- cycles and certificates ---------------------------------------------


def is_valid_cycle(g: MultiGraph, cycle: Sequence[int]) -> bool:
    n = len(cycle)
    if n == 0 or len(set(cycle)) != n:
        return False
    if any(v not in g for v in cycle):
        return False
    if n == 1:
        return g.loops(cycle[0]) >= 1
    if n == 2:
        return g.multiplicity(cycle[0], cycle[1]) >= 2
    return all(g.multiplicity(cycle[i], cycle[(i + 1) % n]) >= 1 for i in range(n))


def verify_packing(g: MultiGraph, packing: Iterable[Sequence[int]], k: int) -> bool:
    """True iff ``packing`` holds at least ``k`` valid, pairwise vertex-disjoint cycles."""
    used: set[int] = set()
    count = 0
    for cyc in packing:
        cyc = list(cyc)
        if not is_valid_cycle(g, cyc):
            return False
        if used.intersection(cyc):
            return False
        used.update(cyc)
        count += 1
    return count >= k


def is_fvs(g: MultiGraph, fvs: Iterable[int]) -> bool:
    return g.without(fvs).is_acyclic()


def find_cycle(g: MultiGraph) -> list[int] | None:
    """Some cycle of ``g`` (loops and double edges first), or None."""
    loops = g.loop_vertices()
    if loops:
        return [loops[0]]
    for u, v, m in g.edges():
        if m >= 2:
            return [u, v]
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for root in g.vertices:
        if root in depth:
            continue
        depth[root] = 0
        parent[root] = -1
        stack = [root]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y == parent[x]:
                    continue
                if y in depth:
                    # non-tree edge: climb to common ancestor
                    a, b = x, y
                    left, right = [a], [b]
                    while depth[a] > depth[b]:
                        a = parent[a]
                        left.append(a)
                    while depth[b] > depth[a]:
                        b = parent[b]
                        right.append(b)
                    while a != b:
                        a = parent[a]
                        b = parent[b]
                        left.append(a)
                        right.append(b)
                    return left + right[-2::-1]
                depth[y] = depth[x] + 1
                parent[y] = x
                stack.append(y)
    return None


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotation/reflection-invariant form: start at min vertex, smaller neighbor second."""
    c = list(cycle)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if len(c) > 2 and c[-1] < c[1]:
        c = [c[0]] + c[:0:-1]
    return tuple(c)


# -- edge discarding -------------------------------------------------------


def log2_ceil(k: int) -> int:
    """``ceil(log2(max(k, 2)))``; every threshold in the package uses this."""
    return (max(k, 2) - 1).bit_length()


def edge_cap(n: int, k: int, c_ep: int) -> int:
    return (2 * c_ep * k * log2_ceil(k) + 1) * n


def discard_excess_edges(g: MultiGraph, k: int, c_ep: int | None = None,
                         order: Sequence[int] | None = None):
    """Thin a dense graph to at most ``edge_cap`` edges without changing the answer for ``k``.

    Returns ``(graph, trace)``.  Graphs already under the cap come back as an
    untouched copy with an empty trace.  Otherwise loops are first clamped to
    one copy and parallel pairs to two (extra copies never help a packing),
    and then the vertex scan keeps edges in scan order until the counter
    reaches the cap.
    """
    from .trace import TracedGraph

    if k < 1:
        raise ValueError("k must be >= 1")
    if c_ep is None:
        from .erdos_posa import ep_constant
        c_ep = ep_constant()
    tg = TracedGraph.of(g)
    cap = edge_cap(len(g), k, c_ep)
    if g.num_edges() <= cap:
        return tg.graph, tg.trace
    for u, v, m in list(tg.graph.edges()):
        limit = 1 if u == v else 2
        if m > limit:
            tg.keep_copies(u, v, limit)
    if tg.graph.num_edges() <= cap:
        return tg.graph, tg.trace

    order = list(g.vertices) if order is None else list(order)
    if sorted(order) != g.vertices:
        raise ValueError("order must list every vertex exactly once")
    pos = {v: i for i, v in enumerate(order)}
    counter = 0
    keep: dict[tuple[int, int], int] = {}
    for v in order:
        if counter >= cap:
            break
        incident = [(v, v, tg.graph.loops(v))] if tg.graph.loops(v) else []
        incident += [(v, w, m) for w, m in sorted(tg.graph.neighbor_items(v)) if pos[w] > pos[v]]
        for a, b, m in incident:
            take = min(m, cap - counter)
            if take <= 0:
                break
            keep[pair(a, b)] = take
            counter += take
    for u, v, m in list(tg.graph.edges()):
        want = keep.get((u, v), 0)
        if want < m:
            tg.keep_copies(u, v, want)
    return tg.graph, tg.trace
