"""Provenance tracking for graph transformations.

A :class:`TracedGraph` pairs a working :class:`MultiGraph` with a
:class:`TransformTrace`.  The trace keeps, for every current edge copy, the
path of *original* vertices it stands for, and for every current vertex the
tree of original vertices merged into it by contractions.  Together they are
enough to turn any cycle of the working graph into a cycle of the original.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .multigraph import MultiGraph, is_valid_cycle, pair

Path = tuple[int, ...]


@dataclass(frozen=True)
class VertexDeleted:
    v: int


@dataclass(frozen=True)
class EdgeRemoved:
    u: int
    v: int


@dataclass(frozen=True)
class EdgeAdded:
    u: int
    v: int
    label: str = ""


@dataclass(frozen=True)
class EdgeContracted:
    survivor: int
    removed: int
    edge_used: int = 0


@dataclass(frozen=True)
class MultiplicityClamped:
    u: int
    v: int
    old: int
    new: int


@dataclass(frozen=True)
class EdgeSubdivided:
    u: int
    v: int
    new_vertices: tuple[int, ...]


@dataclass(frozen=True)
class PathCollapsed:
    """Degree-2 vertex ``vertex`` replaced by an edge ``{left, right}``."""

    vertex: int
    left: int
    right: int
    original_path: Path = ()


Event = (VertexDeleted | EdgeRemoved | EdgeAdded | EdgeContracted
         | MultiplicityClamped | EdgeSubdivided | PathCollapsed)


class LiftError(ValueError):
    pass


def apply_event(g: MultiGraph, ev: Event) -> None:
    """Apply one logged event to ``g`` in place (multiplicity level only)."""
    if isinstance(ev, VertexDeleted):
        g.remove_vertex(ev.v)
    elif isinstance(ev, EdgeRemoved):
        g.remove_edge(ev.u, ev.v)
    elif isinstance(ev, EdgeAdded):
        g.add_edge(ev.u, ev.v)
    elif isinstance(ev, MultiplicityClamped):
        g.set_multiplicity(ev.u, ev.v, ev.new)
    elif isinstance(ev, EdgeContracted):
        contract_counts(g, ev.survivor, ev.removed)
    elif isinstance(ev, PathCollapsed):
        g.remove_vertex(ev.vertex)
        g.add_edge(ev.left, ev.right)
    elif isinstance(ev, EdgeSubdivided):
        g.remove_edge(ev.u, ev.v)
        chain = [ev.u, *ev.new_vertices, ev.v]
        for x in ev.new_vertices:
            g.add_vertex(x)
        for a, b in zip(chain, chain[1:]):
            g.add_edge(a, b)
    else:  # pragma: no cover
        raise TypeError(ev)


def contract_counts(g: MultiGraph, u: int, v: int) -> None:
    if u == v or g.multiplicity(u, v) < 1:
        raise ValueError(f"no edge {{{u},{v}}} to contract")
    m = g.multiplicity(u, v)
    moved = [(w, c) for w, c in g.neighbor_items(v) if w != u]
    loops_v = g.loops(v)
    g.remove_vertex(v)
    if m > 1:
        g.add_edge(u, u, m - 1)
    if loops_v:
        g.add_edge(u, u, loops_v)
    for w, c in moved:
        g.add_edge(u, w, c)


def replay(base: MultiGraph, events: Iterable[Event]) -> MultiGraph:
    g = base.copy()
    for ev in events:
        apply_event(g, ev)
    return g


class TransformTrace:
    """Event log plus the lineage needed to lift cycles to the base graph."""

    def __init__(self, base: MultiGraph):
        self.base = base
        self.events: list[Event] = []
        # pair key (a <= b) -> list of original paths, oriented from a's blob to b's blob
        self.origins: dict[tuple[int, int], list[Path]] = {}
        # current vertex -> tree adjacency over the original vertices merged into it
        self.blobs: dict[int, dict[int, list[int]]] = {}
        self.owner: dict[int, int | None] = {}

    @classmethod
    def identity(cls, g: MultiGraph) -> "TransformTrace":
        tr = cls(g.copy())
        for u, v, m in g.edges():
            tr.origins[(u, v)] = [(u, v)] * m
        for v in g.vertices:
            tr.owner[v] = v
        return tr

    def copy(self) -> "TransformTrace":
        tr = TransformTrace.__new__(TransformTrace)
        tr.base = self.base
        tr.events = list(self.events)
        tr.origins = {k: list(v) for k, v in self.origins.items()}
        tr.blobs = {k: {a: list(b) for a, b in t.items()} for k, t in self.blobs.items()}
        tr.owner = dict(self.owner)
        return tr

    # -- lineage queries --------------------------------------------------

    def representative(self, v: int) -> int | None:
        """Current vertex holding original vertex ``v``, or None if it is gone."""
        return self.owner.get(v)

    def blob(self, v: int) -> set[int]:
        t = self.blobs.get(v)
        return set(t) if t else {v}

    def oriented(self, u: int, v: int, index: int) -> Path:
        """Original path of copy ``index`` of edge ``{u, v}``, read from ``u`` to ``v``."""
        path = self.origins[pair(u, v)][index]
        if u <= v:
            return path
        return path[::-1]

    def blob_path(self, v: int, a: int, b: int) -> list[int]:
        if a == b:
            return [a]
        tree = self.blobs.get(v)
        if not tree or a not in tree or b not in tree:
            raise LiftError(f"{a} and {b} are not both merged into {v}")
        prev = {a: a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            if x == b:
                break
            for y in tree[x]:
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        out = [b]
        while out[-1] != a:
            out.append(prev[out[-1]])
        return out[::-1]

    def lift_cycle(self, current: MultiGraph, cycle: Sequence[int]) -> list[int]:
        """Map a cycle of ``current`` to a cycle of the base graph."""
        cycle = list(cycle)
        if not is_valid_cycle(current, cycle):
            raise LiftError(f"{cycle} is not a cycle of the working graph")
        n = len(cycle)
        if n == 1:
            steps = [self.oriented(cycle[0], cycle[0], 0)]
        elif n == 2:
            steps = [self.oriented(cycle[0], cycle[1], 0), self.oriented(cycle[1], cycle[0], 1)]
        else:
            steps = [self.oriented(cycle[i], cycle[(i + 1) % n], 0) for i in range(n)]
        out: list[int] = []
        for i, c in enumerate(cycle):
            entry = steps[i - 1][-1]
            leave = steps[i][0]
            out.extend(self.blob_path(c, entry, leave))
            out.extend(steps[i][1:-1])
        return out

    def interior_owner(self) -> dict[int, tuple[int, int]]:
        """Original vertex -> endpoints of the current edge whose path passes through it."""
        found: dict[int, tuple[int, int]] = {}
        for key, paths in self.origins.items():
            for p in paths:
                for x in p[1:-1]:
                    found.setdefault(x, key)
        return found


class TracedGraph:
    """Working multigraph whose mutations are logged against a base graph."""

    def __init__(self, graph: MultiGraph, trace: TransformTrace | None = None):
        self.graph = graph
        self.trace = trace if trace is not None else TransformTrace.identity(graph)

    @classmethod
    def of(cls, g: MultiGraph) -> "TracedGraph":
        return cls(g.copy())

    def copy(self) -> "TracedGraph":
        return TracedGraph(self.graph.copy(), self.trace.copy())

    def lift_cycle(self, cycle: Sequence[int]) -> list[int]:
        return self.trace.lift_cycle(self.graph, cycle)

    def lift_packing(self, packing: Iterable[Sequence[int]]) -> list[list[int]]:
        return [self.lift_cycle(c) for c in packing]

    # -- mutations ----------------------------------------------------------

    def _log(self, ev: Event) -> None:
        self.trace.events.append(ev)

    def _drop_blob(self, v: int) -> None:
        for x in self.trace.blob(v):
            self.trace.owner[x] = None
        self.trace.blobs.pop(v, None)

    def delete_vertex(self, v: int) -> None:
        g, tr = self.graph, self.trace
        for w in list(g.neighbors(v)) + [v]:
            tr.origins.pop(pair(v, w), None)
        g.remove_vertex(v)
        self._drop_blob(v)
        self._log(VertexDeleted(v))

    def delete_vertices(self, vs: Iterable[int]) -> None:
        for v in sorted(set(vs)):
            if v in self.graph:
                self.delete_vertex(v)

    def remove_edge_copy(self, u: int, v: int, index: int = -1) -> None:
        key = pair(u, v)
        paths = self.trace.origins[key]
        paths.pop(index)
        if not paths:
            del self.trace.origins[key]
        self.graph.remove_edge(u, v)
        self._log(EdgeRemoved(u, v))

    def keep_copies(self, u: int, v: int, keep: int) -> None:
        """Drop the highest-indexed copies of ``{u, v}`` until ``keep`` remain."""
        old = self.graph.multiplicity(u, v)
        if old <= keep:
            return
        key = pair(u, v)
        del self.trace.origins[key][keep:]
        if keep == 0:
            del self.trace.origins[key]
        self.graph.set_multiplicity(u, v, keep)
        self._log(MultiplicityClamped(key[0], key[1], old, keep))

    def contract(self, u: int, v: int, index: int = 0) -> None:
        """Merge ``v`` into ``u`` along copy ``index`` of edge ``{u, v}``."""
        g, tr = self.graph, self.trace
        if u == v or g.multiplicity(u, v) < 1:
            raise ValueError(f"no edge {{{u},{v}}} to contract")
        used = tr.oriented(u, v, index)
        rest = [tr.oriented(u, v, i) for i in range(g.multiplicity(u, v)) if i != index]
        del tr.origins[pair(u, v)]
        loops_v = tr.origins.pop((v, v), [])
        moved: list[tuple[int, Path]] = []
        for w in g.neighbors(v):
            if w == u:
                continue
            for i in range(g.multiplicity(v, w)):
                moved.append((w, tr.oriented(v, w, i)))
            del tr.origins[pair(v, w)]

        tree_u = tr.blobs.pop(u, None) or {u: []}
        tree_v = tr.blobs.pop(v, None) or {v: []}
        tree = {a: list(b) for a, b in tree_u.items()}
        for a, b in tree_v.items():
            tree[a] = list(b)
        for a, b in zip(used, used[1:]):
            tree.setdefault(a, []).append(b)
            tree.setdefault(b, []).append(a)
        tr.blobs[u] = tree
        for x in tree:
            tr.owner[x] = u

        contract_counts(g, u, v)
        loop_list = tr.origins.setdefault((u, u), [])
        loop_list.extend(rest)
        loop_list.extend(loops_v)
        if not loop_list:
            del tr.origins[(u, u)]
        for w, path in moved:
            key = pair(u, w)
            tr.origins.setdefault(key, []).append(path if u <= w else path[::-1])
        self._log(EdgeContracted(u, v, index))

    def collapse(self, v: int) -> tuple[int, int]:
        """Rule A2 on ``v``: degree exactly two, no self-loop."""
        g, tr = self.graph, self.trace
        if g.loops(v) or g.degree(v) != 2:
            raise ValueError(f"vertex {v} is not a loop-free degree-2 vertex")
        nbrs = g.neighbors(v)
        if len(nbrs) == 1:
            a = b = nbrs[0]
            e1 = tr.oriented(a, v, 0)
            e2 = tr.oriented(v, b, 1)
        else:
            a, b = nbrs
            e1 = tr.oriented(a, v, 0)
            e2 = tr.oriented(v, b, 0)
        mid = tr.blob_path(v, e1[-1], e2[0])
        path = e1[:-1] + tuple(mid) + e2[1:]
        for w in nbrs:
            del tr.origins[pair(v, w)]
        g.remove_vertex(v)
        self._drop_blob(v)
        g.add_edge(a, b)
        key = pair(a, b)
        tr.origins.setdefault(key, []).append(path if a <= b else path[::-1])
        self._log(PathCollapsed(v, a, b, path))
        return a, b


def contract_edge(g: MultiGraph, u: int, v: int) -> tuple[MultiGraph, TransformTrace]:
    """Contract one copy of ``{u, v}``; ``u`` survives."""
    if u == v or g.multiplicity(u, v) < 1:
        raise ValueError(f"no edge {{{u},{v}}} to contract")
    tg = TracedGraph.of(g)
    tg.contract(u, v)
    return tg.graph, tg.trace


def lift_cycle_through_contraction(trace: TransformTrace, current: MultiGraph,
                                   cycle: Sequence[int]) -> list[int]:
    return trace.lift_cycle(current, cycle)
