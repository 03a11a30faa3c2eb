"""Short-cycle hitting set S, size bounds, leaf pruning and the forest decomposition."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .erdos_posa import cycles_or_fvs, ep_constant
from .girth import greedy_fvs, shortest_cycle_with_fvs
from .multigraph import MultiGraph, log2_ceil, verify_packing
from .reduce import lift_cycle, project_fvs, reduce
from .trace import TracedGraph


def girth_target(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    if k <= 4:
        return 7
    lk = math.log2(k)
    return max(7, math.floor(48 * lk / math.log2(lk)) + 6)


@dataclass
class SSetResult:
    S: set[int] | None = None
    packing: list[list[int]] | None = None
    rounds: int = 0


def find_s_set(g: MultiGraph, k: int, gval: int, c: int | None = None) -> SSetResult:
    """Either k disjoint cycles of ``g`` or S with girth(reduce(G - S)) > gval and |S| < gval * k."""
    if k < 1 or gval <= 6:
        raise ValueError("need k >= 1 and g > 6")
    ep = cycles_or_fvs(g, k, c)
    if ep.cycles is not None:
        return SSetResult(packing=ep.cycles)
    fvs = ep.fvs
    S: set[int] = set()
    found: list[list[int]] = []
    for rnd in range(k):
        res = reduce(g.without(S))
        proj = project_fvs(res, fvs - S, check=False)
        cyc = shortest_cycle_with_fvs(res.reduced, proj, check=False)
        if cyc is None or len(cyc) > gval:
            return SSetResult(S=S, rounds=rnd)
        found.append(lift_cycle(res, cyc))
        S.update(cyc)
    if not verify_packing(g, found, k):
        raise AssertionError("short cycles peeled off in successive rounds overlap")
    return SSetResult(packing=found, rounds=k)


def core_size_bounds(k: int, gval: int, c: int | None = None) -> tuple[float, float | None]:
    c = ep_constant() if c is None else c
    L = log2_ceil(k)
    ckl = c * k * L
    first = (2 * ckl) ** (1 + 6 / (gval - 6)) + 3 * ckl
    second = None
    if gval == girth_target(k):
        second = 3 * ckl + 2 * c * k * L ** 1.5
    return first, second


def check_core_size_bound(g: MultiGraph, S: set[int], k: int, gval: int, c: int | None = None) -> bool:
    size = len(reduce(g.without(S)).reduced)
    first, second = core_size_bounds(k, gval, c)
    return size <= first and (second is None or size <= second)


# -- leaf pruning ---------------------------------------------------------------


@dataclass
class PruneResult:
    traced: TracedGraph
    deleted: set[int]
    contracted: list[tuple[int, int]]
    marked: set[int]

    @property
    def graph(self) -> MultiGraph:
        return self.traced.graph

    @property
    def trace(self):
        return self.traced.trace


def _outside_degree(g: MultiGraph, v: int, X: set[int]) -> int:
    return sum(m for w, m in g.neighbor_items(v) if w not in X) + 2 * g.loops(v)


def _pairs_of(g: MultiGraph, v: int, X: set[int]) -> list[tuple[int, int]]:
    xs = sorted(w for w, _ in g.neighbor_items(v) if w in X)
    out = [(a, b) for a, b in combinations_with_replacement(xs, 2)
           if a != b or g.multiplicity(v, a) >= 2]
    return out


def prune_low_degree(g: MultiGraph | TracedGraph, X, k: int | None = None) -> PruneResult:
    """Delete or contract low-degree vertices of G - X, keeping a bounded marked reserve.

    A vertex of degree at most one in G - X is kept (marked) while one of the
    vertex pairs it could route a cycle through still has fewer than
    2|X| + 1 marked members.  Every other such vertex is deleted (degree 0)
    or contracted into its only neighbour outside X (degree 1).
    """
    tg = g.copy() if isinstance(g, TracedGraph) else TracedGraph.of(g)
    h = tg.graph
    X = set(X)
    budget = 2 * len(X) + 1
    filled: dict[tuple[int, int], int] = {}
    marked: set[int] = set()
    deleted: set[int] = set()
    contracted: list[tuple[int, int]] = []

    heap = [v for v in h.vertices if v not in X and _outside_degree(h, v, X) <= 1]
    heapq.heapify(heap)
    while heap:
        v = heapq.heappop(heap)
        if v not in h or v in marked or _outside_degree(h, v, X) > 1:
            continue
        pairs = _pairs_of(h, v, X)
        if any(filled.get(p, 0) < budget for p in pairs):
            marked.add(v)
            for p in pairs:
                filled[p] = filled.get(p, 0) + 1
            continue
        out = [w for w, _ in h.neighbor_items(v) if w not in X]
        if not out:
            tg.delete_vertex(v)
            deleted.add(v)
        else:
            z = out[0]
            tg.contract(z, v)
            contracted.append((z, v))
            if z not in marked and _outside_degree(h, z, X) <= 1:
                heapq.heappush(heap, z)
            continue
    return PruneResult(tg, deleted, contracted, marked)


def low_degree_count(g: MultiGraph, X) -> int:
    X = set(X)
    return sum(1 for v in g.vertices if v not in X and _outside_degree(g, v, X) <= 1)


# -- core decomposition -------------------------------------------------------------


@dataclass
class CoreStructure:
    S: set[int]
    R: set[int]
    T: set[int]
    t_leq1: set[int]
    t2: set[int]
    t_geq3: set[int]
    paths: list[list[int]]
    z_p: set[int]
    p_star: list[list[int]]
    pruned_low_degree: int = 0
    stats: dict = field(default_factory=dict)


class GirthPreconditionError(ValueError):
    pass


def _reduced_girth(g: MultiGraph) -> int | None:
    red = reduce(g).reduced
    cyc = shortest_cycle_with_fvs(red, greedy_fvs(red), check=False)
    return None if cyc is None else len(cyc)


def _ordered_path(g: MultiGraph, comp: list[int]) -> list[int]:
    members = set(comp)
    if len(comp) == 1:
        return list(comp)
    ends = [v for v in comp if sum(1 for w in g.neighbors(v) if w in members) <= 1]
    start = min(ends)
    path = [start]
    prev = None
    while True:
        nxt = [w for w in g.neighbors(path[-1]) if w in members and w != prev]
        if not nxt:
            return path
        prev = path[-1]
        path.append(nxt[0])


def core_decomposition(g: MultiGraph | TracedGraph, S, k: int, check: bool = True):
    """Prune around S and R and split the leftover forest T.

    Returns ``(traced_graph, core)``; the traced graph's lineage points to the
    graph that was passed in.
    """
    S = set(S)
    base = g.graph if isinstance(g, TracedGraph) else g
    gi = _reduced_girth(base.without(S))
    if gi is not None and gi <= 6:
        raise GirthPreconditionError(f"girth of the reduced remainder is {gi}, must exceed 6")
    r0 = set(reduce(base.without(S)).reduced.vertices)
    X = S | r0
    pr = prune_low_degree(g, X, k)
    h = pr.graph
    R = set(reduce(h.without(S)).reduced.vertices)
    T = set(h.vertices) - S - R
    forest = h.subgraph(T)
    tdeg = {v: forest.degree(v) for v in T}
    t_leq1 = {v for v in T if tdeg[v] <= 1}
    t2 = {v for v in T if tdeg[v] == 2}
    t_geq3 = {v for v in T if tdeg[v] >= 3}
    paths = [_ordered_path(forest, comp) for comp in forest.components(t2)]
    paths.sort(key=lambda p: p[0])
    z_p = {v for p in paths for v in p if any(w in R for w in h.neighbors(v))}
    p_star: list[list[int]] = []
    for p in paths:
        seg: list[int] = []
        for v in p:
            if v in z_p:
                if seg:
                    p_star.append(seg)
                seg = []
            else:
                seg.append(v)
        if seg:
            p_star.append(seg)
    core = CoreStructure(S, R, T, t_leq1, t2, t_geq3, paths, z_p, p_star,
                         pruned_low_degree=low_degree_count(h, X),
                         stats={"X": len(X), "deleted": len(pr.deleted), "contracted": len(pr.contracted)})
    if check:
        check_core_structure(h, core, len(X))
    return pr.traced, core


def check_core_structure(h: MultiGraph, core: CoreStructure, x_size: int | None = None) -> None:
    """Raise AssertionError if any structural claim about the decomposition fails."""
    forest = h.subgraph(core.T)
    assert forest.is_acyclic(), "leftover part must be a forest"
    for p in core.paths:
        attached = [v for v in p if any(w in core.R for w in h.neighbors(v))]
        assert len(attached) <= 2, f"path {p} has {len(attached)} vertices next to R"
    assert len(core.z_p) <= 2 * len(core.paths)
    assert len(core.p_star) <= 3 * len(core.paths)
    if core.T:
        assert len(core.t_geq3) < len(core.t_leq1)
        assert len(core.paths) < len(core.t_leq1) + len(core.t_geq3)
    for p in core.p_star:
        for v in p:
            assert not any(w in core.R for w in h.neighbors(v)), "inner path vertex next to R"
    if x_size is not None:
        assert core.pruned_low_degree <= x_size ** 2 * (2 * x_size + 1)
