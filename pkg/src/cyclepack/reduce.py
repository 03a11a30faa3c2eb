"""Reduction rules A1 (drop degree <= 1), A2 (bypass degree 2) and A3 (clamp multiplicity).

The rules are applied by a worklist until none fires.  Surviving vertices
keep their identifiers, so the reduced vertex set is literally the set of
original vertices that were never deleted.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .multigraph import MultiGraph, is_fvs
from .trace import TracedGraph, TransformTrace

MAX_MULTIPLICITY = 2


def reduce_in_place(tg: TracedGraph, seeds: Iterable[int] | None = None) -> None:
    """Run A1-A3 to a fixed point on ``tg``, logging every step in its trace."""
    g = tg.graph
    work = deque(sorted(g.vertices if seeds is None else set(seeds)))
    queued = set(work)

    def push(x: int) -> None:
        if x not in queued and x in g:
            queued.add(x)
            work.append(x)

    while work:
        v = work.popleft()
        queued.discard(v)
        if v not in g:
            continue
        if g.loops(v) > MAX_MULTIPLICITY:
            tg.keep_copies(v, v, MAX_MULTIPLICITY)
        for w, m in sorted(g.neighbor_items(v)):
            if m > MAX_MULTIPLICITY:
                tg.keep_copies(v, w, MAX_MULTIPLICITY)
                push(w)
        d = g.degree(v)
        if d <= 1:
            nbrs = g.neighbors(v)
            tg.delete_vertex(v)
            for w in nbrs:
                push(w)
        elif d == 2 and not g.loops(v):
            a, b = tg.collapse(v)
            push(a)
            push(b)


@dataclass
class ReduceResult:
    reduced: MultiGraph
    trace: TransformTrace

    @property
    def pre_image(self) -> set[int]:
        return set(self.reduced.vertices)

    @property
    def edge_origin(self) -> dict[tuple[int, int], list[tuple[int, ...]]]:
        return self.trace.origins

    def representative(self, v: int) -> int | None:
        return self.trace.representative(v)

    def __len__(self) -> int:
        return len(self.reduced)


def reduce(g: MultiGraph) -> ReduceResult:
    tg = TracedGraph.of(g)
    reduce_in_place(tg)
    return ReduceResult(tg.graph, tg.trace)


def lift_cycle(res: ReduceResult, cycle: Sequence[int]) -> list[int]:
    return res.trace.lift_cycle(res.reduced, cycle)


def lift_packing(res: ReduceResult, packing: Iterable[Sequence[int]]) -> list[list[int]]:
    return [lift_cycle(res, c) for c in packing]


def project_fvs(res: ReduceResult, fvs: Iterable[int], check: bool = True) -> set[int]:
    """Map a feedback vertex set of the input graph onto the reduced graph.

    A vertex that survives (or was merged) maps to its current vertex.  A
    vertex hidden inside a reduced edge maps to one endpoint of that edge.
    Deleted vertices are dropped.
    """
    fvs = set(fvs)
    if check and not is_fvs(res.trace.base, fvs):
        raise ValueError("given set is not a feedback vertex set of the input graph")
    inside = None
    out: set[int] = set()
    for f in sorted(fvs):
        rep = res.trace.representative(f)
        if rep is not None:
            out.add(rep)
            continue
        if inside is None:
            inside = res.trace.interior_owner()
        key = inside.get(f)
        if key is not None:
            out.add(key[0])
    return out
