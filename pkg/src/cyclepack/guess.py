"""Stream of compressed instances obtained by guessing how S meets a solution.

For every vertex of S we guess whether it is used by the solution and, if so,
which two "objects" hold its cycle neighbours.  An object is a single vertex
of S, R, T<=1, T>=3 or Z_P, or a whole inner path of the forest.  Guesses that
name a path are resolved to concrete vertices by a greedy left-to-right scan
that follows a guessed order of the path entries.

Each instance keeps, at every used vertex of S, only the edge copies it was
guessed to use, deletes the unused vertices of S, and reduces the result.
That graph is a subgraph of the input, so any packing it has is a packing of
the input, and lifting goes through the same lineage as every other stage.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Iterator

from .decompose import CoreStructure
from .multigraph import MultiGraph, verify_packing
from .reduce import reduce, reduce_in_place
from .trace import TracedGraph

# Slot options: ("v", o) a vertex object, ("p", i) inner path i.
# Whole-vertex options: ("dp", i) a double edge into path i, ("self",) a loop.


@dataclass
class GuessInstance:
    index: int
    g_prime: MultiGraph
    deleted: frozenset[int]
    neighbor_assign: dict[int, tuple]
    order: dict[int, tuple]
    resolved: dict[int, tuple[int, int]]
    e_prime: list[tuple[int, int]]
    traced: TracedGraph = field(repr=False)


@dataclass(frozen=True)
class Truncated:
    """End-of-stream marker: the budget ran out before the stream was exhausted."""

    yielded: int


def _options(h: MultiGraph, v: int, core: CoreStructure, tilde: set[int],
             path_of: dict[int, tuple[int, int]], used: set[int]) -> list[tuple]:
    slot: list[tuple] = []
    on_path: Counter = Counter()
    double_on: set[int] = set()
    for w in h.neighbors(v):
        if w in tilde:
            if w in core.S and w not in used:
                continue
            slot.append(("v", w))
        elif w in path_of:
            i = path_of[w][0]
            on_path[i] += 1
            if h.multiplicity(v, w) >= 2:
                double_on.add(i)
    slot += [("p", i) for i in sorted(on_path)]
    out: list[tuple] = []
    for a, b in combinations_with_replacement(slot, 2):
        if a == b:
            if a[0] == "v" and h.multiplicity(v, a[1]) < 2:
                continue
            if a[0] == "p" and on_path[a[1]] < 2:
                continue
        out.append((a, b))
    out += [(("dp", i),) for i in sorted(double_on)]
    if h.loops(v):
        out.append((("self",),))
    return out


def _s_count(choice: tuple, u: int) -> int:
    return sum(1 for opt in choice if opt == ("v", u))


def _assignments(order: list[int], opts: dict[int, list[tuple]], S: set[int]) -> Iterator[dict[int, tuple]]:
    """Backtracking over per-vertex choices with symmetric S-S counts."""
    chosen: dict[int, tuple] = {}

    def consistent(v: int, choice: tuple) -> bool:
        for u in order:
            if u in chosen and _s_count(choice, u) != _s_count(chosen[u], v):
                return False
        return True

    def rec(i: int) -> Iterator[dict[int, tuple]]:
        if i == len(order):
            yield dict(chosen)
            return
        v = order[i]
        for choice in opts[v]:
            if consistent(v, choice):
                chosen[v] = choice
                yield from rec(i + 1)
                del chosen[v]

    yield from rec(0)


def _block_orders(entries: list[tuple[int, str]]) -> Iterator[tuple]:
    """Distinct ordered partitions of the entries into blocks.

    A block is one entry, or two single entries of different vertices that
    will share one path vertex.
    """
    remaining = Counter(entries)

    def rec(prefix: list[tuple]) -> Iterator[tuple]:
        if not +remaining:
            yield tuple(prefix)
            return
        kinds = sorted(e for e, c in remaining.items() if c > 0)
        for e in kinds:
            remaining[e] -= 1
            prefix.append((e,))
            yield from rec(prefix)
            prefix.pop()
            remaining[e] += 1
        for e1, e2 in combinations(kinds, 2):
            if e1[1] == "single" and e2[1] == "single" and e1[0] != e2[0]:
                remaining[e1] -= 1
                remaining[e2] -= 1
                prefix.append((e1, e2))
                yield from rec(prefix)
                prefix.pop()
                remaining[e1] += 1
                remaining[e2] += 1

    yield from rec([])


def _resolve_path(h: MultiGraph, path: list[int], blocks: tuple) -> list[tuple[tuple[int, str], int]] | None:
    out = []
    last = -1
    for block in blocks:
        pick = None
        for q in range(last + 1, len(path)):
            p = path[q]
            if all(h.multiplicity(v, p) >= (2 if kind == "double" else 1) for v, kind in block):
                pick = q
                break
        if pick is None:
            return None
        last = pick
        for e in block:
            out.append((e, path[pick]))
    return out


def enumerate_instances(traced: TracedGraph, k: int, core: CoreStructure,
                        budget: int | None = None) -> Iterator[GuessInstance | Truncated]:
    h = traced.graph
    S = sorted(core.S)
    tilde = set(core.S) | core.R | core.t_leq1 | core.t_geq3 | core.z_p
    path_of = {v: (i, j) for i, p in enumerate(core.p_star) for j, v in enumerate(p)}
    base_size = len(reduce(h.without(core.S)).reduced)
    count = 0

    for size in range(len(S) + 1):
        for used_t in combinations(S, size):
            used = set(used_t)
            deleted = frozenset(core.S - used)
            opts = {v: _options(h, v, core, tilde, path_of, used) for v in used_t}
            for assign in _assignments(list(used_t), opts, set(core.S)):
                entries: dict[int, list[tuple[int, str]]] = {}
                for v, choice in assign.items():
                    for opt in choice:
                        if opt[0] == "p":
                            entries.setdefault(opt[1], []).append((v, "single"))
                        elif opt[0] == "dp":
                            entries.setdefault(opt[1], []).append((v, "double"))
                paths = sorted(entries)
                seen: set = set()
                for orders in product(*(list(_block_orders(entries[i])) for i in paths)):
                    picks: dict[int, list[int]] = {v: [] for v in used_t}
                    ok = True
                    for i, blocks in zip(paths, orders):
                        res = _resolve_path(h, core.p_star[i], blocks)
                        if res is None:
                            ok = False
                            break
                        for (v, kind), p in res:
                            picks[v] += [p, p] if kind == "double" else [p]
                    if not ok:
                        continue
                    for v, choice in assign.items():
                        for opt in choice:
                            if opt[0] == "v":
                                picks[v].append(opt[1])
                            elif opt[0] == "self":
                                picks[v] += [v, v]
                    resolved = {v: tuple(sorted(picks[v])) for v in used_t}
                    sig = tuple(sorted(resolved.items()))
                    if sig in seen:
                        continue
                    seen.add(sig)
                    if budget is not None and count >= budget:
                        yield Truncated(count)
                        return
                    inst = _build(traced, count, deleted, assign, dict(zip(paths, orders)), resolved)
                    bound = base_size + 2 * len(used)
                    assert len(inst.g_prime) <= bound, (
                        f"instance has {len(inst.g_prime)} vertices, bound is {bound}")
                    count += 1
                    yield inst


def _build(traced: TracedGraph, index: int, deleted: frozenset[int], assign: dict,
           order: dict, resolved: dict[int, tuple[int, int]]) -> GuessInstance:
    tg = traced.copy()
    tg.delete_vertices(deleted)
    g = tg.graph
    for v, (x, y) in resolved.items():
        want = Counter((x, y))
        if x == v:
            want = Counter({v: 1})
        for w in g.neighbors(v):
            tg.keep_copies(v, w, want.get(w, 0))
        tg.keep_copies(v, v, want.get(v, 0))
    e_prime = [(x, y) for v, (x, y) in sorted(resolved.items())]
    reduce_in_place(tg)
    return GuessInstance(index, tg.graph, deleted, assign, order, resolved, e_prime, tg)


def lift_packing(inst: GuessInstance, packing, k: int | None = None) -> list[list[int]]:
    packing = [list(c) for c in packing]
    k = len(packing) if k is None else k
    if not verify_packing(inst.g_prime, packing, k):
        raise ValueError("packing does not certify in the instance graph")
    return inst.traced.lift_packing(packing)
