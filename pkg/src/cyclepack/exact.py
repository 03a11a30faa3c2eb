"""Exact decision and search by inclusion-exclusion over closed-walk counts.

For each subset F of vertices the number of k-tuples of closed walks in
G - F (with total vertex count l) is obtained from a walk-count table, and
the signed sum over F counts tuples covering every vertex exactly once,
which are exactly the k-packings (padded with a set of leftover vertices).

A closed walk here is a sequence c_1..c_m with m >= 3, consecutive vertices
adjacent, c_m adjacent to c_1, and c_{m-1} != c_1.  The last condition
removes the length-two walk v, u, v that a simple graph would otherwise
count as a closed walk on one edge.

Two evaluators share that definition: a pure-integer one (used for
``count_Q`` and cross-checks) and a batched one that runs many subsets F at
once modulo several primes below 2**23 in float64 (exact because every
partial sum stays below 2**53) and recovers the total by CRT.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .multigraph import MultiGraph, verify_packing
from .trace import EdgeSubdivided, MultiplicityClamped, VertexDeleted, replay

# -- simplification ----------------------------------------------------------


@dataclass
class SimplifyTrace:
    base: MultiGraph
    events: list = field(default_factory=list)
    added: set[int] = field(default_factory=set)

    def lift_cycle(self, cycle: Iterable[int]) -> list[int]:
        return [v for v in cycle if v not in self.added]

    def replay(self) -> MultiGraph:
        return replay(self.base, self.events)


def simplify_for_dp(g: MultiGraph) -> tuple[MultiGraph, SimplifyTrace]:
    """Replace loops and parallel pairs by triangles so the graph is simple."""
    tr = SimplifyTrace(g.copy())
    s = g.copy()
    for u, v, m in list(s.edges()):
        limit = 1 if u == v else 2
        if m > limit:
            s.set_multiplicity(u, v, limit)
            tr.events.append(MultiplicityClamped(u, v, m, limit))
    for u, v, m in list(s.edges()):
        if u == v:
            a, b = s.new_vertex(), s.new_vertex()
            s.remove_edge(v, v)
            s.add_edge(v, a)
            s.add_edge(a, b)
            s.add_edge(b, v)
            tr.events.append(EdgeSubdivided(v, v, (a, b)))
            tr.added.update((a, b))
        elif m == 2:
            mid = s.new_vertex()
            s.remove_edge(u, v)
            s.add_edge(u, mid)
            s.add_edge(mid, v)
            tr.events.append(EdgeSubdivided(u, v, (mid,)))
            tr.added.add(mid)
    return s, tr


def _dense(g: MultiGraph) -> tuple[list[int], list[list[int]]]:
    verts = g.vertices
    index = {v: i for i, v in enumerate(verts)}
    adj = [[index[w] for w in g.neighbors(v)] for v in verts]
    return verts, adj


# -- exact integer evaluation --------------------------------------------------


def _closing_sums(adj: list[list[int]], alive: list[bool], k: int, jmax: int) -> dict[tuple[int, int], int]:
    """s[(i, j)] = number of tuples whose i-th walk has just closed at cumulative size j + 1.

    Concretely s(i, j) = sum_p sum_{q in N(p)} sum_{w in N(q), w != p} M[i][j][p][w].
    """
    n = len(adj)
    nbr = [[w for w in adj[u] if alive[w]] if alive[u] else [] for u in range(n)]
    live = [v for v in range(n) if alive[v]]
    cur = {i: [[0] * n for _ in range(n)] for i in range(1, k + 1)}
    for v in live:
        cur[1][v][v] = 1
    sums: dict[tuple[int, int], int] = {}

    def close(mat: list[list[int]]) -> int:
        total = 0
        for p in live:
            row = mat[p]
            for q in nbr[p]:
                for w in nbr[q]:
                    if w != p:
                        total += row[w]
        return total

    for i in range(1, k + 1):
        sums[(i, 1)] = close(cur[i])
    for j in range(2, jmax + 1):
        nxt = {}
        for i in range(1, k + 1):
            old = cur[i]
            mat = [[0] * n for _ in range(n)]
            for v in live:
                orow, mrow = old[v], mat[v]
                for u in live:
                    mrow[u] = sum(orow[w] for w in nbr[u])
            if i >= 2 and j >= 3:
                splice = sums[(i - 1, j - 2)]
                if splice:
                    for v in live:
                        mat[v][v] += splice
            nxt[i] = mat
        cur = nxt
        for i in range(1, k + 1):
            sums[(i, j)] = close(cur[i])
    return sums


def count_Q(g: MultiGraph, fvs: Iterable[int], k: int, ell: int) -> int:
    """Number of k-tuples of closed walks in ``g - fvs`` with ``ell`` vertices in total."""
    n = len(g)
    if not 2 * k <= ell <= n:
        raise ValueError(f"ell must lie in [{2 * k}, {n}], got {ell}")
    verts, adj = _dense(g)
    gone = set(fvs)
    alive = [v not in gone for v in verts]
    return _closing_sums(adj, alive, k, ell - 1)[(k, ell - 1)]


def ie_signed_sum_exact(g: MultiGraph, k: int) -> int:
    """Signed inclusion-exclusion total with unbounded integers, one F at a time."""
    n = len(g)
    if n < 2 * k:
        return 0
    verts, adj = _dense(g)
    total = 0
    for mask in range(1 << n):
        alive = [not (mask >> i & 1) for i in range(n)]
        f = n - sum(alive)
        sums = _closing_sums(adj, alive, k, n - 1)
        term = sum(sums[(k, ell - 1)] * math.comb(n - f, n - ell) for ell in range(2 * k, n + 1))
        total += -term if f % 2 else term
    return total


# -- batched modular evaluation ------------------------------------------------

_PRIME_TOP = 1 << 23


def _primes_below(top: int, count: int) -> list[int]:
    out = []
    x = top - 1
    while len(out) < count:
        if x % 2 and all(x % d for d in range(3, math.isqrt(x) + 1, 2)):
            out.append(x)
        x -= 1
    return out


def universe_bound(n: int, k: int, max_degree: int) -> int:
    """Upper bound on the size of the tuple universe; the signed total lies in [0, bound]."""
    d = max(max_degree, 1)
    return sum(math.comb(ell - 1, k - 1) * n ** k * d ** ell * math.comb(n, n - ell)
               for ell in range(2 * k, n + 1))


def _batched_total(adj: list[list[int]], k: int, primes: list[int], memory_bytes: int) -> list[int]:
    n = len(adj)
    if n * primes[0] ** 2 >= 1 << 53:
        raise ValueError("graph too large for the float64 evaluator")
    A = np.zeros((n, n))
    for u, nb in enumerate(adj):
        A[u, nb] = 1.0
    P = len(primes)
    pv = np.array(primes, dtype=np.float64)
    p4 = pv.reshape(P, 1, 1, 1)
    p2 = pv.reshape(P, 1)
    pint = np.array(primes, dtype=np.int64).reshape(P, 1)
    binom = np.zeros((P, n + 1, n + 1), dtype=np.int64)
    for f in range(n + 1):
        for ell in range(n + 1):
            c = math.comb(n - f, n - ell)
            binom[:, f, ell] = [c % p for p in primes]

    per_subset = P * n * n * 8 * (k + 4)
    batch = int(max(1, min(1 << n, 1024, memory_bytes // per_subset)))
    diag = np.arange(n)
    shifts = np.arange(n)
    totals = [0] * P
    for start in range(0, 1 << n, batch):
        idx = np.arange(start, min(start + batch, 1 << n), dtype=np.int64)
        B = len(idx)
        infs = (idx[:, None] >> shifts) & 1
        keep = (1 - infs).astype(np.float64)
        fsize = infs.sum(axis=1)
        sign = np.where(fsize % 2 == 1, -1, 1).astype(np.int64)
        deg = (keep @ A) * keep
        colmask = keep[None, :, None, :]

        mats: dict[int, np.ndarray] = {}
        first = np.zeros((P, B, n, n))
        first[:, :, diag, diag] = keep[None, :, :]
        mats[1] = first
        for i in range(2, k + 1):
            mats[i] = np.zeros((P, B, n, n))
        sums: dict[tuple[int, int], np.ndarray] = {}
        zero = np.zeros((P, B))

        def closing(mat: np.ndarray, nxt: np.ndarray) -> np.ndarray:
            s = (nxt * A).sum(axis=(2, 3)) - (mat[:, :, diag, diag] * deg[None]).sum(axis=2)
            return np.mod(s, p2)

        for j in range(2, n + 1):
            new: dict[int, np.ndarray] = {}
            for i in range(1, k + 1):
                if j - 1 < 3 * (i - 1) + 1:
                    sums[(i, j - 1)] = zero
                    new[i] = mats[i]
                    continue
                nxt = (mats[i].reshape(P * B * n, n) @ A).reshape(P, B, n, n)
                nxt *= colmask
                np.fmod(nxt, p4, out=nxt)
                sums[(i, j - 1)] = closing(mats[i], nxt)
                new[i] = nxt
            for i in range(2, k + 1):
                if j >= 3 and (i - 1, j - 2) in sums:
                    add = sums[(i - 1, j - 2)]
                    if add is not zero:
                        new[i][:, :, diag, diag] += add[:, :, None] * keep[None, :, :]
                        np.fmod(new[i], p4, out=new[i])
            mats = new
        acc = np.zeros((P, B), dtype=np.int64)
        for ell in range(2 * k, n + 1):
            q = sums[(k, ell - 1)].astype(np.int64)
            acc = (acc + q * binom[:, fsize, ell]) % pint
        part = (acc * sign[None, :]).sum(axis=1)
        for t in range(P):
            totals[t] = (totals[t] + int(part[t])) % primes[t]
    return totals


def _crt(residues: list[int], primes: list[int]) -> int:
    x, mod = 0, 1
    for r, p in zip(residues, primes):
        t = ((r - x) * pow(mod, -1, p)) % p
        x += mod * t
        mod *= p
    return x


def ie_signed_sum(g: MultiGraph, k: int, memory_bytes: int = 48 << 20) -> int:
    """Exact signed total for a simple graph, via the batched modular evaluator."""
    n = len(g)
    if n < 2 * k:
        return 0
    verts, adj = _dense(g)
    bound = universe_bound(n, k, max((len(a) for a in adj), default=0))
    count = 1
    while True:
        primes = _primes_below(_PRIME_TOP, count)
        if math.prod(primes) > bound:
            break
        count += 1
    return _crt(_batched_total(adj, k, primes, memory_bytes), primes)


# -- decision and search -------------------------------------------------------


def _take_loops(g: MultiGraph, k: int) -> tuple[MultiGraph, int, list[list[int]]]:
    """A vertex with a loop can always serve as its own cycle."""
    h = g.copy()
    taken = []
    for v in g.loop_vertices():
        if k <= 0:
            break
        taken.append([v])
        h.remove_vertex(v)
        k -= 1
    return h, k, taken


def ie_decide(g: MultiGraph, k: int, preprocess: bool = True, exact_ints: bool = False) -> bool:
    """True iff ``g`` has ``k`` vertex-disjoint cycles.

    ``preprocess`` first applies the answer-preserving reduction rules so the
    exponential part runs on fewer vertices.  With ``preprocess=False`` only
    loop removal and simplification happen before the signed sum.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if preprocess:
        from .reduce import reduce
        g = reduce(g).reduced
    h, k, _ = _take_loops(g, k)
    if k <= 0:
        return True
    s, _ = simplify_for_dp(h)
    if len(s) < 3 * k or s.is_acyclic():
        return False
    total = ie_signed_sum_exact(s, k) if exact_ints else ie_signed_sum(s, k)
    if total < 0:
        raise AssertionError("signed total is negative; the evaluator is broken")
    return total > 0


def _cycles_of(h: MultiGraph) -> list[list[int]]:
    out = []
    for comp in h.components():
        if len(comp) == 1 and not h.loops(comp[0]):
            continue
        loops = [v for v in comp if h.loops(v)]
        if loops:
            out.append([loops[0]])
            continue
        if len(comp) == 2 and h.multiplicity(comp[0], comp[1]) >= 2:
            out.append(comp)
            continue
        cyc = [comp[0]]
        prev = None
        while True:
            nxt = [w for w in h.neighbors(cyc[-1]) if w != prev]
            if nxt[0] == cyc[0]:
                break
            prev = cyc[-1]
            cyc.append(nxt[0])
        out.append(cyc)
    return out


def ie_search(g: MultiGraph, k: int, preprocess: bool = True) -> list[list[int]] | None:
    """A certified k-packing found by edge-minimalization, or None."""
    if not ie_decide(g, k, preprocess):
        return None
    h = g.copy()
    for u, v, m in list(h.edges()):
        limit = 1 if u == v else 2
        if m > limit:
            h.set_multiplicity(u, v, limit)
    for u, v, m in list(h.edges()):
        for _ in range(m):
            h.remove_edge(u, v)
            if not ie_decide(h, k, preprocess):
                h.add_edge(u, v)
                break
    cycles = _cycles_of(h)
    if len(cycles) < k:
        raise AssertionError("edge-minimal yes-instance holds fewer than k cycles")
    packing = cycles[:k]
    if not verify_packing(g, packing, k):
        raise AssertionError("self-reduction produced an invalid packing")
    return packing
