"""End-to-end solver: kernel pipeline, direct exact solver, or brute force."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .decompose import check_core_size_bound, core_decomposition, find_s_set, girth_target
from .exact import ie_decide, ie_search, simplify_for_dp
from .guess import Truncated, enumerate_instances, lift_packing
from .multigraph import MultiGraph, discard_excess_edges, verify_packing
from .oracle import girth_bruteforce, max_cycle_packing_bruteforce
from .reduce import reduce

STRATEGIES = ("paper", "ie", "oracle", "auto")


@dataclass
class SolveConfig:
    strategy: str = "auto"
    budget: int | None = None
    c_override: int | None = None
    auto_ie_limit: int = 16
    girth_check_limit: int = 40


@dataclass
class Decision:
    decision: str
    k: int
    packing: list[list[int]] | None
    stats: dict = field(default_factory=dict)
    strategy: str = ""


def _certified(g: MultiGraph, k: int, packing, stats: dict, strategy: str) -> Decision:
    packing = [list(c) for c in packing][:k]
    if not verify_packing(g, packing, k):
        raise AssertionError("refusing to report an uncertified packing")
    return Decision("yes", k, packing, stats, strategy)


def _solve_kernel(g: MultiGraph, k: int, cfg: SolveConfig, stats: dict) -> Decision:
    gval = girth_target(k)
    stats["g"] = gval
    g1, _ = discard_excess_edges(g, k, cfg.c_override)
    sres = find_s_set(g1, k, gval, cfg.c_override)
    if sres.packing is not None:
        stats["stage"] = "short-cycles"
        stats["reduce_size"] = 0
        return _certified(g, k, sres.packing, stats, "paper")
    S = sres.S
    stats["s_size"] = len(S)
    if len(S) >= gval * k:
        raise AssertionError(f"|S| = {len(S)} is not below g*k = {gval * k}")
    core_graph = reduce(g1.without(S)).reduced
    stats["reduce_size"] = len(core_graph)
    if len(core_graph) <= cfg.girth_check_limit:
        gi = girth_bruteforce(core_graph)
        if gi is not None and gi <= gval:
            raise AssertionError(f"reduced remainder has girth {gi} <= {gval}")
    if not check_core_size_bound(g1, S, k, gval, cfg.c_override):
        raise AssertionError("reduced remainder exceeds the core size bound")

    stats["stage"] = "guess"
    traced, core = core_decomposition(g1, S, k)
    for inst in enumerate_instances(traced, k, core, cfg.budget):
        if isinstance(inst, Truncated):
            return Decision("inconclusive", k, None, stats, "paper")
        stats["instances_tried"] += 1
        if ie_decide(inst.g_prime, k):
            found = ie_search(inst.g_prime, k)
            return _certified(g, k, lift_packing(inst, found, k), stats, "paper")
    return Decision("no", k, None, stats, "paper")


def solve(g: MultiGraph, k: int, config: SolveConfig | None = None) -> Decision:
    cfg = config or SolveConfig()
    if k < 1:
        raise ValueError("k must be >= 1")
    if cfg.strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {cfg.strategy!r}")
    start = time.perf_counter()
    stats = {"instances_tried": 0, "s_size": 0, "reduce_size": 0, "g": girth_target(k), "elapsed_ms": 0.0}
    strategy = cfg.strategy
    if strategy == "auto":
        reduced = reduce(g).reduced
        simple, _ = simplify_for_dp(reduced)
        strategy = "ie" if len(simple) <= cfg.auto_ie_limit else "paper"

    if strategy == "paper":
        out = _solve_kernel(g, k, cfg, stats)
    else:
        stats["reduce_size"] = len(reduce(g).reduced)
        if strategy == "ie":
            found = ie_search(g, k)
        else:
            k_max, best = max_cycle_packing_bruteforce(g)
            found = best if k_max >= k else None
        out = _certified(g, k, found, stats, strategy) if found else Decision("no", k, None, stats, strategy)
    out.stats["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return out


def decision_json(d: Decision, c_override: int | None = None) -> dict:
    """Report dictionary with 1-based vertex numbers, as written by the CLI."""
    report = {
        "decision": d.decision,
        "k": d.k,
        "packing": None if d.packing is None else [[v + 1 for v in c] for c in d.packing],
        "stats": {key: d.stats[key] for key in ("instances_tried", "s_size", "reduce_size", "g", "elapsed_ms")},
    }
    if c_override is not None:
        report["test_only_c_override"] = c_override
    return report
