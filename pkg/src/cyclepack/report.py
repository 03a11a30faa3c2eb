"""Benchmark sweep output: a CSV table and a matplotlib figure next to it."""
from __future__ import annotations

import csv
import statistics
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

BENCH_FIELDS = ("model", "params", "seed", "n", "m", "k", "strategy", "decision",
                "instances_tried", "s_size", "reduce_size", "elapsed_ms")


def write_csv(rows: list[dict], path: Path, delimiter: str = ",") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_FIELDS, delimiter=delimiter, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
    return path


def plot_runtime(rows: list[dict], path: Path, title: str = "solve time by instance size") -> Path:
    """Markers for single runs, a median line per (strategy, k); time on a log axis."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    series: dict[tuple[str, int], list[tuple[int, float, str]]] = {}
    for r in rows:
        series.setdefault((r["strategy"], int(r["k"])), []).append(
            (int(r["n"]), max(float(r["elapsed_ms"]), 1e-3), r["decision"]))

    fig, ax = plt.subplots(figsize=(6.4, 4.0), dpi=120)
    markers = {"yes": "o", "no": "x", "inconclusive": "^"}
    for idx, (key, pts) in enumerate(sorted(series.items())):
        color = f"C{idx % 10}"
        by_n: dict[int, list[float]] = {}
        for n, ms, _ in pts:
            by_n.setdefault(n, []).append(ms)
        xs = sorted(by_n)
        ax.plot(xs, [statistics.median(by_n[x]) for x in xs], color=color, alpha=0.6, linewidth=1.2)
        for dec, marker in markers.items():
            sel = [p for p in pts if p[2] == dec]
            if sel:
                ax.scatter([p[0] for p in sel], [p[1] for p in sel], color=color, marker=marker, s=22)
        ax.plot([], [], color=color, label=f"{key[0]}, k={key[1]}")
    for dec, marker in markers.items():
        ax.scatter([], [], color="0.3", marker=marker, label=dec)
    ax.set_yscale("log")
    ax.set_xlabel("vertices in input")
    ax.set_ylabel("elapsed (ms)")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.25)
    ax.legend(fontsize=7, frameon=False, ncol=2)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
