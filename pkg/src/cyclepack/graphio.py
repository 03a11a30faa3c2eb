"""Text format for multigraphs.

    c any comment
    p cycp <n> <m>
    e <u> <v> [mult]

Vertices are numbered 1..n in the file and 0..n-1 in memory.  ``u == v``
is a self-loop, ``mult`` defaults to 1 and ``m`` counts edge lines.
"""
from __future__ import annotations

from .multigraph import MultiGraph


class GraphFormatError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def parse_graph(data: bytes | str) -> MultiGraph:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    n = m = None
    seen = 0
    g = MultiGraph()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError(lineno, "duplicate header")
            if len(parts) != 4 or parts[1] != "cycp":
                raise GraphFormatError(lineno, "header must be 'p cycp <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(lineno, "header counts must be integers") from None
            if n < 0 or m < 0:
                raise GraphFormatError(lineno, "header counts must be nonnegative")
            for v in range(n):
                g.add_vertex(v)
        elif tag == "e":
            if n is None:
                raise GraphFormatError(lineno, "edge before header")
            if len(parts) not in (3, 4):
                raise GraphFormatError(lineno, "edge line must be 'e <u> <v> [mult]'")
            try:
                u, v = int(parts[1]), int(parts[2])
                mult = int(parts[3]) if len(parts) == 4 else 1
            except ValueError:
                raise GraphFormatError(lineno, "edge fields must be integers") from None
            for x in (u, v):
                if not 1 <= x <= n:
                    raise GraphFormatError(lineno, f"vertex {x} out of range 1..{n}")
            if mult < 1:
                raise GraphFormatError(lineno, "multiplicity must be at least 1")
            g.add_edge(u - 1, v - 1, mult)
            seen += 1
        else:
            raise GraphFormatError(lineno, f"unknown line type {tag!r}")
    if n is None:
        raise GraphFormatError(0, "missing header")
    if seen != m:
        raise GraphFormatError(0, f"header announces {m} edge lines, found {seen}")
    return g


def emit_graph(g: MultiGraph, comment: str | None = None) -> bytes:
    verts = g.vertices
    index = {v: i + 1 for i, v in enumerate(verts)}
    edges = list(g.edges())
    lines = []
    if comment:
        lines += [f"c {row}" for row in comment.splitlines()]
    lines.append(f"p cycp {len(verts)} {len(edges)}")
    for u, v, mult in edges:
        tail = f" {mult}" if mult != 1 else ""
        lines.append(f"e {index[u]} {index[v]}{tail}")
    return ("\n".join(lines) + "\n").encode("utf-8")
