"""DIMACS-like text format for simple graphs.

Layout: optional comment lines ``c ...``, one problem line
``p edge <n> <m>``, then ``m`` edge lines ``e <u> <v>`` with 1-based
vertex ids.  The writer emits edges sorted ascending; the reader rejects
self-loops, duplicate edges, and count mismatches, reporting the
offending line number.
"""

from __future__ import annotations

import os
from typing import IO, Iterable, Union

from .graphs import Graph

PathOrFile = Union[str, os.PathLike, IO[str]]


class DimacsError(ValueError):
    """Malformed DIMACS input; the message carries the line number."""


def write_dimacs(g: Graph, target: PathOrFile, comments: Iterable[str] = ()) -> None:
    lines = [f"c {line}".rstrip() for line in comments]
    lines.append(f"p edge {g.n} {len(g.edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    text = "\n".join(lines) + "\n"
    if hasattr(target, "write"):
        target.write(text)  # type: ignore[union-attr]
    else:
        with open(target, "w", encoding="ascii") as fh:
            fh.write(text)


def read_dimacs(source: PathOrFile) -> Graph:
    if hasattr(source, "read"):
        text = source.read()  # type: ignore[union-attr]
    else:
        with open(source, "r", encoding="ascii") as fh:
            text = fh.read()

    n = -1
    m_declared = -1
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n >= 0:
                raise DimacsError(f"line {lineno}: duplicate problem line")
            if len(tokens) != 4 or tokens[1] != "edge":
                raise DimacsError(f"line {lineno}: expected 'p edge <n> <m>'")
            try:
                n, m_declared = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer problem parameters") from None
            if n < 0 or m_declared < 0:
                raise DimacsError(f"line {lineno}: negative problem parameters")
        elif tokens[0] == "e":
            if n < 0:
                raise DimacsError(f"line {lineno}: edge before problem line")
            if len(tokens) != 3:
                raise DimacsError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer endpoint") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(f"line {lineno}: endpoint out of range 1..{n}")
            if u == v:
                raise DimacsError(f"line {lineno}: self-loop at vertex {u}")
            key = (u - 1, v - 1) if u < v else (v - 1, u - 1)
            if key in seen:
                raise DimacsError(f"line {lineno}: duplicate edge {u} {v}")
            seen.add(key)
            edges.append(key)
        else:
            raise DimacsError(f"line {lineno}: unknown record {tokens[0]!r}")
    if n < 0:
        raise DimacsError("line 0: missing problem line")
    if len(edges) != m_declared:
        raise DimacsError(
            f"line 0: problem line declares {m_declared} edges, found {len(edges)}"
        )
    return Graph(n, edges)
