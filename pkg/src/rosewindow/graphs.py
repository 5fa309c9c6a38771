"""Immutable simple graphs on contiguous integer vertex ids.

Adjacency is stored as one Python int bitmask per vertex: the partition
refinement inner loops downstream are dominated by masked popcounts, which
CPython big-ints handle quickly at the few-hundred-vertex scale this
package targets.  Edges are kept as sorted pairs in lexicographic order so
that iteration, equality and serialized output are bit-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Invalid graph construction or malformed operand."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Instances are immutable after construction (pure-value semantics, safe
    to share across threads and processes).  Construction deduplicates
    edges; self-loops and out-of-range endpoints are rejected.
    """

    __slots__ = ("n", "edges", "adj")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if vertex_count < 0:
            raise GraphError("vertex count must be non-negative")
        n = int(vertex_count)
        dedup: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            dedup.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(dedup))
        adj = [0] * n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj: tuple[int, ...] = tuple(adj)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def relabel(self, images: Iterable[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``images[v]``."""
        img = list(images)
        if sorted(img) != list(range(self.n)):
            raise GraphError("relabeling is not a bijection on the vertex set")
        return Graph(self.n, ((img[u], img[v]) for u, v in self.edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph({self.n}, {list(self.edges)!r})"


@dataclass(frozen=True)
class VertexPartition:
    """Ordered partition: disjoint non-empty vertex cells; order matters."""

    cells: tuple[tuple[int, ...], ...]

    def __init__(self, cells: Iterable[Iterable[int]]) -> None:
        norm = tuple(tuple(sorted(c)) for c in cells)
        seen: set[int] = set()
        for cell in norm:
            if not cell:
                raise GraphError("partition cells must be non-empty")
            for v in cell:
                if v in seen:
                    raise GraphError(f"vertex {v} appears in two cells")
                seen.add(v)
        object.__setattr__(self, "cells", norm)

    def __len__(self) -> int:
        return len(self.cells)

    def support(self) -> set[int]:
        return {v for cell in self.cells for v in cell}

    def require_partition_of(self, n: int) -> None:
        """Raise unless the cells cover ``0..n-1`` exactly."""
        sup = self.support()
        if len(sup) != n or (sup and (min(sup) < 0 or max(sup) >= n)):
            raise GraphError(f"cells do not partition 0..{n - 1}")

    def cell_index(self, n: int) -> list[int]:
        """Array mapping each vertex to the index of its cell."""
        self.require_partition_of(n)
        idx = [0] * n
        for i, cell in enumerate(self.cells):
            for v in cell:
                idx[v] = i
        return idx


def is_connected(g: Graph) -> bool:
    """Every vertex reachable from vertex 0; the empty graph counts as connected."""
    if g.n <= 1:
        return True
    visited = 1
    stack = [0]
    while stack:
        v = stack.pop()
        fresh = g.adj[v] & ~visited
        visited |= fresh
        stack.extend(bits(fresh))
    return visited == (1 << g.n) - 1


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two-coloring of a bipartite graph, or None.

    Component biparts are merged deterministically: within each connected
    component the side containing the component's smallest vertex goes to
    the first part.
    """
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in bits(g.adj[v]):
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    part0 = frozenset(v for v in range(g.n) if color[v] == 0)
    part1 = frozenset(v for v in range(g.n) if color[v] == 1)
    return part0, part1


def twin_pairs(g: Graph) -> list[tuple[int, int]]:
    """All pairs of distinct vertices with identical open neighborhoods."""
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.adj[v], []).append(v)
    pairs: list[tuple[int, int]] = []
    for members in groups.values():
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                pairs.append((u, v))
    return sorted(pairs)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``s``, relabeled by sorted order of ``s``.

    Returns the subgraph together with the index map: entry ``i`` is the
    original id of new vertex ``i``.
    """
    verts = sorted(set(s))
    if not verts:
        raise GraphError("induced subgraph of an empty vertex set")
    if verts[0] < 0 or verts[-1] >= g.n:
        raise GraphError("vertex set not contained in the graph")
    new_id = {v: i for i, v in enumerate(verts)}
    edges = [
        (new_id[u], new_id[v]) for u, v in g.edges if u in new_id and v in new_id
    ]
    return Graph(len(verts), edges), tuple(verts)


def quotient_graph(g: Graph, p: VertexPartition) -> Graph:
    """Quotient by an ordered partition: cells become vertices, in cell order.

    Distinct cells are adjacent iff some edge of ``g`` crosses them.
    """
    cell_of = p.cell_index(g.n)
    edges = {
        (cell_of[u], cell_of[v]) if cell_of[u] < cell_of[v] else (cell_of[v], cell_of[u])
        for u, v in g.edges
        if cell_of[u] != cell_of[v]
    }
    return Graph(len(p.cells), edges)


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of the connected components, ordered by smallest vertex."""
    seen = 0
    comps: list[tuple[int, ...]] = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        stack = [start]
        while stack:
            v = stack.pop()
            fresh = g.adj[v] & ~comp
            comp |= fresh
            stack.extend(bits(fresh))
        seen |= comp
        comps.append(tuple(bits(comp)))
    return comps
