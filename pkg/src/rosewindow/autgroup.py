"""Exact automorphism groups and canonical forms for simple graphs.

The engine is a partition-backtracking search: equitable color refinement
(1-dimensional Weisfeiler-Leman) interleaved with individualization.  The
automorphism search fixes the leftmost branch of the tree as the reference
labeling and prunes with (a) node invariants (refinement traces and cell
sizes must match the reference path), (b) orbits of the automorphisms found
so far at reference-path nodes, and (c) an early backtrack to the deepest
reference-path ancestor whenever a new automorphism is found.  Every
emitted generator is verified edge-preserving before it is returned.

The canonical form is the lexicographically smallest (invariant path,
relabeled edge list) over all leaves, searched with orbit pruning by the
full automorphism group; two graphs have equal canonical forms iff they
are isomorphic.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .graphs import Graph, VertexPartition, bits, is_connected
from .perms import Permutation, PermGroup


class Coloring:
    """Vertex coloring with colors forming a contiguous range ``0..k-1``."""

    __slots__ = ("colors",)

    def __init__(self, colors: Iterable[int]) -> None:
        cols = tuple(colors)
        if cols:
            k = max(cols) + 1
            if min(cols) < 0 or set(cols) != set(range(k)):
                raise ValueError("colors must form a contiguous range 0..k-1")
        self.colors = cols

    @classmethod
    def uniform(cls, n: int) -> "Coloring":
        return cls([0] * n)

    def cells(self) -> VertexPartition:
        """Cells of equal color, ordered by color value."""
        k = max(self.colors) + 1 if self.colors else 0
        buckets: list[list[int]] = [[] for _ in range(k)]
        for v, c in enumerate(self.colors):
            buckets[c].append(v)
        return VertexPartition(buckets)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.colors == other.colors

    def __hash__(self) -> int:
        return hash(self.colors)

    def __repr__(self) -> str:
        return f"Coloring({list(self.colors)!r})"


@dataclass(frozen=True)
class CanonicalForm:
    """Isomorphism-invariant certificate: relabeled edge list plus digest."""

    n: int
    edges: tuple[tuple[int, int], ...]
    digest: str


# ---------------------------------------------------------------------------
# Equitable refinement
# ---------------------------------------------------------------------------
#
# Ordered partitions are lists of sorted vertex tuples.  The worklist holds
# splitter bitmasks; cells are split by the count of neighbors inside the
# splitter, fragments ordered by ascending count.  On a split, all fragments
# but one largest are enqueued (the skipped one is inferable from the parent,
# which every cell eventually plays the role of).  All decisions depend only
# on counts, sizes and cell positions, so the computation commutes with
# vertex relabeling; the returned trace of split events is a node invariant.


def _split_partition(
    adj: Sequence[int], cells: list[tuple[int, ...]], queue: deque[int]
) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    trace: list[tuple[int, tuple[tuple[int, int], ...]]] = []
    while queue:
        smask = queue.popleft()
        i = 0
        while i < len(cells):
            cell = cells[i]
            if len(cell) == 1:
                i += 1
                continue
            c0 = (adj[cell[0]] & smask).bit_count()
            uniformcell = True
            for v in cell:
                if (adj[v] & smask).bit_count() != c0:
                    uniformcell = False
                    break
            if uniformcell:
                i += 1
                continue
            buckets: dict[int, list[int]] = {}
            for v in cell:
                buckets.setdefault((adj[v] & smask).bit_count(), []).append(v)
            counts = sorted(buckets)
            frags = [tuple(buckets[c]) for c in counts]
            cells[i : i + 1] = frags
            trace.append((i, tuple((c, len(buckets[c])) for c in counts)))
            largest = max(range(len(frags)), key=lambda k: len(frags[k]))
            for k, frag in enumerate(frags):
                if k == largest:
                    continue
                fmask = 0
                for v in frag:
                    fmask |= 1 << v
                queue.append(fmask)
            i += len(frags)
    return trace


def _mask_of(cell: tuple[int, ...]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _refine_all(adj: Sequence[int], cells: list[tuple[int, ...]]):
    queue = deque(_mask_of(c) for c in cells)
    trace = _split_partition(adj, cells, queue)
    return tuple(trace), tuple(len(c) for c in cells)


def color_refinement(g: Graph, init: Coloring | None = None) -> Coloring:
    """Coarsest stable refinement of ``init`` (uniform if omitted).

    Two vertices keep equal colors iff they had equal initial colors and
    equal multisets of neighbor colors at every round; the result refines
    the input and the operation is idempotent.
    """
    if init is None:
        init = Coloring.uniform(g.n)
    if len(init.colors) != g.n:
        raise ValueError("coloring length does not match vertex count")
    cells = [tuple(c) for c in init.cells().cells]
    _refine_all(g.adj, cells)
    colors = [0] * g.n
    for i, cell in enumerate(cells):
        for v in cell:
            colors[v] = i
    return Coloring(colors)


# ---------------------------------------------------------------------------
# Search helpers
# ---------------------------------------------------------------------------


def _target_cell(cells: list[tuple[int, ...]]) -> int:
    """Position of the first smallest non-singleton cell, or -1 if discrete."""
    best = -1
    best_size = 0
    for i, cell in enumerate(cells):
        size = len(cell)
        if size > 1 and (best < 0 or size < best_size):
            best, best_size = i, size
    return best


def _leaf_positions(cells: list[tuple[int, ...]], n: int) -> list[int]:
    pos = [0] * n
    for i, cell in enumerate(cells):
        pos[cell[0]] = i
    return pos


def _leaf_cert(
    edges: tuple[tuple[int, int], ...], pos: Sequence[int]
) -> tuple[tuple[int, int], ...]:
    out = []
    for u, v in edges:
        a, b = pos[u], pos[v]
        out.append((a, b) if a < b else (b, a))
    out.sort()
    return tuple(out)


def _verify_automorphism(g: Graph, p: Permutation) -> None:
    img = p.images
    for u, v in g.edges:
        if not g.has_edge(img[u], img[v]):
            raise AssertionError("search produced a non-automorphism; engine bug")


def _dsu_find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _dsu_union(parent: list[int], a: int, b: int) -> None:
    ra, rb = _dsu_find(parent, a), _dsu_find(parent, b)
    if ra != rb:
        parent[rb] = ra


class _OrbitPruner:
    """Union-find of point orbits under the generators fixing a prefix."""

    def __init__(self, n: int, fixed: tuple[int, ...]):
        self.n = n
        self.fixed = fixed
        self.parent = list(range(n))
        self.consumed = 0

    def absorb(self, gens: list[Permutation]) -> None:
        while self.consumed < len(gens):
            g = gens[self.consumed]
            self.consumed += 1
            img = g.images
            if all(img[b] == b for b in self.fixed):
                for x in range(self.n):
                    _dsu_union(self.parent, x, img[x])

    def same_orbit_as_any(self, v: int, others: list[int]) -> bool:
        r = _dsu_find(self.parent, v)
        return any(_dsu_find(self.parent, u) == r for u in others)


def _individualize(
    cells: list[tuple[int, ...]], tc: int, v: int
) -> list[tuple[int, ...]]:
    cell = cells[tc]
    rest = tuple(w for w in cell if w != v)
    return cells[:tc] + [(v,), rest] + cells[tc + 1 :]


# ---------------------------------------------------------------------------
# Automorphism search
# ---------------------------------------------------------------------------


def _automorphism_generators(g: Graph) -> list[Permutation]:
    n = g.n
    if n == 0:
        return []
    adj = g.adj
    edges = g.edges
    root_cells = [tuple(range(n))]
    root_inv = _refine_all(adj, root_cells)

    gens: list[Permutation] = []
    left_invs: dict[int, object] = {}
    state = {"cert0": None, "lab0": None}

    def search(cells, depth, inv, on_left, fixed) -> bool:
        if on_left:
            left_invs[depth] = inv
        elif inv != left_invs.get(depth):
            return False
        tc = _target_cell(cells)
        if tc < 0:
            pos = _leaf_positions(cells, n)
            if state["cert0"] is None:
                state["cert0"] = _leaf_cert(edges, pos)
                lab0 = [0] * n
                for v in range(n):
                    lab0[pos[v]] = v
                state["lab0"] = lab0
                return False
            if _leaf_cert(edges, pos) != state["cert0"]:
                return False
            lab0 = state["lab0"]
            images = [lab0[pos[v]] for v in range(n)]
            if all(i == x for i, x in enumerate(images)):
                return False
            sigma = Permutation(images)
            _verify_automorphism(g, sigma)
            gens.append(sigma)
            return True
        branch = cells[tc]
        pruner: _OrbitPruner | None = None
        processed: list[int] = []
        for idx, v in enumerate(branch):
            child_left = on_left and idx == 0
            if processed and not child_left:
                if pruner is None:
                    pruner = _OrbitPruner(n, fixed)
                pruner.absorb(gens)
                if pruner.same_orbit_as_any(v, processed):
                    continue
            child_cells = _individualize(cells, tc, v)
            trace = _split_partition(adj, child_cells, deque([1 << v]))
            child_inv = (tc, tuple(trace), tuple(len(c) for c in child_cells))
            jumped = search(child_cells, depth + 1, child_inv, child_left, fixed + (v,))
            processed.append(v)
            if jumped and not on_left:
                return True
        return False

    search(root_cells, 0, root_inv, True, ())
    return gens


def automorphism_group(g: Graph) -> PermGroup:
    """The full automorphism group of ``g``, with exact order."""
    return PermGroup(_automorphism_generators(g), degree=g.n)


# ---------------------------------------------------------------------------
# Canonical form and isomorphism
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _canonical_labeling(g: Graph) -> tuple[Permutation, tuple[tuple[int, int], ...]]:
    """Canonical relabeling of ``g`` and the relabeled edge list."""
    n = g.n
    if n == 0:
        return Permutation(()), ()
    adj = g.adj
    edges = g.edges
    aut_gens = _automorphism_generators(g)
    root_cells = [tuple(range(n))]
    root_inv = _refine_all(adj, root_cells)

    best: dict[str, object] = {"invpath": None, "cert": None, "pos": None}

    def search(cells, invpath, fixed) -> None:
        if best["invpath"] is not None:
            prefix = best["invpath"][: len(invpath)]
            if invpath > prefix:
                return
        tc = _target_cell(cells)
        if tc < 0:
            pos = _leaf_positions(cells, n)
            cert = _leaf_cert(edges, pos)
            if best["invpath"] is None or (invpath, cert) < (best["invpath"], best["cert"]):
                best["invpath"], best["cert"], best["pos"] = invpath, cert, pos
            return
        branch = cells[tc]
        pruner = _OrbitPruner(n, fixed)
        pruner.absorb(aut_gens)
        processed: list[int] = []
        for v in branch:
            if processed and pruner.same_orbit_as_any(v, processed):
                continue
            child_cells = _individualize(cells, tc, v)
            trace = _split_partition(adj, child_cells, deque([1 << v]))
            child_inv = (tc, tuple(trace), tuple(len(c) for c in child_cells))
            search(child_cells, invpath + (child_inv,), fixed + (v,))
            processed.append(v)

    search(root_cells, (root_inv,), ())
    return Permutation(best["pos"]), best["cert"]


def canonical_form(g: Graph) -> CanonicalForm:
    """Certificate equal across isomorphic graphs and distinct otherwise."""
    _, cert = _canonical_labeling(g)
    digest = hashlib.sha256(f"{g.n};{cert}".encode("ascii")).hexdigest()
    return CanonicalForm(g.n, cert, digest)


def are_isomorphic(g1: Graph, g2: Graph) -> Permutation | None:
    """A verified vertex bijection mapping ``g1`` onto ``g2``, or None."""
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return None
    if sorted(map(g1.degree, range(g1.n))) != sorted(map(g2.degree, range(g2.n))):
        return None
    p1, cert1 = _canonical_labeling(g1)
    p2, cert2 = _canonical_labeling(g2)
    if cert1 != cert2:
        return None
    mapping = p2.inverse() * p1
    img = mapping.images
    for u, v in g1.edges:
        if not g2.has_edge(img[u], img[v]):
            raise AssertionError("canonical forms matched but mapping failed; engine bug")
    return mapping


# ---------------------------------------------------------------------------
# Orbit analyses on top of the engine
# ---------------------------------------------------------------------------


def edge_orbit_count(g: Graph, aut: PermGroup) -> int:
    """Number of orbits of ``aut`` acting on the unordered edges of ``g``."""
    if aut.degree != g.n:
        raise ValueError("group degree does not match the vertex count")
    index = {e: i for i, e in enumerate(g.edges)}
    for p in aut.generators:
        img = p.images
        for u, v in g.edges:
            a, b = img[u], img[v]
            if not g.has_edge(a, b):
                raise ValueError("group generator is not an automorphism of the graph")
    parent = list(range(len(g.edges)))
    for p in aut.generators:
        img = p.images
        for i, (u, v) in enumerate(g.edges):
            a, b = img[u], img[v]
            j = index[(a, b) if a < b else (b, a)]
            _dsu_union(parent, i, j)
    return sum(1 for i in range(len(parent)) if _dsu_find(parent, i) == i)


def count_s_arcs(g: Graph, s: int) -> int:
    """Number of ``s``-arcs: walks of ``s`` edges with no immediate backtrack."""
    if s < 1:
        raise ValueError("s must be at least 1")
    counts: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        counts[(u, v)] = 1
        counts[(v, u)] = 1
    for _ in range(s - 1):
        nxt: dict[tuple[int, int], int] = {}
        for v in range(g.n):
            for w in bits(g.adj[v]):
                total = 0
                for u in bits(g.adj[v]):
                    if u != w:
                        total += counts.get((u, v), 0)
                if total:
                    nxt[(v, w)] = total
        counts = nxt
    return sum(counts.values())


def _first_s_arc(g: Graph, s: int) -> tuple[int, ...] | None:
    def extend(arc: tuple[int, ...]) -> tuple[int, ...] | None:
        if len(arc) == s + 1:
            return arc
        for w in bits(g.adj[arc[-1]]):
            if len(arc) >= 2 and w == arc[-2]:
                continue
            got = extend(arc + (w,))
            if got is not None:
                return got
        return None

    for v in range(g.n):
        got = extend((v,))
        if got is not None:
            return got
    return None


def is_s_arc_transitive(g: Graph, aut: PermGroup, s: int) -> bool:
    """Whether ``aut`` acts transitively on the ``s``-arcs of ``g``."""
    if s < 1:
        raise ValueError("s must be at least 1")
    if not is_connected(g) or g.n < 2:
        raise ValueError("s-arc transitivity requires a connected graph with an edge")
    if aut.degree != g.n:
        raise ValueError("group degree does not match the vertex count")
    total = count_s_arcs(g, s)
    if total == 0:
        return True
    start = _first_s_arc(g, s)
    assert start is not None
    seen = {start}
    queue = deque([start])
    gens = [p.images for p in aut.generators]
    while queue:
        arc = queue.popleft()
        for img in gens:
            nxt = tuple(img[x] for x in arc)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == total
