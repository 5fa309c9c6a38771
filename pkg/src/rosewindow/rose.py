"""Rose Window graphs and their canonical double covers.

The graph ``R_n(a, r)`` has 2n vertices ``u_i, v_i`` (i mod n) and the
edge classes

* rim    ``{u_i, u_{i+1}}``,
* hub    ``{v_i, v_{i+r}}``,
* spoke  ``{u_i, v_i}`` and ``{u_{i+a}, v_i}``.

Vertex ids follow one fixed naming contract everywhere: in the base graph
``u_i -> i`` and ``v_i -> n + i``; in the double cover the layer-j copy of
base vertex ``x`` is ``j*2n + x`` (so ``u_{i,j} -> j*2n + i`` and
``v_{i,j} -> j*2n + n + i``).  All permutations, reports and serialized
forms depend on this contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .autgroup import automorphism_group
from .graphs import Graph, VertexPartition
from .perms import Permutation, PermGroup


@dataclass(frozen=True)
class RoseWindowParams:
    """The parameter triple ``(n, a, r)`` with ``n >= 3`` and ``a, r != 0`` in Z_n."""

    n: int
    a: int
    r: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"n must be at least 3, got {self.n}")
        if not 1 <= self.a <= self.n - 1:
            raise ValueError(f"a must be a nonzero residue mod {self.n}, got {self.a}")
        if not 1 <= self.r <= self.n - 1:
            raise ValueError(f"r must be a nonzero residue mod {self.n}, got {self.r}")

    @property
    def degenerate(self) -> bool:
        """Hub edges pair up (``2r = 0`` mod n), leaving degree-3 hub vertices."""
        return 2 * self.r % self.n == 0

    @classmethod
    def parse(cls, text: str) -> "RoseWindowParams":
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected 'n:a:r', got {text!r}")
        n, a, r = (int(tok) for tok in parts)
        return cls(n, a, r)

    def as_text(self) -> str:
        return f"{self.n}:{self.a}:{self.r}"

    def __str__(self) -> str:
        return f"R{self.n}({self.a},{self.r})"


# -- the fixed id scheme ----------------------------------------------------


def u_id(n: int, i: int) -> int:
    return i % n


def v_id(n: int, i: int) -> int:
    return n + i % n


def cdc_u_id(n: int, i: int, j: int) -> int:
    return (j % 2) * 2 * n + i % n


def cdc_v_id(n: int, i: int, j: int) -> int:
    return (j % 2) * 2 * n + n + i % n


def cdc_vertex_label(n: int, vid: int) -> str:
    """Render a CDC vertex id as ``u[i,j]`` / ``v[i,j]``."""
    j, x = divmod(vid, 2 * n)
    if x < n:
        return f"u[{x},{j}]"
    return f"v[{x - n},{j}]"


def base_vertex_label(n: int, vid: int) -> str:
    return f"u[{vid}]" if vid < n else f"v[{vid - n}]"


# -- construction -----------------------------------------------------------


def build(p: RoseWindowParams) -> Graph:
    """The Rose Window graph on 2n vertices (coincident hub edges deduplicate)."""
    n, a, r = p.n, p.a, p.r
    edges = []
    for i in range(n):
        edges.append((u_id(n, i), u_id(n, i + 1)))
        edges.append((v_id(n, i), v_id(n, i + r)))
        edges.append((u_id(n, i), v_id(n, i)))
        edges.append((u_id(n, i + a), v_id(n, i)))
    return Graph(2 * n, edges)


def build_cdc(p: RoseWindowParams) -> Graph:
    """The canonical double cover of ``build(p)`` on 4n vertices."""
    n, a, r = p.n, p.a, p.r
    edges = []
    for j in (0, 1):
        for i in range(n):
            edges.append((cdc_u_id(n, i, j), cdc_u_id(n, i + 1, j + 1)))
            edges.append((cdc_v_id(n, i, j), cdc_v_id(n, i + r, j + 1)))
            edges.append((cdc_u_id(n, i, j), cdc_v_id(n, i, j + 1)))
            edges.append((cdc_u_id(n, i + a, j), cdc_v_id(n, i, j + 1)))
    return Graph(4 * n, edges)


def cdc_of_graph(g: Graph) -> Graph:
    """Generic double cover: vertex ``(x, j) -> j*|V| + x``, edges across layers."""
    n = g.n
    edges = []
    for x, y in g.edges:
        edges.append((x, n + y))
        edges.append((y, n + x))
    return Graph(2 * n, edges)


# -- parameter isomorphy ----------------------------------------------------


def iso_variants(p: RoseWindowParams) -> list[RoseWindowParams]:
    """The sign-flip parameter triples, all yielding isomorphic graphs."""
    n = p.n
    seen = []
    for a in (p.a, (-p.a) % n):
        for r in (p.r, (-p.r) % n):
            q = RoseWindowParams(n, a, r)
            if q not in seen:
                seen.append(q)
    return seen


def canonical_params(p: RoseWindowParams) -> RoseWindowParams:
    """The unique flip variant with ``1 <= a, r <= n/2``."""
    n = p.n
    return RoseWindowParams(n, min(p.a, n - p.a), min(p.r, n - p.r))


# -- double cover structure -------------------------------------------------


@dataclass(frozen=True)
class CdcStructure:
    """Cycle decomposition of the double cover's three edge classes.

    ``rim_cycles``, ``spoke_cycles`` and (when ``hub_is_matching`` is
    false) ``hub_components`` are vertex-id sequences of the cycles; a
    matching hub is reported as its 2-element components.  For even n the
    four-way split of the vertex set by kind and by parity of ``i + j``
    is included (the two rim cycles traverse exactly the first two sets).
    """

    rim_cycles: tuple[tuple[int, ...], ...]
    hub_components: tuple[tuple[int, ...], ...]
    spoke_cycles: tuple[tuple[int, ...], ...]
    hub_is_matching: bool
    s_partition: tuple[frozenset[int], frozenset[int], frozenset[int], frozenset[int]] | None


def _walk_cycles(vertices: list[int], nbrs: dict[int, tuple[int, int]]) -> list[tuple[int, ...]]:
    """Cycle decomposition of a 2-regular adjacency, deterministic order."""
    cycles = []
    visited: set[int] = set()
    for start in vertices:
        if start in visited:
            continue
        cycle = [start]
        visited.add(start)
        prev, cur = start, min(nbrs[start])
        while cur != start:
            cycle.append(cur)
            visited.add(cur)
            a, b = nbrs[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(tuple(cycle))
    return cycles


def cdc_structure(p: RoseWindowParams) -> CdcStructure:
    n, a, r = p.n, p.a, p.r

    rim_nbrs = {}
    spoke_nbrs = {}
    for j in (0, 1):
        for i in range(n):
            rim_nbrs[cdc_u_id(n, i, j)] = (
                cdc_u_id(n, i - 1, j + 1),
                cdc_u_id(n, i + 1, j + 1),
            )
            spoke_nbrs[cdc_u_id(n, i, j)] = (
                cdc_v_id(n, i, j + 1),
                cdc_v_id(n, i - a, j + 1),
            )
            spoke_nbrs[cdc_v_id(n, i, j)] = (
                cdc_u_id(n, i, j + 1),
                cdc_u_id(n, i + a, j + 1),
            )
    u_vertices = [cdc_u_id(n, i, j) for j in (0, 1) for i in range(n)]
    v_vertices = [cdc_v_id(n, i, j) for j in (0, 1) for i in range(n)]
    rim = _walk_cycles(sorted(u_vertices), rim_nbrs)
    spokes = _walk_cycles(sorted(u_vertices + v_vertices), spoke_nbrs)

    matching = p.degenerate
    if matching:
        hub = []
        for x in sorted(v_vertices):
            mate = cdc_v_id(n, (x % (2 * n)) - n + r, x // (2 * n) + 1)
            if x < mate:
                hub.append((x, mate))
    else:
        hub_nbrs = {}
        for j in (0, 1):
            for i in range(n):
                hub_nbrs[cdc_v_id(n, i, j)] = (
                    cdc_v_id(n, i - r, j + 1),
                    cdc_v_id(n, i + r, j + 1),
                )
        hub = _walk_cycles(sorted(v_vertices), hub_nbrs)

    s_partition = None
    if n % 2 == 0:
        s1 = frozenset(cdc_u_id(n, i, j) for j in (0, 1) for i in range(n) if (i + j) % 2 == 0)
        s2 = frozenset(cdc_u_id(n, i, j) for j in (0, 1) for i in range(n) if (i + j) % 2 == 1)
        s3 = frozenset(cdc_v_id(n, i, j) for j in (0, 1) for i in range(n) if (i + j) % 2 == 0)
        s4 = frozenset(cdc_v_id(n, i, j) for j in (0, 1) for i in range(n) if (i + j) % 2 == 1)
        s_partition = (s1, s2, s3, s4)

    return CdcStructure(
        rim_cycles=tuple(rim),
        hub_components=tuple(hub),
        spoke_cycles=tuple(spokes),
        hub_is_matching=matching,
        s_partition=s_partition,
    )


def predicted_cycle_lengths(p: RoseWindowParams) -> tuple[int, int]:
    """Hub and spoke cycle lengths from the gcd formulas.

    Requires ``2r != 0`` mod n (a matching hub has no hub cycles).  The hub
    length doubles exactly when ``n / gcd(r, n)`` is odd; the spoke length
    is ``2n / gcd(a, n)``.
    """
    n, a, r = p.n, p.a, p.r
    if 2 * r % n == 0:
        raise ValueError("hub edges form a matching when 2r = 0 mod n; no cycle length")
    eps = 0 if (n // gcd(r, n)) % 2 == 0 else 1
    ell_h = (2**eps * n) // gcd(r, n)
    ell_s = 2 * n // gcd(a, n)
    return ell_h, ell_s


def bipartite_by_params(p: RoseWindowParams) -> bool:
    """Parameter test for bipartiteness: n and a even, r odd."""
    return p.n % 2 == 0 and p.a % 2 == 0 and p.r % 2 == 1


# -- the standard double cover automorphisms --------------------------------


def _verified(p: RoseWindowParams, images: list[int]) -> Permutation:
    sigma = Permutation(images)
    g = build_cdc(p)
    img = sigma.images
    for x, y in g.edges:
        if not g.has_edge(img[x], img[y]):
            raise AssertionError("constructed map is not an automorphism; naming bug")
    return sigma


def rotation(p: RoseWindowParams) -> Permutation:
    """Index rotation ``u_{i,j} -> u_{i+1,j}``, ``v_{i,j} -> v_{i+1,j}``; order n."""
    n = p.n
    images = [0] * (4 * n)
    for j in (0, 1):
        for i in range(n):
            images[cdc_u_id(n, i, j)] = cdc_u_id(n, i + 1, j)
            images[cdc_v_id(n, i, j)] = cdc_v_id(n, i + 1, j)
    return _verified(p, images)


def reflection(p: RoseWindowParams) -> Permutation:
    """Involution ``u_{i,j} -> u_{-i,j}``, ``v_{i,j} -> v_{-i-a,j}``.

    Together with the rotation it generates a dihedral group of order 2n.
    """
    n, a = p.n, p.a
    images = [0] * (4 * n)
    for j in (0, 1):
        for i in range(n):
            images[cdc_u_id(n, i, j)] = cdc_u_id(n, -i, j)
            images[cdc_v_id(n, i, j)] = cdc_v_id(n, -i - a, j)
    return _verified(p, images)


def layer_swap(p: RoseWindowParams) -> Permutation:
    """The layer exchange ``(x, j) -> (x, 1-j)`` fixing kind and index."""
    n = p.n
    images = [0] * (4 * n)
    for j in (0, 1):
        for i in range(n):
            images[cdc_u_id(n, i, j)] = cdc_u_id(n, i, j + 1)
            images[cdc_v_id(n, i, j)] = cdc_v_id(n, i, j + 1)
    return _verified(p, images)


# -- expected automorphisms -------------------------------------------------


def lift_to_cdc(alpha: Permutation) -> Permutation:
    """Lift a base-graph automorphism to the double cover: ``(x, j) -> (alpha(x), j)``."""
    half = alpha.degree
    images = [0] * (2 * half)
    for x in range(half):
        images[x] = alpha.images[x]
        images[half + x] = half + alpha.images[x]
    return Permutation(images)


def expected_group(p: RoseWindowParams, base_aut: PermGroup | None = None) -> PermGroup:
    """Group generated by the layer swap and the lifts of Aut(base graph).

    Its order is exactly twice the base automorphism group order (the lift
    is faithful and the layer swap is not a lift).
    """
    if base_aut is None:
        base_aut = automorphism_group(build(p))
    gens = [layer_swap(p)] + [lift_to_cdc(alpha) for alpha in base_aut.generators]
    group = PermGroup(gens, degree=4 * p.n)
    if group.order != 2 * base_aut.order:
        raise AssertionError("expected-group order contract violated; engine bug")
    return group


def preserves_fibers(sigma: Permutation, half: int) -> bool:
    """Whether ``sigma`` maps every fiber ``{x, x+half}`` onto a fiber."""
    if sigma.degree != 2 * half:
        raise ValueError("degree does not match a doubled vertex set")
    img = sigma.images
    return all(img[x] % half == img[x + half] % half for x in range(half))


def is_expected(p: RoseWindowParams, sigma: Permutation) -> bool:
    """Decide whether a double cover automorphism is expected.

    Valid only for connected non-bipartite base graphs; both criteria
    (fiber preservation and commuting with the layer swap) are evaluated
    and must agree.
    """
    from .graphs import bipartition, is_connected  # local to avoid cycle noise

    g = build(p)
    if not is_connected(g) or bipartition(g) is not None:
        raise ValueError("expectedness test requires a connected non-bipartite graph")
    by_fibers = preserves_fibers(sigma, 2 * p.n)
    by_commuting = sigma.commutes_with(layer_swap(p))
    if by_fibers != by_commuting:
        raise AssertionError("fiber and commutation criteria disagree; engine bug")
    return by_fibers


# -- odd-n rewriting of the double cover ------------------------------------


def odd_n_cdc_params(p: RoseWindowParams) -> tuple[RoseWindowParams, Permutation]:
    """For odd n, the double cover is itself a Rose Window graph on 2n.

    Returns the parameters ``(2n, a', r')`` (a' made even, r' made odd by
    adding n where needed) and the verified vertex bijection from
    ``build_cdc(p)`` onto ``build`` of the rewritten parameters, realized
    through the ring isomorphism ``Z_n x Z_2 -> Z_{2n}`` sending (1, 1)
    to 1.
    """
    n, a, r = p.n, p.a, p.r
    if n % 2 == 0:
        raise ValueError("the double cover rewriting requires odd n")
    a2 = a if a % 2 == 0 else a + n
    r2 = r + n if r % 2 == 0 else r
    target = RoseWindowParams(2 * n, a2, r2)

    def theta(i: int, j: int) -> int:
        x = i % n
        return x if x % 2 == j % 2 else x + n

    images = [0] * (4 * n)
    for j in (0, 1):
        for i in range(n):
            images[cdc_u_id(n, i, j)] = u_id(2 * n, theta(i, j))
            images[cdc_v_id(n, i, j)] = v_id(2 * n, theta(i, j) + n)
    f = Permutation(images)

    source = build_cdc(p)
    dest = build(target)
    img = f.images
    for x, y in source.edges:
        if not dest.has_edge(img[x], img[y]):
            raise AssertionError("double cover rewriting failed to preserve an edge")
    if len(source.edges) != len(dest.edges):
        raise AssertionError("double cover rewriting is not onto the edge set")
    return target, f


# -- quotients by rotation subgroups ----------------------------------------


def quotient_params(p: RoseWindowParams, h: int) -> tuple[RoseWindowParams, VertexPartition]:
    """Reduce ``(n, a, r)`` modulo ``k = n/h`` for a rotation subgroup of order h.

    The returned partition collects the double cover vertices by index
    residue mod k (the fibers of the reduction map), cells ordered by the
    quotient graph's own id scheme, so that ``quotient_graph(build_cdc(p),
    partition)`` is literally ``build_cdc`` of the reduced parameters.
    Reduced parameters hitting 0 mod k are rejected.
    """
    n = p.n
    if h < 1 or n % h != 0 or h >= n:
        raise ValueError(f"h must be a proper divisor of {n}, got {h}")
    k = n // h
    a2, r2 = p.a % k, p.r % k
    if a2 == 0:
        raise ValueError(f"a = {p.a} reduces to 0 mod {k}; quotient is not a Rose Window graph")
    if r2 == 0:
        raise ValueError(f"r = {p.r} reduces to 0 mod {k}; quotient is not a Rose Window graph")
    reduced = RoseWindowParams(k, a2, r2)
    cells = []
    for j in (0, 1):
        for kind_offset in (0, n):
            for i2 in range(k):
                cells.append(
                    sorted(j * 2 * n + kind_offset + i2 + t * k for t in range(h))
                )
    return reduced, VertexPartition(cells)
