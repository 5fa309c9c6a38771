"""Permutations on ``n`` points and finitely generated permutation groups.

Groups carry a stabilizer chain (base and strong generating set) built by a
deterministic incremental Schreier-Sims procedure, giving exact arbitrary
precision order, membership testing by sifting, orbits, and centrality
tests.  Base points are chosen greedily as the smallest point moved by the
element being inserted, so chains, and therefore reported orders and
orbits, are reproducible.
"""

from __future__ import annotations

import re
from math import lcm
from typing import Iterable, Sequence

from .graphs import VertexPartition


class PermError(ValueError):
    """Invalid permutation data or mismatched degrees."""


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as an image array."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]) -> None:
        imgs = tuple(images)
        n = len(imgs)
        seen = [False] * n
        for x in imgs:
            if not (0 <= x < n) or seen[x]:
                raise PermError(f"image array {imgs!r} is not a bijection of 0..{n - 1}")
            seen[x] = True
        self.images = imgs

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                raise PermError(f"repeated point in cycle {tuple(cycle)!r}")
            for i, x in enumerate(cycle):
                if not (0 <= x < degree):
                    raise PermError(f"point {x} out of range 0..{degree - 1}")
                images[x] = cycle[(i + 1) % len(cycle)]
        p = cls.__new__(cls)
        p.images = tuple(images)
        if sorted(p.images) != list(range(degree)):
            raise PermError("cycles overlap; not a permutation")
        return p

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse ``[i0 i1 ...]`` image-array form or ``(a b c)(d e)`` cycle form."""
        s = text.strip()
        if s.startswith("["):
            if not s.endswith("]"):
                raise PermError(f"unterminated image list: {text!r}")
            body = s[1:-1].replace(",", " ")
            imgs = [int(tok) for tok in body.split()]
            if degree is not None and len(imgs) != degree:
                raise PermError(f"expected degree {degree}, got {len(imgs)}")
            return cls(imgs)
        if s in ("()", "id", ""):
            if degree is None:
                raise PermError("degree required to parse the identity")
            return cls.identity(degree)
        if s.startswith("("):
            cycles = []
            consumed = 0
            for m in _CYCLE_RE.finditer(s):
                consumed += len(m.group(0))
                body = m.group(1).replace(",", " ").split()
                if body:
                    cycles.append([int(tok) for tok in body])
            if consumed != len(s.replace(" ", "")) and len(_CYCLE_RE.sub("", s).strip()) > 0:
                raise PermError(f"trailing junk in cycle form: {text!r}")
            deg = degree if degree is not None else 1 + max(max(c) for c in cycles)
            return cls.from_cycles(deg, cycles)
        raise PermError(f"unrecognized permutation syntax: {text!r}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition ``self * other``: apply ``other`` first, then ``self``."""
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(self.images) != len(other.images):
            raise PermError("degree mismatch in composition")
        mine = self.images
        p = Permutation.__new__(Permutation)
        p.images = tuple(mine[x] for x in other.images)
        return p

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        p = Permutation.__new__(Permutation)
        p.images = tuple(inv)
        return p

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(len(self.images))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each rotated to start at its smallest point."""
        out = []
        seen = [False] * len(self.images)
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def commutes_with(self, other: "Permutation") -> bool:
        return (self * other).images == (other * self).images

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def __str__(self) -> str:
        return "[" + " ".join(map(str, self.images)) + "]"

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``compose(p, q)(i) == p(q(i))``."""
    return p * q


# Stabilizer chains store permutations in a raw internal form: bytes for
# degree <= 256 (composition via bytes.translate runs at C speed, which the
# Schreier generator closure is dominated by), tuples of ints otherwise.


class _Raw:
    """Raw-permutation operations for one fixed degree."""

    def __init__(self, degree: int) -> None:
        self.degree = degree
        if degree <= 256:
            self.identity = bytes(range(degree))
            self._tail = bytes(range(degree, 256))
        else:
            self.identity = tuple(range(degree))

    def load(self, p: Permutation):
        if isinstance(self.identity, bytes):
            return bytes(p.images)
        return p.images

    def dump(self, raw) -> Permutation:
        return Permutation(raw)

    def compose(self, p, q):
        """Raw ``p ∘ q`` (apply ``q`` first)."""
        if isinstance(p, bytes):
            return q.translate(p + self._tail)
        return tuple(p[x] for x in q)

    def invert(self, p):
        if isinstance(p, bytes):
            inv = bytearray(self.degree)
            for i, x in enumerate(p):
                inv[x] = i
            return bytes(inv)
        inv = [0] * self.degree
        for i, x in enumerate(p):
            inv[x] = i
        return tuple(inv)


class _Level:
    __slots__ = ("point", "gens", "transversal", "tinv", "orbit")

    def __init__(self, point: int) -> None:
        self.point = point
        self.gens: list = []
        self.transversal: dict = {}
        self.tinv: dict = {}
        self.orbit: list[int] = []

    def rebuild(self, raw: _Raw) -> None:
        self.transversal = {self.point: raw.identity}
        self.tinv = {self.point: raw.identity}
        self.orbit = [self.point]
        head = 0
        while head < len(self.orbit):
            x = self.orbit[head]
            head += 1
            ux = self.transversal[x]
            for g in self.gens:
                y = g[x]
                if y not in self.transversal:
                    uy = raw.compose(g, ux)
                    self.transversal[y] = uy
                    self.tinv[y] = raw.invert(uy)
                    self.orbit.append(y)


class PermGroup:
    """Group generated by permutations, with exact order and membership.

    The stabilizer chain is completed at construction by the classical
    bottom-up Schreier-Sims procedure: level ``i`` uses every strong
    generator fixing the first ``i`` base points (the level sets are
    nested), and each level is verified by sifting all of its Schreier
    generators, so ``order`` and ``contains`` are exact by construction.
    A final pass re-sifts the input generators as a sanity check.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None) -> None:
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise PermError("degree is required for an empty generating set")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise PermError("generators act on different numbers of points")
        self.degree = degree
        self.generators = tuple(g for g in gens if not g.is_identity())
        self._raw = _Raw(degree)
        self._base: list[int] = []
        self._levels: list[_Level] = []
        self._strong: list = [self._raw.load(g) for g in self.generators]
        for g in self._strong:
            self._ensure_moved_base_point(g)
        self._complete()
        order = 1
        for lvl in self._levels:
            order *= len(lvl.orbit)
        self.order: int = order
        self.base: tuple[int, ...] = tuple(self._base)
        for g in self.generators:
            if not self.contains(g):
                raise AssertionError("stabilizer chain failed to absorb a generator")

    def _ensure_moved_base_point(self, g) -> None:
        """Extend the base so that ``g`` moves at least one base point."""
        if any(g[b] != b for b in self._base):
            return
        moved = next(i for i, x in enumerate(g) if x != i)
        self._base.append(moved)
        self._levels.append(_Level(moved))

    def _sift_raw(self, p, start: int):
        for i in range(start, len(self._levels)):
            lvl = self._levels[i]
            repinv = lvl.tinv.get(p[lvl.point])
            if repinv is None:
                return p, i
            p = self._raw.compose(repinv, p)
        return p, len(self._levels)

    def _complete(self) -> None:
        i = len(self._levels) - 1
        while i >= 0:
            jump = self._process_level(i)
            i = i - 1 if jump is None else jump

    def _process_level(self, i: int) -> int | None:
        """Close level ``i`` under Schreier generators.

        Returns the level to reprocess when a new strong generator was
        found (all deeper levels stay complete), or None when level ``i``
        verified clean.
        """
        raw = self._raw
        ident = raw.identity
        lvl = self._levels[i]
        prefix = self._base[:i]
        lvl.gens = [g for g in self._strong if all(g[b] == b for b in prefix)]
        lvl.rebuild(raw)
        for x in lvl.orbit:
            ux = lvl.transversal[x]
            for g in lvl.gens:
                schreier = raw.compose(lvl.tinv[g[x]], raw.compose(g, ux))
                if schreier == ident:
                    continue
                residue, t = self._sift_raw(schreier, i + 1)
                if residue == ident:
                    continue
                self._strong.append(residue)
                self._ensure_moved_base_point(residue)
                return t
        return None

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        return tuple(self._raw.dump(g) for g in self._strong)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise PermError("degree mismatch in membership test")
        residue, _ = self._sift_raw(self._raw.load(p), 0)
        return residue == self._raw.identity

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def orbit_of(self, v: int) -> tuple[int, ...]:
        if not (0 <= v < self.degree):
            raise PermError(f"point {v} out of range 0..{self.degree - 1}")
        seen = {v}
        queue = [v]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for g in self.generators:
                y = g(x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def orbits(self, n_points: int | None = None) -> VertexPartition:
        """Orbit partition on ``0..n_points-1``, cells ordered by smallest element."""
        n = self.degree if n_points is None else n_points
        if n != self.degree:
            raise PermError("orbit computation must use the group's degree")
        cells = []
        assigned = [False] * n
        for v in range(n):
            if assigned[v]:
                continue
            orb = self.orbit_of(v)
            for x in orb:
                assigned[x] = True
            cells.append(orb)
        return VertexPartition(cells)

    def is_central(self, p: Permutation) -> bool:
        """Whether a member ``p`` commutes with the whole group."""
        if not self.contains(p):
            raise PermError("centrality is asserted about group members only")
        return all(p.commutes_with(g) for g in self.generators)

    def point_stabilizer_order(self, v: int) -> int:
        """``|G_v|`` via orbit-stabilizer; exact integer."""
        return self.order // len(self.orbit_of(v))

    def __repr__(self) -> str:
        return f"<PermGroup degree={self.degree} order={self.order} ngens={len(self.generators)}>"


def group_from_generators(
    gens: Iterable[Permutation], degree: int | None = None
) -> PermGroup:
    return PermGroup(gens, degree)
