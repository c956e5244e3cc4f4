"""Planar spaces: points with full lines (>= 3 points) and full planes (>= 4 points).

A planar space on ``n`` labeled points ``0..n-1`` is the same thing as a
simple matroid of rank at most 4, recorded by its full lines and full
planes.  Two-point lines and three-point planes are implicit and never
stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from itertools import combinations
from math import factorial
from typing import Iterable, Mapping, Sequence

Block = tuple[int, ...]


class GroundSetMismatch(ValueError):
    pass


class NotConfiguration(ValueError):
    pass


class BadArity(ValueError):
    pass


def _blocks(blocks: Iterable[Iterable[int]]) -> tuple[Block, ...]:
    return tuple(sorted({tuple(sorted(set(b))) for b in blocks}))


def _fmt(blocks: Sequence[Block]) -> str:
    return "|".join(",".join(map(str, b)) for b in blocks)


@lru_cache(maxsize=None)
def subset_index(n: int, k: int) -> dict[tuple[int, ...], int]:
    """Bit position of each sorted k-subset of range(n) (lexicographic order)."""
    return {c: i for i, c in enumerate(combinations(range(n), k))}


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.axiom}: {self.witness}"


@dataclass(frozen=True)
class PlanarSpace:
    n: int
    lines: tuple[Block, ...] = ()
    planes: tuple[Block, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lines", _blocks(self.lines))
        object.__setattr__(self, "planes", _blocks(self.planes))

    # -- text form ---------------------------------------------------------
    @cached_property
    def encoding(self) -> str:
        """``n=<n>;L=<blocks>;H=<blocks>``, blocks joined by ``|``."""
        return f"n={self.n};L={_fmt(self.lines)};H={_fmt(self.planes)}"

    @classmethod
    def from_encoding(cls, text: str) -> "PlanarSpace":
        parts = dict(p.split("=", 1) for p in text.strip().split(";"))

        def parse(s: str):
            return [tuple(int(x) for x in b.split(",")) for b in s.split("|") if b]

        return cls(int(parts["n"]), parse(parts["L"]), parse(parts["H"]))

    def __str__(self) -> str:
        return self.encoding

    # -- incidence queries --------------------------------------------------
    @cached_property
    def _line_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(b) for b in self.lines)

    @cached_property
    def _plane_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(b) for b in self.planes)

    def line_containing(self, pts: Iterable[int]) -> frozenset[int] | None:
        s = set(pts)
        return next((L for L in self._line_sets if s <= L), None)

    def plane_containing(self, pts: Iterable[int]) -> frozenset[int] | None:
        s = set(pts)
        return next((H for H in self._plane_sets if s <= H), None)

    def rank(self, pts: Iterable[int]) -> int:
        """Matroid rank, truncated at 4."""
        s = set(pts)
        k = len(s)
        if k <= 2:
            return k
        if self.line_containing(s) is not None:
            return 2
        if k == 3:
            return 3
        if self.plane_containing(s) is not None:
            return 3
        return 4

    def closure(self, pts: Iterable[int]) -> frozenset[int]:
        s = frozenset(pts)
        r = self.rank(s)
        if r <= 1:
            return s
        if r == 2:
            return self.line_containing(s) or s
        if r == 3:
            return self.plane_containing(s) or s
        return frozenset(range(self.n))

    def collinear(self, pts: Iterable[int]) -> bool:
        return self.rank(pts) <= 2

    def dependent(self, pts: Iterable[int]) -> bool:
        """True when the points span less than their count (capped at 4)."""
        s = set(pts)
        return self.rank(s) < min(len(s), 4)

    def point_index(self, p: int) -> tuple[int, int]:
        """(number of full planes, number of full lines) through ``p``."""
        return (sum(p in H for H in self.planes), sum(p in L for L in self.lines))

    @cached_property
    def indices(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.point_index(p) for p in range(self.n))

    @cached_property
    def dependency_bits(self) -> tuple[int, int]:
        """Bitmasks of collinear triples and dependent quadruples.

        Refinement ``f <= g`` is exactly bitwise inclusion of these masks.
        """
        tri = 0
        for i, c in enumerate(combinations(range(self.n), 3)):
            if self.line_containing(c) is not None:
                tri |= 1 << i
        quad = 0
        for i, c in enumerate(combinations(range(self.n), 4)):
            if self.rank(c) <= 3:
                quad |= 1 << i
        return tri, quad

    @cached_property
    def dependency_count(self) -> int:
        t, qd = self.dependency_bits
        return bin(t).count("1") + bin(qd).count("1")

    # -- transformations -----------------------------------------------------
    def relabel(self, perm: Mapping[int, int] | Sequence[int]) -> "PlanarSpace":
        """Image under the bijection ``p -> perm[p]``."""
        return PlanarSpace(
            self.n,
            [[perm[x] for x in b] for b in self.lines],
            [[perm[x] for x in b] for b in self.planes],
        )

    def delete_point(self, m: int) -> "PlanarSpace":
        """Restrict to the other points and relabel them ``0..n-2`` in order."""
        if not 0 <= m < self.n:
            raise IndexError(m)

        def shift(b):
            return [x - (x > m) for x in b if x != m]

        lines = [shift(L) for L in self.lines]
        lines = [L for L in lines if len(L) >= 3]
        line_sets = [set(L) for L in lines]
        planes = []
        for H in self.planes:
            h = shift(H)
            if len(h) >= 4 and not any(set(h) <= L for L in line_sets):
                planes.append(h)
        return PlanarSpace(self.n - 1, lines, planes)

    def with_point_added(self, lines: Iterable[Iterable[int]], planes: Iterable[Iterable[int]]) -> "PlanarSpace":
        return PlanarSpace(self.n + 1, list(lines), list(planes))


def trivial_space(n: int) -> PlanarSpace:
    return PlanarSpace(n)


def validate(ps: PlanarSpace) -> Violation | None:
    """Return the first violated axiom with witnesses, or None when valid."""
    n = ps.n
    for kind, blocks, least in (("line", ps.lines, 3), ("plane", ps.planes, 4)):
        for b in blocks:
            if len(b) < least:
                return Violation(f"{kind} too small", (b,))
            if b[0] < 0 or b[-1] >= n:
                return Violation(f"{kind} label out of range", (b,))
    lines = ps._line_sets
    planes = ps._plane_sets
    for L1, L2 in combinations(lines, 2):
        if len(L1 & L2) > 1:
            return Violation("two lines share two points", (tuple(sorted(L1)), tuple(sorted(L2))))
    for H in planes:
        for L in lines:
            if H <= L:
                return Violation("plane contained in a line", (tuple(sorted(H)), tuple(sorted(L))))
    for H in planes:
        for L in lines:
            if len(H & L) >= 2 and not L <= H:
                return Violation("line meets plane in two points but is not inside it",
                                 (tuple(sorted(L)), tuple(sorted(H))))
    for H1, H2 in combinations(planes, 2):
        common = H1 & H2
        if len(common) > 2 and not any(common <= L for L in lines):
            return Violation("two planes share a non-collinear triple", (tuple(sorted(H1)), tuple(sorted(H2))))
    for L in lines:
        for p in range(n):
            if p not in L and not any(L <= H and p in H for H in planes):
                return Violation("line and outside point not in a common plane", (tuple(sorted(L)), p))
    return None


def is_valid(ps: PlanarSpace) -> bool:
    return validate(ps) is None


def is_hyper_index(index: tuple[int, int]) -> bool:
    i, j = index
    return i >= 4 or j >= 3 or (i, j) == (3, 0)


def is_hyperfiguration(ps: PlanarSpace) -> bool:
    """Every point has index (i, j) with i >= 4, j >= 3 or (i, j) == (3, 0).

    The empty space is not counted as a hyperfiguration.
    """
    return ps.n > 0 and all(is_hyper_index(ix) for ix in ps.indices)


def leq(f: PlanarSpace, g: PlanarSpace, literal: bool = False) -> bool:
    """Refinement order ``f <= g`` on a common labeled ground set.

    Every line of ``f`` must lie in a line of ``g``; every plane of ``f``
    must lie in a plane of ``g`` or, unless ``literal`` is set, in a line
    of ``g``.
    """
    if f.n != g.n:
        raise GroundSetMismatch(f"{f.n} != {g.n}")
    for L in f._line_sets:
        if not any(L <= M for M in g._line_sets):
            return False
    for H in f._plane_sets:
        if any(H <= K for K in g._plane_sets):
            continue
        if not literal and any(H <= M for M in g._line_sets):
            continue
        return False
    return True


def leq_bits(f: PlanarSpace, g: PlanarSpace) -> bool:
    """Same as :func:`leq` (amended), via dependency masks."""
    if f.n != g.n:
        raise GroundSetMismatch(f"{f.n} != {g.n}")
    (ft, fq), (gt, gq) = f.dependency_bits, g.dependency_bits
    return ft & ~gt == 0 and fq & ~gq == 0


# -- point index classification --------------------------------------------

class IndexClassification(Enum):
    REDUCIBLE = "reducible"
    IMPOSSIBLE = "impossible"
    SURPRISING = "surprising"
    HYPER = "hyper"
    UNKNOWN = "unknown"


def index_classification(k: int, index: Sequence[int]) -> IndexClassification:
    index = tuple(index)
    if len(index) != k - 2 or k < 4:
        raise BadArity(f"k={k} needs an index of length {k - 2}, got {index}")
    if k == 4:
        if index in ((0, 2), (2, 2)):
            return IndexClassification.IMPOSSIBLE
        if index == (3, 0):
            return IndexClassification.SURPRISING
        if is_hyper_index(index):
            return IndexClassification.HYPER
        return IndexClassification.REDUCIBLE
    if 0 < index[-1] <= 2:
        return IndexClassification.REDUCIBLE
    if index[0] >= 1 and index_classification(k - 1, index[1:]) is IndexClassification.SURPRISING:
        return IndexClassification.SURPRISING
    return IndexClassification.UNKNOWN


def surprising_index_bounds(k: int) -> tuple[int, int]:
    """((k-1)!/6, k!/6): bounds on the number of surprising indices."""
    if k < 4:
        raise ValueError("bounds hold for k >= 4")
    return factorial(k - 1) // 6, factorial(k) // 6


def reducible_points(ps: PlanarSpace) -> list[int]:
    return [p for p, ix in enumerate(ps.indices)
            if index_classification(4, ix) is IndexClassification.REDUCIBLE]


# -- (n_k) configurations ----------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    n: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(sorted(tuple(sorted(b)) for b in self.blocks)))

    def regularity(self) -> int:
        """The k of an (n_k) configuration; raises NotConfiguration otherwise."""
        if len(self.blocks) != self.n or not self.blocks:
            raise NotConfiguration("an (n_k) configuration has n blocks")
        sizes = {len(b) for b in self.blocks}
        degrees = {sum(p in b for b in self.blocks) for p in range(self.n)}
        if len(sizes) != 1 or degrees != sizes:
            raise NotConfiguration(f"block sizes {sizes}, point degrees {degrees}")
        return sizes.pop()


def complement(config: Configuration, k: int | None = None) -> Configuration:
    """Replace every block by its complement in the point set."""
    kk = config.regularity()
    if k is not None and k != kk:
        raise NotConfiguration(f"expected an ({config.n}_{k}) configuration, got k={kk}")
    pts = set(range(config.n))
    return Configuration(config.n, tuple(tuple(sorted(pts - set(b))) for b in config.blocks))


# -- k-planar spaces ----------------------------------------------------------

@dataclass(frozen=True)
class KPlanarSpace:
    """Points with flat families ``flats[0] = H_1`` (hyperplanes) ... ``flats[-1] = H_{k-2}`` (lines)."""

    n: int
    flats: tuple[tuple[Block, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "flats", tuple(_blocks(f) for f in self.flats))

    @property
    def k(self) -> int:
        return len(self.flats) + 2

    @classmethod
    def from_planar_space(cls, ps: PlanarSpace) -> "KPlanarSpace":
        return cls(ps.n, (ps.planes, ps.lines))

    def to_planar_space(self) -> PlanarSpace:
        if self.k != 4:
            raise BadArity("only 4-planar spaces are planar spaces")
        return PlanarSpace(self.n, self.flats[1], self.flats[0])

    def point_index(self, p: int) -> tuple[int, ...]:
        return tuple(sum(p in b for b in fam) for fam in self.flats)

    def validate(self) -> Violation | None:
        """Size and pairwise-intersection axioms per dimension."""
        lower: list[frozenset[int]] = []
        for j in range(len(self.flats) - 1, -1, -1):
            dim = self.k - 2 - j
            fam = [frozenset(b) for b in self.flats[j]]
            for b in fam:
                if len(b) < dim + 2:
                    return Violation(f"dimension-{dim} flat too small", (tuple(sorted(b)),))
                if any(b <= low for low in lower):
                    return Violation(f"dimension-{dim} flat inside a lower flat", (tuple(sorted(b)),))
            for b1, b2 in combinations(fam, 2):
                common = b1 & b2
                if len(common) > dim and not any(common <= low for low in lower):
                    return Violation(f"dimension-{dim} flats meet too much",
                                     (tuple(sorted(b1)), tuple(sorted(b2))))
            lower.extend(fam)
        if self.k == 4:
            return validate(self.to_planar_space())
        return None
