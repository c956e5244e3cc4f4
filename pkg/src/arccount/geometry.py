"""Points, spans, ranks and group orders in P^{k-1}(F_q)."""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .field import Field, build_field
from .polynomial import Q, IntegerPolynomial

Point = tuple[int, ...]


class DegenerateSpan(ValueError):
    pass


def normalize(vec: Sequence[int], F: Field) -> Point:
    """Scale so the first nonzero coordinate is 1."""
    for x in vec:
        if x:
            s = F.inv(x)
            return tuple(int(F.mul[s, y]) for y in vec)
    raise ValueError("the zero vector is not a projective point")


def rank(rows: Sequence[Sequence[int]], F: Field) -> int:
    """Row rank over GF(q) by Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = F.inv(m[r][c])
        m[r] = [int(F.mul[s, x]) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [int(F.sub[x, F.mul[f, y]]) for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def point_rank(pts: Iterable[Sequence[int]], F: Field) -> int:
    """Rank of the matrix whose columns (equivalently rows) are the points."""
    return rank(list(pts), F)


def collinear(pts: Iterable[Sequence[int]], F: Field) -> bool:
    return point_rank(pts, F) <= 2


def coplanar(pts: Iterable[Sequence[int]], F: Field) -> bool:
    return point_rank(pts, F) <= 3


def _rref(rows: Sequence[Sequence[int]], F: Field) -> tuple[list[list[int]], list[int]]:
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = F.inv(m[r][c])
        m[r] = [int(F.mul[s, x]) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [int(F.sub[x, F.mul[f, y]]) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[int]], ncols: int, F: Field) -> list[Point]:
    """Basis of the vectors orthogonal to every row."""
    m, pivots = _rref(rows, F) if rows else ([], [])
    out = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[free] = 1
        for row, c in zip(m, pivots):
            v[c] = int(F.neg[row[free]])
        out.append(normalize(v, F))
    return out


def _det3(m, F: Field) -> int:
    def d2(a, b, c, d):
        return int(F.sub[F.mul[a, d], F.mul[b, c]])
    t0 = F.mul[m[0][0], d2(m[1][1], m[1][2], m[2][1], m[2][2])]
    t1 = F.mul[m[0][1], d2(m[1][0], m[1][2], m[2][0], m[2][2])]
    t2 = F.mul[m[0][2], d2(m[1][0], m[1][1], m[2][0], m[2][1])]
    return int(F.add[F.sub[t0, t1], t2])


def pgl_order(k: int, q: int) -> int:
    """|PGL_k(F_q)| as an exact integer."""
    out = 1
    for i in range(k):
        out *= q ** k - q ** i
    return out // (q - 1)


def pgl_polynomial(k: int) -> IntegerPolynomial:
    """|PGL_k(F_q)| as a polynomial in q."""
    num = IntegerPolynomial.product((Q ** k - Q ** i) for i in range(1, k))
    # (q^k - 1)/(q - 1) = 1 + q + ... + q^{k-1}
    return num * IntegerPolynomial([1] * k)


def projective_point_count(dim_plus_one: int, q: int) -> int:
    """Number of points of a projective space of vector dimension ``r``."""
    return (q ** dim_plus_one - 1) // (q - 1)


def gaussian_count_polynomial(r: int) -> IntegerPolynomial:
    """1 + q + ... + q^{r-1}, the point count of a rank-r subspace."""
    return IntegerPolynomial([1] * r)


class ProjectiveSpace:
    """P^{k-1}(F_q) with a lexicographically ordered point table.

    ``coords`` is an ``(N, k)`` integer array; rows are normalized points.
    Span membership masks are cached, since the realization counters query
    the same lines and planes many times.
    """

    def __init__(self, k: int, q: int):
        self.k = k
        self.q = q
        self.F = build_field(q)
        pts = []
        for vec in product(range(q), repeat=k):
            nz = next((x for x in vec if x), None)
            if nz == 1:
                pts.append(vec)
        self.points: list[Point] = pts
        self.coords = np.array(pts, dtype=np.int64)
        self.coords.setflags(write=False)
        self._code = np.full(q ** k, -1, dtype=np.int64)
        weights = q ** np.arange(k - 1, -1, -1)
        self._weights = weights
        self._code[self.coords @ weights] = np.arange(len(pts))
        self._span_cache: dict[tuple[int, ...], np.ndarray] = {}
        self._line_cache: dict[tuple[int, int], np.ndarray] = {}
        self._plane_cache: dict[int, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.points)

    def index(self, vec: Sequence[int]) -> int:
        p = normalize(vec, self.F)
        return int(self._code[int(np.dot(p, self._weights))])

    def indices_of(self, arr: np.ndarray) -> np.ndarray:
        """Indices of already-normalized coordinate rows."""
        return self._code[arr @ self._weights]

    def dot_all(self, vec: Sequence[int]) -> np.ndarray:
        """Bilinear pairing of every point with ``vec``."""
        F = self.F
        acc = np.zeros(len(self.points), dtype=np.int64)
        for i, c in enumerate(vec):
            if c:
                acc = F.add[acc, F.mul[self.coords[:, i], c]]
        return acc

    def normalize_rows(self, arr: np.ndarray) -> np.ndarray:
        """Scale every nonzero row so its first nonzero entry is 1."""
        F = self.F
        lead_col = (arr != 0).argmax(axis=1)
        lead = arr[np.arange(len(arr)), lead_col]
        return F.mul[F.inv_table[lead][:, None], arr]

    def line_mask(self, a: int, b: int) -> np.ndarray:
        """Points on the line through points ``a != b``."""
        key = (a, b) if a < b else (b, a)
        hit = self._line_cache.get(key)
        if hit is not None:
            return hit
        if a == b:
            raise DegenerateSpan("a line needs two distinct points")
        F = self.F
        pa, pb = self.coords[a], self.coords[b]
        t = np.arange(self.q)[:, None]
        rows = F.add[pb[None, :], F.mul[t, pa[None, :]]]
        mask = np.zeros(len(self.points), dtype=bool)
        mask[self.indices_of(self.normalize_rows(rows))] = True
        mask[a] = True
        mask.setflags(write=False)
        self._line_cache[key] = mask
        return mask

    def plane_normal(self, a: int, b: int, c: int) -> Point | None:
        """Normalized normal of the plane through three points; None if collinear (k = 4 only)."""
        F = self.F
        rows = [self.points[a], self.points[b], self.points[c]]
        normal = []
        for skip in range(4):
            cols = [j for j in range(4) if j != skip]
            m = [[r[j] for j in cols] for r in rows]
            d = _det3(m, F)
            normal.append(d if skip % 2 == 0 else int(F.neg[d]))
        if not any(normal):
            return None
        return normalize(normal, F)

    def plane_mask(self, a: int, b: int, c: int) -> np.ndarray:
        """Points on the plane through three non-collinear points (k = 4)."""
        normal = self.plane_normal(a, b, c)
        if normal is None:
            raise DegenerateSpan("a plane needs three non-collinear points")
        key = int(np.dot(normal, self._weights))
        hit = self._plane_cache.get(key)
        if hit is not None:
            return hit
        mask = self.dot_all(normal) == 0
        mask.setflags(write=False)
        self._plane_cache[key] = mask
        return mask

    def span_mask(self, idx: Sequence[int]) -> np.ndarray:
        """Boolean mask of the points lying in the span of the given points."""
        key = tuple(sorted(set(idx)))
        hit = self._span_cache.get(key)
        if hit is not None:
            return hit
        rows = [self.points[i] for i in key]
        mask = np.ones(len(self.points), dtype=bool)
        # intersect the hyperplanes containing the span
        for normal in nullspace(rows, self.k, self.F):
            mask &= self.dot_all(normal) == 0
        mask.setflags(write=False)
        self._span_cache[key] = mask
        return mask

    def span_points(self, idx: Sequence[int]) -> list[Point]:
        return [self.points[i] for i in np.flatnonzero(self.span_mask(idx))]

    def line_through(self, p1: Sequence[int], p2: Sequence[int]) -> frozenset[Point]:
        a, b = self.index(p1), self.index(p2)
        if a == b:
            raise DegenerateSpan("a line needs two distinct points")
        return frozenset(self.span_points([a, b]))

    def plane_through(self, p1, p2, p3) -> frozenset[Point]:
        idx = [self.index(p) for p in (p1, p2, p3)]
        if point_rank([self.points[i] for i in idx], self.F) < 3:
            raise DegenerateSpan("a plane needs three non-collinear points")
        return frozenset(self.span_points(idx))


@lru_cache(maxsize=None)
def projective_space(k: int, q: int) -> ProjectiveSpace:
    return ProjectiveSpace(k, q)


def enumerate_points(k: int, q: int) -> list[Point]:
    return list(projective_space(k, q).points)
