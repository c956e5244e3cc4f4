"""Counting strong and weak realizations of planar spaces in P^3(F_q).

A realization assigns distinct points of P^3(F_q) to the points of a
planar space.  It is *strong* when the collinear triples and coplanar
quadruples are exactly the dependent ones of the space, and *weak* when
they include them.  Rank in a planar space is capped at 4, so checking
3- and 4-subsets decides everything.

The search assigns points one level at a time and keeps, for every
unassigned level, a boolean mask of admissible images; each assignment
intersects the masks of later levels with the line and plane masks it
creates.  The projective group is factored out by fixing the first few
images and multiplying by orbit sizes.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import prod

import numpy as np

from .field import Field, build_field
from .geometry import ProjectiveSpace, pgl_order, pgl_polynomial, projective_space
from .polynomial import IntegerPolynomial, Q, Quasipolynomial, parity_indicator
from .spaces import PlanarSpace


class UnsupportedMethod(ValueError):
    pass


class FramePreconditionFailed(ValueError):
    pass


class UnknownId(KeyError):
    pass


# -- search plans --------------------------------------------------------------

@dataclass
class _Plan:
    """Constraint rules grouped by the last level they mention.

    ``pairs[L]`` holds ``(k, i, inside)``: the image of level ``k`` must
    (or must not) lie on the line through the images of levels ``i < L``
    and ``L``.  ``triples[L]`` holds ``(k, i, j, inside)`` for planes.
    """

    n: int
    order: list[int]
    strong: bool
    pairs: list[list[tuple[int, int, bool]]] = field(default_factory=list)
    triples: list[list[tuple[int, int, int, bool]]] = field(default_factory=list)


def _degree_order(f: PlanarSpace) -> list[int]:
    return sorted(range(f.n), key=lambda p: (-sum(f.point_index(p)), p))


def _basis_first(f: PlanarSpace) -> tuple[list[int], int]:
    """Greedy independent set (descending degree) followed by the other points."""
    order = _degree_order(f)
    basis: list[int] = []
    for p in order:
        if len(basis) < 4 and f.rank(basis + [p]) == len(basis) + 1:
            basis.append(p)
    return basis + [p for p in order if p not in basis], len(basis)


def _make_plan(f: PlanarSpace, order: list[int], strong: bool) -> _Plan:
    n = f.n
    plan = _Plan(n, order, strong, [[] for _ in range(n)], [[] for _ in range(n)])
    for k in range(n):
        pk = order[k]
        for i, j in combinations(range(k), 2):
            inside = f.line_containing((order[i], order[j], pk)) is not None
            if strong or inside:
                plan.pairs[j].append((k, i, inside))
        for i, j, l in combinations(range(k), 3):
            tri = (order[i], order[j], order[l])
            if f.collinear(tri):
                continue
            inside = f.rank(tri + (pk,)) <= 3
            if strong or inside:
                plan.triples[l].append((k, i, j, inside))
    return plan


def _assign(P: ProjectiveSpace, plan: _Plan, assigned: list[int], L: int, masks: dict[int, np.ndarray]) -> None:
    c = assigned[L]
    for k in masks:
        masks[k][c] = False
    for k, i, inside in plan.pairs[L]:
        m = P.line_mask(assigned[i], c)
        masks[k] &= m if inside else ~m
    for k, i, j, inside in plan.triples[L]:
        a, b = assigned[i], assigned[j]
        if not plan.strong and P.line_mask(a, b)[c]:
            continue  # collinear images: every quadruple through them is coplanar
        m = P.plane_mask(a, b, c)
        masks[k] &= m if inside else ~m


def _search(P: ProjectiveSpace, plan: _Plan, assigned: list[int], L: int, masks: dict[int, np.ndarray]) -> int:
    n = plan.n
    if L == n:
        return 1
    cand = masks[L]
    if L == n - 1:
        return int(np.count_nonzero(cand))
    total = 0
    for c in np.flatnonzero(cand):
        assigned[L] = int(c)
        sub = {k: masks[k].copy() for k in range(L + 1, n)}
        _assign(P, plan, assigned, L, sub)
        total += _search(P, plan, assigned, L + 1, sub)
    return total


def _fresh_masks(P: ProjectiveSpace, n: int) -> dict[int, np.ndarray]:
    return {k: np.ones(len(P), dtype=bool) for k in range(n)}


def _run_prefix(P: ProjectiveSpace, plan: _Plan, prefix: list[int]) -> int:
    """Completions of a fixed image prefix (0 when the prefix itself is inadmissible)."""
    n = plan.n
    assigned = [0] * n
    masks = _fresh_masks(P, n)
    for L, c in enumerate(prefix):
        if not masks[L][c]:
            return 0
        assigned[L] = c
        del masks[L]
        _assign(P, plan, assigned, L, masks)
    return _search(P, plan, assigned, len(prefix), masks)


def _unit(P: ProjectiveSpace, support) -> int:
    v = [0] * P.k
    for i in support:
        v[i] = 1
    return P.index(v)


def ordered_independent_count(r: int, q: int, k: int = 4) -> int:
    """Ordered r-tuples of independent points in P^{k-1}(F_q)."""
    return prod(q ** k - q ** i for i in range(r)) // (q - 1) ** r


def _strong_count(f: PlanarSpace, q: int, symmetry: str) -> int:
    P = projective_space(4, q)
    if f.n == 0:
        return 1
    if symmetry == "none":
        plan = _make_plan(f, _degree_order(f), True)
        return _run_prefix(P, plan, [])
    order, r = _basis_first(f)
    plan = _make_plan(f, order, True)
    basis = [_unit(P, [i]) for i in range(r)]
    weight = ordered_independent_count(r, q)
    if symmetry == "basis" or f.n == r:
        return weight * _run_prefix(P, plan, basis)
    if symmetry != "torus":
        raise UnsupportedMethod(symmetry)
    # torus orbits of the next image: all-ones on a support inside the basis span
    total = 0
    for size in range(1, r + 1):
        for support in combinations(range(r), size):
            total += (q - 1) ** (size - 1) * _run_prefix(P, plan, basis + [_unit(P, support)])
    return weight * total


def _weak_count(f: PlanarSpace, q: int, symmetry: str) -> int:
    P = projective_space(4, q)
    n = f.n
    if n == 0:
        return 1
    plan = _make_plan(f, _degree_order(f), False)
    if symmetry == "none":
        return _run_prefix(P, plan, [])
    if symmetry != "orbit":
        raise UnsupportedMethod(symmetry)
    N = len(P)
    e1, e2, e3 = (_unit(P, [i]) for i in range(3))
    if n == 1:
        return N
    if n == 2:
        return N * (N - 1)
    # the stabilizer of two points has two orbits: the rest of their line, and everything else
    on_line = (q - 1) * _run_prefix(P, plan, [e1, e2, _unit(P, [0, 1])])
    off_line = (N - q - 1) * _run_prefix(P, plan, [e1, e2, e3])
    return N * (N - 1) * (on_line + off_line)


@lru_cache(maxsize=None)
def _strong_cached(encoding: str, q: int, symmetry: str) -> int:
    return _strong_count(PlanarSpace.from_encoding(encoding), q, symmetry)


@lru_cache(maxsize=None)
def _weak_cached(encoding: str, q: int, symmetry: str) -> int:
    return _weak_count(PlanarSpace.from_encoding(encoding), q, symmetry)


def count_strong(f: PlanarSpace, q: int, symmetry: str = "torus") -> int:
    """A_f(4, q).  ``symmetry`` is ``torus`` (default), ``basis`` or ``none``."""
    build_field(q)
    return _strong_cached(f.encoding, q, symmetry)


def count_weak(f: PlanarSpace, q: int, symmetry: str = "orbit") -> int:
    """B_f(4, q).  ``symmetry`` is ``orbit`` (default) or ``none``."""
    build_field(q)
    return _weak_cached(f.encoding, q, symmetry)


# -- arcs ------------------------------------------------------------------------

FRAME = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 1))


def count_arcs(n: int, q: int, method: str = "frame") -> int:
    """C_{n,4}(q): ordered n-tuples of points of P^3(F_q) with no four coplanar.

    ``naive`` fixes only an ordered basis, ``frame`` fixes the standard
    frame and multiplies by |PGL_4(F_q)|, ``exhaustive`` fixes nothing.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    trivial = PlanarSpace(n)
    if method == "naive":
        return count_strong(trivial, q, symmetry="basis")
    if method == "exhaustive":
        return count_strong(trivial, q, symmetry="none")
    if method != "frame":
        raise UnsupportedMethod(method)
    if n < 5:
        raise UnsupportedMethod("the frame method needs n >= 5")
    P = projective_space(4, q)
    plan = _make_plan(trivial, list(range(n)), True)
    return pgl_order(4, q) * _run_prefix(P, plan, [P.index(v) for v in FRAME])


def frame_extension_count(n: int, q: int) -> int:
    """Ordered (n - 5)-extensions of the standard frame that keep the arc property."""
    return count_arcs(n, q, "frame") // pgl_order(4, q)


# -- frame-reduced counting by minors ------------------------------------------------

@dataclass(frozen=True)
class FrameLayout:
    """Which points of ``h`` play which column of the normalized matrix.

    ``frame`` maps to e1, e2, e3, e4, (1,1,1,1); ``frame[1:4]`` together
    with ``plane_point`` form a full plane of exactly four points, sent to
    ``x = 0``.  The remaining points get first coordinate 1.
    """

    frame: tuple[int, int, int, int, int]
    plane_point: int
    others: tuple[int, ...]


def frame_layout(h: PlanarSpace) -> FrameLayout:
    def general(pts):
        return not any(h.collinear(t) for t in combinations(pts, 3)) and h.rank(pts) == 4 and not any(
            h.dependent(s) for s in combinations(pts, 4))

    for H in h.planes:
        if len(H) != 4:
            continue
        outside = [p for p in range(h.n) if p not in H]
        for inner in combinations(H, 3):
            v = next(x for x in H if x not in inner)
            for a, b in combinations(outside, 2):
                pts = (a,) + inner + (b,)
                if general(pts):
                    others = tuple(p for p in range(h.n) if p not in pts and p != v)
                    return FrameLayout(pts, v, others)
    raise FramePreconditionFailed("no five general points with three on a four-point plane")


def _det(cols, F: Field):
    """Determinant of a square matrix given as columns of (vectorized) entries."""
    m = len(cols)
    if m == 1:
        return cols[0][0]
    if m == 2:
        return F.sub[F.mul[cols[0][0], cols[1][1]], F.mul[cols[1][0], cols[0][1]]]
    total = None
    for j in range(m):
        minor = [c[1:] for idx, c in enumerate(cols) if idx != j]
        term = F.mul[cols[j][0], _det(minor, F)]
        if j % 2:
            term = F.neg[term]
        total = term if total is None else F.add[total, term]
    return total


def _all_minors_zero(cols, size: int, F: Field):
    """True where every ``size x size`` minor of the 4 x len(cols) matrix vanishes."""
    out = None
    for rows in combinations(range(4), size):
        d = _det([[c[r] for r in rows] for c in cols], F)
        z = d == 0
        out = z if out is None else out & z
    return out


MAX_FRAME_ASSIGNMENTS = 50_000_000


def frame_reduced_strong_count(h: PlanarSpace, q: int) -> int:
    """A_h(4, q) = |PGL_4(F_q)| / (q - 1) * #W_h, counting W_h over every variable assignment."""
    F = build_field(q)
    lay = frame_layout(h)
    free = 3 * (1 + len(lay.others))
    if q ** free > MAX_FRAME_ASSIGNMENTS:
        raise FramePreconditionFailed(f"{q}^{free} assignments exceed the exhaustive budget")
    grids = np.indices((q,) * free).reshape(free, -1) if free else np.zeros((0, 1), dtype=np.int64)
    size = grids.shape[1]
    col: dict[int, list] = {}
    for p, vec in zip(lay.frame, FRAME):
        col[p] = [np.full(size, x, dtype=np.int64) for x in vec]
    col[lay.plane_point] = [np.zeros(size, dtype=np.int64), grids[0], grids[1], grids[2]]
    for t, p in enumerate(lay.others, start=1):
        col[p] = [np.ones(size, dtype=np.int64), grids[3 * t], grids[3 * t + 1], grids[3 * t + 2]]

    ok = np.ones(size, dtype=bool)
    for pair in combinations(range(h.n), 2):
        ok &= ~_all_minors_zero([col[p] for p in pair], 2, F)
    for tri in combinations(range(h.n), 3):
        collinear = _all_minors_zero([col[p] for p in tri], 3, F)
        ok &= collinear if h.line_containing(tri) is not None else ~collinear
    for quad in combinations(range(h.n), 4):
        if any(h.collinear(t) for t in combinations(quad, 3)):
            continue
        zero = _det([col[p] for p in quad], F) == 0
        ok &= zero if h.dependent(quad) else ~zero
    w = int(np.count_nonzero(ok))
    num = pgl_order(4, q) * w
    if num % (q - 1):
        raise ArithmeticError("frame-reduced count is not divisible by q - 1")
    return num // (q - 1)


# -- closed forms ----------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedForm:
    ident: str
    expression: Quasipolynomial
    note: str = ""

    def __call__(self, q: int) -> int:
        return self.expression(q)


def pgl4() -> IntegerPolynomial:
    return pgl_polynomial(4)


def pgl3() -> IntegerPolynomial:
    return pgl_polynomial(3)


def _closed_forms() -> dict[str, ClosedForm]:
    a = parity_indicator()
    one = Quasipolynomial.polynomial(1)
    base = (Q ** 2 + Q + 1) * (Q ** 2 + 1) * (Q + 1) ** 2 * Q ** 6
    P4 = Quasipolynomial.polynomial(pgl4())
    return {
        "A6": ClosedForm("A6", Quasipolynomial.polynomial(base * (Q - 1) ** 2)),
        "h1": ClosedForm("h1", (one - a) * P4),
        "h2": ClosedForm("h2", a * P4),
        "h3": ClosedForm("h3", Quasipolynomial.polynomial(Q - 2) * P4),
        "h4": ClosedForm("h4", P4),
        "h5": ClosedForm("h5", Quasipolynomial.polynomial(base * (Q - 1) ** 2 * (Q - 2))),
        "h6": ClosedForm("h6", a * Quasipolynomial.polynomial(Q ** 3 + Q ** 2 + Q + 1) * Quasipolynomial.polynomial(pgl3()),
                         note="Fano plane in one of the q^3+q^2+q+1 planes"),
    }


def alternative_h6_form() -> ClosedForm:
    """a(q) q (q-1) (q-2) |PGL_3(F_q)|.

    Vanishes at q = 2 although the Fano plane embeds in every plane of
    P^3(F_2); kept for comparison with :func:`closed_form`.
    """
    a = parity_indicator()
    return ClosedForm("h6", a * Quasipolynomial.polynomial(Q * (Q - 1) * (Q - 2) * pgl3()), note="vanishes at q = 2")


def closed_form(ident: str) -> ClosedForm:
    forms = _closed_forms()
    if ident not in forms:
        raise UnknownId(ident)
    return forms[ident]


def evaluate(form: ClosedForm, q: int) -> int:
    return form(q)


# -- result rows -----------------------------------------------------------------------

@dataclass(frozen=True)
class RealizationCount:
    space: str
    q: int
    strong: int
    weak: int | None
    method: str
    elapsed_ms: int = 0

    def to_json(self) -> str:
        row = {
            "space": self.space,
            "q": str(self.q),
            "strong": str(self.strong),
            "weak": None if self.weak is None else str(self.weak),
            "method": self.method,
            "elapsed_ms": str(self.elapsed_ms),
        }
        return json.dumps(row, sort_keys=True)


def realization_row(f: PlanarSpace, q: int, weak: bool = True, method: str = "bruteforce") -> RealizationCount:
    t0 = time.perf_counter()
    if method == "bruteforce":
        s = count_strong(f, q)
    elif method == "frame":
        s = frame_reduced_strong_count(f, q)
    else:
        raise UnsupportedMethod(method)
    w = count_weak(f, q) if weak else None
    return RealizationCount(f.encoding, q, s, w, method, int((time.perf_counter() - t0) * 1000))
