"""Symbolic arc counts by repeatedly removing a reducible point.

For a planar space ``f`` with a reducible point ``m`` and ``f' = f - m``::

    B_f = sum over labeled g >= f' of mu(f, m, g) * A_g
    A_f = B_f - sum over labeled g > f of A_g

where ``mu`` counts the ways to put ``m`` back into a strong realization
of ``g``.  Spaces without a reducible point (hyperfigurations) stay as
formal atoms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .canonical import canonical_encoding
from .enumerate import enumerate_planar_spaces, labeled_spaces
from .geometry import pgl_order, pgl_polynomial
from .library import NAMED
from .polynomial import IntegerPolynomial, Q, Quasipolynomial, SymbolicCount
from .realize import closed_form
from .spaces import (IndexClassification, PlanarSpace, index_classification, is_hyperfiguration,
                     leq_bits)

POINTS = Q ** 3 + Q ** 2 + Q + 1
PLANE = Q ** 2 + Q + 1
LINE = Q + 1


class NotReducible(ValueError):
    pass


class MissingClosedForm(LookupError):
    def __init__(self, atoms):
        self.atoms = list(atoms)
        super().__init__(f"no closed form for {len(self.atoms)} atom(s): {self.atoms}")


class NonIntegral(ArithmeticError):
    pass


def _removed(f: PlanarSpace, m: int):
    """Flats through ``m`` with ``m`` removed, in the labels of ``f.delete_point(m)``."""
    def shift(b):
        return frozenset(x - (x > m) for x in b if x != m)

    planes = [shift(H) for H in f.planes if m in H]
    lines = [shift(L) for L in f.lines if m in L]
    return planes, lines


def _require_reducible(f: PlanarSpace, m: int) -> tuple[int, int]:
    index = f.point_index(m)
    if index_classification(4, index) is not IndexClassification.REDUCIBLE:
        raise NotReducible(f"point {m} has index {index}")
    return index


def mu(f: PlanarSpace, m: int, g: PlanarSpace) -> IntegerPolynomial:
    """Ways to add ``m`` to a strong realization of ``g`` and get a weak realization of ``f``.

    Follows the case split on the index (i, j) of ``m``.
    """
    i, j = _require_reducible(f, m)
    n = f.n
    planes, lines = _removed(f, m)
    anywhere = POINTS - (n - 1)

    def in_line(X):
        return g.rank(X) <= 2

    def hull(X):
        return g.closure(X)

    if (i, j) == (0, 0):
        return anywhere
    if j == 1 and i <= 3:
        # (0,1), (1,1), (2,1), (3,1): the point goes on the extended line
        return LINE - len(hull(lines[0]))
    if (i, j) == (1, 0):
        if in_line(planes[0]):
            return anywhere
        return PLANE - len(hull(planes[0]))
    if (i, j) == (2, 0):
        h1, h2 = planes
        if in_line(h1) and in_line(h2):
            return anywhere
        if in_line(h1) or in_line(h2):
            other = h2 if in_line(h1) else h1
            return PLANE - len(hull(other))
        g1, g2 = hull(h1), hull(h2)
        if g1 == g2:
            return PLANE - len(g1)
        return LINE - len(g1 & g2)
    if j == 2 and i in (1, 3):
        l1, l2 = hull(lines[0]), hull(lines[1])
        if l1 == l2:
            return LINE - len(l1)
        # the extended lines meet in one point; it is usable unless g already has it
        return IntegerPolynomial.const(0 if l1 & l2 else 1)
    raise NotReducible(f"index {(i, j)}")  # pragma: no cover


def _subspace_points(rank: int) -> IntegerPolynomial:
    return IntegerPolynomial([1] * rank)


class AmbiguousExtension(ArithmeticError):
    pass


def mu_geometric(f: PlanarSpace, m: int, g: PlanarSpace) -> IntegerPolynomial:
    """``mu`` by intersecting the subspaces the new point must lie in.

    Every constraint is the span of a g-flat; in a strong realization of
    ``g`` the g-points on that span are exactly the flat, and the
    dimension of an intersection follows from ranks of unions.  Raises
    AmbiguousExtension when the answer would depend on the realization.
    """
    planes, lines = _removed(f, m)
    flats = [g.closure(L) for L in lines]
    flats += [g.closure(H) for H in planes if g.rank(H) > 2]
    flats = list(dict.fromkeys(flats))
    # keep the smallest spans only
    minimal = [F for F in flats
               if not any(G != F and g.rank(F | G) == g.rank(F) for G in flats)]
    if not minimal:
        return POINTS - g.n
    cur, cur_rank = minimal[0], g.rank(minimal[0])
    spanned = True
    for F in minimal[1:]:
        if not spanned:
            raise AmbiguousExtension("intersection with a subspace not spanned by g-points")
        d = cur_rank + g.rank(F) - g.rank(cur | F)
        if d <= 0:
            return IntegerPolynomial()
        cur, cur_rank = cur & F, d
        # g-points on the intersection are the common points; they may span less
        spanned = g.rank(cur) == d
    return _subspace_points(cur_rank) - len(cur)


# -- reduction --------------------------------------------------------------------

CHOICES = ("busiest", "lowest", "highest")


def reducible_point(f: PlanarSpace, choice: str = "busiest") -> int:
    """A reducible point of ``f``.

    ``busiest`` takes the point on the most full lines and planes (lowest
    label on ties); ``lowest`` and ``highest`` go by label.
    """
    pts = [p for p in range(f.n)
           if index_classification(4, f.point_index(p)) is IndexClassification.REDUCIBLE]
    if not pts:
        raise NotReducible("no reducible point")
    if choice == "lowest":
        return pts[0]
    if choice == "highest":
        return pts[-1]
    if choice == "busiest":
        return min(pts, key=lambda p: (-sum(f.point_index(p)), p))
    raise ValueError(f"unknown choice {choice!r}")


@dataclass
class Reduction:
    n: int
    counts: dict[str, SymbolicCount]
    chosen: dict[str, int]

    def __getitem__(self, encoding: str) -> SymbolicCount:
        return self.counts[encoding]


def _refinement_sum(f: PlanarSpace, counts: dict[str, SymbolicCount]) -> SymbolicCount:
    """Sum of A_g over labeled g strictly above ``f``."""
    mult: dict[str, int] = {}
    own = f.dependency_bits
    floor = f.dependency_count
    for g, cls in labeled_spaces(f.n):
        if g.dependency_count > floor and leq_bits(f, g) and g.dependency_bits != own:
            mult[cls] = mult.get(cls, 0) + 1
    total = SymbolicCount()
    for cls in sorted(mult):
        total = total + counts[cls].scale(mult[cls])
    return total


def weak_symbolic(f: PlanarSpace, m: int, counts: dict[str, SymbolicCount], mu_fn=mu) -> SymbolicCount:
    """B_f as a SymbolicCount via the lemma, using A of the classes on ``f.n - 1`` points."""
    fp = f.delete_point(m)
    per_class: dict[str, IntegerPolynomial] = {}
    for g, cls in labeled_spaces(fp.n):
        if leq_bits(fp, g):
            per_class[cls] = per_class.get(cls, IntegerPolynomial()) + mu_fn(f, m, g)
    total = SymbolicCount()
    for cls in sorted(per_class):
        total = total + counts[cls].scale(per_class[cls])
    return total


@lru_cache(maxsize=None)
def _reduce(n: int, choice: str) -> Reduction:
    if n <= 1:
        counts = {PlanarSpace(0).encoding: SymbolicCount(1)}
        chosen: dict[str, int] = {}
        if n == 1:
            counts[PlanarSpace(1).encoding] = SymbolicCount(POINTS)
        return Reduction(n, counts, chosen)
    prev = _reduce(n - 1, choice)
    counts = dict(prev.counts)
    chosen = dict(prev.chosen)
    level = sorted(enumerate_planar_spaces(n), key=lambda e: (-e.space.dependency_count, e.encoding))
    for entry in level:
        f = entry.space
        if is_hyperfiguration(f):
            counts[entry.encoding] = SymbolicCount.atom(entry.encoding)
            continue
        m = reducible_point(f, choice)
        chosen[entry.encoding] = m
        counts[entry.encoding] = weak_symbolic(f, m, counts) - _refinement_sum(f, counts)
    return Reduction(n, counts, chosen)


def reduce_all(n: int, choice: str = "busiest") -> Reduction:
    """SymbolicCount of A_f for every class on at most ``n`` points.

    ``choice`` picks the removed point (see :func:`reducible_point`).  The
    substituted result does not depend on it; the split between the base
    polynomial and the atoms can.
    """
    if choice not in CHOICES:
        raise ValueError(f"unknown choice {choice!r}")
    return _reduce(n, choice)


def arc_count_symbolic(n: int) -> SymbolicCount:
    """C_{n,4}(q): strong realizations of the space with no full lines or planes."""
    return reduce_all(n)[PlanarSpace(n).encoding]


# -- closed forms and conversions ---------------------------------------------------------

@lru_cache(maxsize=None)
def named_atoms() -> dict[str, str]:
    """Canonical encoding -> library name for the spaces with closed forms."""
    return {canonical_encoding(build()): name for name, build in NAMED.items()}


def substitute_closed_forms(sc: SymbolicCount) -> Quasipolynomial:
    names = named_atoms()
    missing = [k for k in sc.atoms if k not in names]
    if missing:
        raise MissingClosedForm(missing)
    total = Quasipolynomial.polynomial(sc.base)
    for key, coeff in sc.atoms.items():
        total = total + Quasipolynomial.polynomial(coeff) * closed_form(names[key]).expression
    return total.reduced()


def arc_count_formula(n: int) -> Quasipolynomial:
    return substitute_closed_forms(arc_count_symbolic(n))


def mds_count(n: int, k: int, q: int, arcs: int | None = None) -> int:
    """(q-1)^n C_{n,k}(q) / |PGL_k(F_q)|, the number of [n, k] MDS codes."""
    if arcs is None:
        if k != 4:
            raise ValueError("arc counts for k != 4 must be supplied")
        arcs = arc_count_formula(n)(q)
    num = (q - 1) ** n * arcs
    den = pgl_order(k, q)
    if num % den:
        raise NonIntegral(f"{num} / {den}")
    return num // den


def mds_quasipolynomial(n: int) -> Quasipolynomial:
    """M_{n,4}(q) symbolically; every branch must divide exactly."""
    c = arc_count_formula(n)
    scaled = Quasipolynomial.polynomial((Q - 1) ** n) * c
    try:
        return scaled.exact_div(pgl_polynomial(4))
    except ArithmeticError as exc:
        raise NonIntegral(str(exc)) from exc


# -- leading terms ----------------------------------------------------------------------

@dataclass(frozen=True)
class KaipaTerms:
    n: int
    k: int
    delta: int
    N: int
    b2: int

    @property
    def top_coefficients(self) -> tuple[int, int, int]:
        return 1, -(self.N - self.n), self.b2


def kaipa_terms(n: int, k: int) -> KaipaTerms:
    if n <= k:
        raise ValueError("needs n > k")
    delta = k * (n - k)
    N = comb(n, k)
    b2 = (Fraction(N * N - 5 * N + 4, 2)
          - Fraction(N * delta * (delta - n - 3), 2 * (delta + n + 1))
          - (n - 1) * (N - n)
          - Fraction(n * n - 3 * n + 2, 2))
    if b2.denominator != 1:
        raise NonIntegral(f"b2({k},{n}) = {b2}")
    return KaipaTerms(n, k, delta, N, int(b2))


@dataclass(frozen=True)
class KaipaCheck:
    terms: KaipaTerms
    quotients: tuple[IntegerPolynomial, ...]
    passed: bool
    skipped: bool


def kaipa_check(n: int) -> KaipaCheck:
    """Compare the top three coefficients of C_{n,4} / |PGL_4| with the asymptotic prediction.

    When the quotient has degree < 2 only its leading term is compared.
    """
    terms = kaipa_terms(n, 4)
    c = arc_count_formula(n)
    quotients = tuple(b.exact_div(pgl_polynomial(4)) for b in c.branches)
    top = terms.delta - n + 1
    ok = True
    skipped = top < 2
    for qt in quotients:
        if qt.degree != top or qt.leading() != 1:
            ok = False
            continue
        if not skipped:
            got = (qt.coeff(top), qt.coeff(top - 1), qt.coeff(top - 2))
            ok = ok and got == terms.top_coefficients
    return KaipaCheck(terms, quotients, ok, skipped)


# -- interchange ---------------------------------------------------------------------------

def _coeffs(p: IntegerPolynomial) -> list[str]:
    return [str(c) for c in p.coeffs]


def formula_json(n: int) -> dict:
    """Formula record; coefficients are ascending decimal strings."""
    sc = arc_count_symbolic(n)
    out: dict = {
        "n": n,
        "k": 4,
        "base": _coeffs(sc.base),
        "atoms": [{"space": key, "coeff": _coeffs(c)} for key, c in sc.atoms.items()],
    }
    names = named_atoms()
    if any(key in names for key in sc.atoms):
        out["atom_names"] = {key: names[key] for key in sc.atoms if key in names}
    try:
        sub = substitute_closed_forms(sc)
        out["substituted"] = {"modulus": sub.modulus, "branches": [_coeffs(b) for b in sub.branches]}
    except MissingClosedForm as exc:
        out["warning"] = {"missing_closed_forms": exc.atoms}
    return out


def formula_text(n: int) -> str:
    return json.dumps(formula_json(n), indent=1, sort_keys=True) + "\n"
