"""Finite fields GF(q) for small prime powers, backed by full lookup tables.

Elements are integers in ``range(q)``.  The integer ``c`` stands for the
polynomial ``sum(d_i * t**i)`` where ``d_i`` are the base-``p`` digits of
``c``; arithmetic is reduced modulo a fixed irreducible polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_ORDER = 16


class NotPrimePower(ValueError):
    pass


class UnsupportedOrder(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e`` or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, e


# -- polynomials over GF(p) as ascending coefficient lists ------------------

def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _monic_polys(p: int, degree: int):
    """Monic polynomials of the given degree, ordered by the integer code of
    their lower coefficients (constant term least significant)."""
    for code in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(code % p)
            code //= p
        yield coeffs + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(p, d):
            if not _poly_mod(poly, cand, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """The least (by integer code) monic irreducible polynomial of degree e."""
    if e == 1:
        return (0, 1)
    for cand in _monic_polys(p, e):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# Documented constants; checked against default_modulus in the test suite.
MODULI = {
    4: (1, 1, 1),        # t^2 + t + 1
    8: (1, 1, 0, 1),     # t^3 + t + 1
    9: (1, 0, 1),        # t^2 + 1
    16: (1, 1, 0, 0, 1), # t^4 + t + 1
}


@dataclass(frozen=True, eq=False)
class Field:
    """GF(q) with precomputed add / sub / mul / neg / inv tables."""

    p: int
    e: int
    modulus: tuple[int, ...]
    add: np.ndarray = field(repr=False)
    sub: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def elements(self) -> range:
        return range(self.q)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return int(self.mul[a, self.inv(b)])

    def power(self, a: int, k: int) -> int:
        r = 1
        for _ in range(k):
            r = int(self.mul[r, a])
        return r

    def __repr__(self) -> str:
        return f"Field(q={self.q})"


def _digits(c: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(c % p)
        c //= p
    return out


def _code(d: list[int], p: int) -> int:
    return sum(x * p ** i for i, x in enumerate(d))


@lru_cache(maxsize=None)
def build_field(q: int) -> Field:
    """Construct GF(q) for a prime power ``q <= MAX_ORDER``."""
    p, e = factor_prime_power(q)
    if q > MAX_ORDER:
        raise UnsupportedOrder(f"q={q} exceeds the supported ceiling {MAX_ORDER}")
    modulus = default_modulus(p, e)
    if not is_irreducible(list(modulus), p):  # pragma: no cover
        raise AssertionError(f"modulus {modulus} is reducible over GF({p})")

    digits = [_digits(c, p, e) for c in range(q)]
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = _code([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(digits[a]):
                for j, y in enumerate(digits[b]):
                    prod[i + j] = (prod[i + j] + x * y) % p
            red = _poly_mod(prod, list(modulus), p) if e > 1 else [prod[0] % p]
            mul[a, b] = _code(red + [0] * (e - len(red)), p)

    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
    sub = add[:, neg]
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        hits = np.flatnonzero(mul[a] == 1)
        if len(hits) != 1:  # pragma: no cover
            raise AssertionError(f"GF({q}) table construction failed at {a}")
        inv[a] = hits[0]
    for t in (add, sub, mul, neg, inv):
        t.setflags(write=False)
    return Field(p, e, modulus, add, sub, mul, neg, inv)


def inv(a: int, F: Field) -> int:
    return F.inv(a)
