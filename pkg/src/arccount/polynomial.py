"""Exact univariate integer polynomials in ``q`` and residue-class quasipolynomials."""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping, Union

IntLike = Union[int, "IntegerPolynomial"]


class IntegerPolynomial:
    """Polynomial with Python-int coefficients, ascending degree, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def const(cls, c: int) -> "IntegerPolynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntegerPolynomial":
        return cls([0] * degree + [c])

    @classmethod
    def from_descending(cls, coeffs: Iterable[int]) -> "IntegerPolynomial":
        return cls(list(coeffs)[::-1])

    @classmethod
    def product(cls, factors: Iterable[IntLike]) -> "IntegerPolynomial":
        out = cls.const(1)
        for f in factors:
            out = out * f
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, d: int) -> int:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __call__(self, q: int) -> int:
        r = 0
        for c in reversed(self.coeffs):
            r = r * q + c
        return r

    evaluate = __call__

    @staticmethod
    def _lift(x: IntLike) -> "IntegerPolynomial":
        if isinstance(x, IntegerPolynomial):
            return x
        if isinstance(x, int):
            return IntegerPolynomial.const(x)
        return NotImplemented

    def __add__(self, other: IntLike) -> "IntegerPolynomial":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return IntegerPolynomial(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "IntegerPolynomial":
        return IntegerPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: IntLike) -> "IntegerPolynomial":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: IntLike) -> "IntegerPolynomial":
        return self._lift(other) - self

    def __mul__(self, other: IntLike) -> "IntegerPolynomial":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return IntegerPolynomial()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return IntegerPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntegerPolynomial":
        out = IntegerPolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, divisor: "IntegerPolynomial") -> tuple["IntegerPolynomial", "IntegerPolynomial"]:
        """Division by a polynomial whose leading coefficient is +-1."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = divisor.leading()
        if lead not in (1, -1):
            raise ValueError("divisor must have leading coefficient +-1")
        rem = list(self.coeffs)
        dq = divisor.degree
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * lead
            if c:
                quot[i - dq] = c
                for j, d in enumerate(divisor.coeffs):
                    rem[i - dq + j] -= c * d
        return IntegerPolynomial(quot), IntegerPolynomial(rem)

    def exact_div(self, divisor: "IntegerPolynomial") -> "IntegerPolynomial":
        quot, rem = self.divmod(divisor)
        if not rem.is_zero():
            raise ArithmeticError(f"{divisor} does not divide {self}")
        return quot

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntegerPolynomial.const(other)
        if not isinstance(other, IntegerPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntegerPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and d) else str(mag)
            if d == 1:
                body += "q"
            elif d > 1:
                body += f"q^{d}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


Q = IntegerPolynomial([0, 1])


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Quasipolynomial:
    """Branch ``r`` applies when ``q % modulus == r``."""

    __slots__ = ("modulus", "branches")

    def __init__(self, branches: Iterable[IntLike]):
        bs = [IntegerPolynomial._lift(b) for b in branches]
        if not bs:
            raise ValueError("a quasipolynomial needs at least one branch")
        self.branches: tuple[IntegerPolynomial, ...] = tuple(bs)
        self.modulus = len(bs)

    @classmethod
    def polynomial(cls, p: IntLike) -> "Quasipolynomial":
        return cls([p])

    @classmethod
    def by_parity(cls, even: IntLike, odd: IntLike) -> "Quasipolynomial":
        return cls([even, odd])

    def branch(self, q: int) -> IntegerPolynomial:
        return self.branches[q % self.modulus]

    def __call__(self, q: int) -> int:
        return self.branch(q)(q)

    evaluate = __call__

    def expand(self, modulus: int) -> "Quasipolynomial":
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        return Quasipolynomial(self.branches[r % self.modulus] for r in range(modulus))

    def reduced(self) -> "Quasipolynomial":
        """Smallest modulus representing the same function."""
        for m in range(1, self.modulus + 1):
            if self.modulus % m == 0 and all(
                self.branches[r] == self.branches[r % m] for r in range(self.modulus)
            ):
                return Quasipolynomial(self.branches[:m])
        return self  # pragma: no cover

    @staticmethod
    def _lift(x) -> "Quasipolynomial":
        if isinstance(x, Quasipolynomial):
            return x
        return Quasipolynomial([x])

    def _combine(self, other, op) -> "Quasipolynomial":
        o = self._lift(other)
        m = _lcm(self.modulus, o.modulus)
        a, b = self.expand(m), o.expand(m)
        return Quasipolynomial(op(x, y) for x, y in zip(a.branches, b.branches)).reduced()

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return self._combine(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __neg__(self):
        return Quasipolynomial(-b for b in self.branches)

    def exact_div(self, divisor: IntegerPolynomial) -> "Quasipolynomial":
        return Quasipolynomial(b.exact_div(divisor) for b in self.branches)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, IntegerPolynomial)):
            other = Quasipolynomial([other])
        if not isinstance(other, Quasipolynomial):
            return NotImplemented
        m = _lcm(self.modulus, other.modulus)
        return self.expand(m).branches == other.expand(m).branches

    def __hash__(self) -> int:
        return hash(self.reduced().branches)

    def __repr__(self) -> str:
        return f"Quasipolynomial(modulus={self.modulus}, branches={[str(b) for b in self.branches]})"


def parity_indicator() -> Quasipolynomial:
    """a(q): 1 for even q, 0 for odd q."""
    return Quasipolynomial.by_parity(1, 0)


class SymbolicCount:
    """``base(q) + sum(coeff_h(q) * A_h(4, q))`` over hyperfiguration atoms ``h``.

    Atoms are keyed by canonical encodings; zero coefficients are dropped.
    """

    __slots__ = ("base", "atoms")

    def __init__(self, base: IntLike = 0, atoms: Mapping[str, IntLike] | None = None):
        self.base = IntegerPolynomial._lift(base)
        cleaned = {}
        for k, v in (atoms or {}).items():
            v = IntegerPolynomial._lift(v)
            if not v.is_zero():
                cleaned[k] = v
        self.atoms: dict[str, IntegerPolynomial] = dict(sorted(cleaned.items()))

    @classmethod
    def atom(cls, key: str) -> "SymbolicCount":
        return cls(0, {key: 1})

    def __add__(self, other: "SymbolicCount") -> "SymbolicCount":
        atoms = dict(self.atoms)
        for k, v in other.atoms.items():
            atoms[k] = atoms[k] + v if k in atoms else v
        return SymbolicCount(self.base + other.base, atoms)

    def __neg__(self) -> "SymbolicCount":
        return SymbolicCount(-self.base, {k: -v for k, v in self.atoms.items()})

    def __sub__(self, other: "SymbolicCount") -> "SymbolicCount":
        return self + (-other)

    def scale(self, factor: IntLike) -> "SymbolicCount":
        return SymbolicCount(self.base * factor, {k: v * factor for k, v in self.atoms.items()})

    __mul__ = scale
    __rmul__ = scale

    def evaluate(self, q: int, atom_values: Mapping[str, int]) -> int:
        return self.base(q) + sum(c(q) * atom_values[k] for k, c in self.atoms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolicCount):
            return NotImplemented
        return self.base == other.base and self.atoms == other.atoms

    def __repr__(self) -> str:
        parts = [str(self.base)] + [f"({v})*A[{k}]" for k, v in self.atoms.items()]
        return "SymbolicCount(" + " + ".join(parts) + ")"
