"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Values are stored in the power basis 1, zeta, ..., zeta^(phi(e)-1) of a fixed
conductor e, reduced modulo the e-th cyclotomic polynomial.  A value of
conductor e embeds losslessly into any conductor divisible by e; mixed-
conductor arithmetic promotes both operands to the lcm.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Coefficients of Phi_e, low degree first.  Monic, integral."""
    if e == 1:
        return (-1, 1)
    # divide x^e - 1 by the product of Phi_d over proper divisors d
    num = [0] * (e + 1)
    num[0], num[e] = -1, 1
    den = [1]
    for d in range(1, e):
        if e % d == 0:
            den = _poly_mul_int(den, list(cyclotomic_polynomial(d)))
    quot, rem = _poly_divmod_int(num, den)
    assert not any(rem), f"cyclotomic division left a remainder for e={e}"
    return tuple(quot)


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic up to sign of the leading coefficient, division stays integral
    num = list(num)
    dlead = den[-1]
    quot = [0] * (len(num) - len(den) + 1)
    for i in range(len(quot) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], dlead)
        assert r == 0
        quot[i] = c
        for j, dv in enumerate(den):
            num[i + j] -= c * dv
    return quot, num[: len(den) - 1]


class Cyclotomic:
    """An element of Q(zeta_e) in the reduced power basis of its conductor."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable[Rational]):
        if conductor < 1:
            raise ValueError("conductor must be >= 1")
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != euler_phi(conductor):
            raise ValueError(
                f"expected {euler_phi(conductor)} coefficients for conductor {conductor}, "
                f"got {len(cs)}")
        self.conductor = conductor
        self.coeffs = cs

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, q: Rational) -> "Cyclotomic":
        return cls(1, (Fraction(q),))

    @classmethod
    def zeta(cls, e: int, power: int = 1) -> "Cyclotomic":
        """zeta_e ** power."""
        coeffs = [Fraction(0)] * e
        coeffs[power % e] = Fraction(1)
        return cls._reduce(e, coeffs)

    @classmethod
    def _reduce(cls, e: int, poly: list[Fraction]) -> "Cyclotomic":
        """Reduce a polynomial in zeta_e (any degree) modulo Phi_e."""
        phi = cyclotomic_polynomial(e)
        d = len(phi) - 1
        poly = list(poly)
        for i in range(len(poly) - 1, d - 1, -1):
            lead = poly[i]
            if lead:
                for j in range(d + 1):
                    poly[i - d + j] -= lead * phi[j]
        poly = poly[:d] + [Fraction(0)] * max(0, d - len(poly))
        return cls(e, poly[:d])

    # -- conductor handling --------------------------------------------------

    def promoted(self, e: int) -> "Cyclotomic":
        """The same value expressed at conductor e (self.conductor must divide e)."""
        if e == self.conductor:
            return self
        if e % self.conductor != 0:
            raise ValueError(f"cannot promote conductor {self.conductor} into {e}")
        step = e // self.conductor
        poly = [Fraction(0)] * (len(self.coeffs) * step)
        for i, c in enumerate(self.coeffs):
            poly[i * step] = c
        return Cyclotomic._reduce(e, poly)

    @staticmethod
    def _common(x: "Cyclotomic", y: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic", int]:
        e = math.lcm(x.conductor, y.conductor)
        return x.promoted(e), y.promoted(e), e

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(v) -> "Cyclotomic":
        if isinstance(v, Cyclotomic):
            return v
        if isinstance(v, (int, Fraction)):
            return Cyclotomic.from_rational(v)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, e = Cyclotomic._common(self, other)
        return Cyclotomic(e, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        return Cyclotomic._coerce(other) + (-self)

    def __mul__(self, other) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, e = Cyclotomic._common(self, other)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        return Cyclotomic._reduce(e, prod)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Cyclotomic":
        """Division by a nonzero rational only."""
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.conductor, tuple(c / q for c in self.coeffs))
        return NotImplemented

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, zeta -> zeta^-1."""
        e = self.conductor
        poly = [Fraction(0)] * e
        for i, c in enumerate(self.coeffs):
            poly[(-i) % e] += c
        return Cyclotomic._reduce(e, poly)

    # -- predicates and views -------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_part(self) -> Fraction:
        """The value as a Fraction; raises ValueError if it is irrational."""
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def sort_key(self, conductor: int) -> tuple[Fraction, ...]:
        """Coefficient tuple at a common conductor, for deterministic ordering."""
        return self.promoted(conductor).coeffs

    def __eq__(self, other) -> bool:
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, _ = Cyclotomic._common(self, other)
        return a.coeffs == b.coeffs

    # equal values can carry different conductors (zeta_6 vs -zeta_3^2), so a
    # conductor-dependent hash would break the hash contract; sort_key() gives
    # a canonical comparable form when one is needed
    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyclotomic({self.coeffs[0]})"
        return f"Cyclotomic(e={self.conductor}, {list(self.coeffs)})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"z{self.conductor}^{i}" if i > 1 else f"z{self.conductor}")
            else:
                parts.append(f"{c}*z{self.conductor}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts) if parts else "0"


ZERO = Cyclotomic.from_rational(0)
ONE = Cyclotomic.from_rational(1)
