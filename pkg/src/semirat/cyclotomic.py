"""Exact arithmetic in the cyclotomic field Q(w), w a primitive e-th root of unity.

Elements are stored in the power basis ``1, w, ..., w^(phi(e)-1)`` after
reduction modulo the e-th cyclotomic polynomial, with integer coordinates
over a common positive denominator. Denominator 1 means the element lies
in Z[w].
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .errors import ConductorMismatch


def _poly_divexact(num: list, den: list) -> list:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c, rem = divmod(num[i + len(den) - 1], lead)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> tuple:
    """Coefficients (lowest degree first) of the e-th cyclotomic polynomial."""
    if e < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (e - 1) + [1]  # x^e - 1
    for d in range(1, e):
        if e % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _powers(e: int) -> tuple:
    """``x^j mod Phi_e`` for ``j = 0 .. max(e, 2 phi - 1) - 1`` as coordinate tuples."""
    phi_poly = cyclotomic_poly(e)
    deg = len(phi_poly) - 1
    count = max(e, 2 * deg - 1)
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(count):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi_poly[i]
    return tuple(rows)


def degree(e: int) -> int:
    return len(cyclotomic_poly(e)) - 1


class Cyclotomic:
    """Element of Q(w_e); immutable and hashable."""

    __slots__ = ("e", "coords", "den")

    def __init__(self, e: int, coords, den: int = 1):
        coords = tuple(int(c) for c in coords)
        if len(coords) != degree(e):
            raise ValueError(f"conductor {e} needs {degree(e)} coordinates, got {len(coords)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            coords, den = tuple(-c for c in coords), -den
        g = math.gcd(den, *coords)
        if g > 1:
            coords, den = tuple(c // g for c in coords), den // g
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, e: int) -> "Cyclotomic":
        return cls(e, (0,) * degree(e))

    @classmethod
    def integer(cls, e: int, c) -> "Cyclotomic":
        c = Fraction(c)
        coords = [0] * degree(e)
        coords[0] = c.numerator
        return cls(e, coords, c.denominator)

    @classmethod
    def root(cls, e: int, j: int = 1) -> "Cyclotomic":
        """``w^j``."""
        return cls(e, _powers(e)[j % e])

    @classmethod
    def from_exponents(cls, e: int, terms, den: int = 1) -> "Cyclotomic":
        """``sum c * w^j`` over ``terms`` given as ``{j: c}`` or ``(j, c)`` pairs."""
        items = terms.items() if isinstance(terms, dict) else terms
        pw = _powers(e)
        acc = [0] * degree(e)
        for j, c in items:
            if c:
                for i, v in enumerate(pw[j % e]):
                    if v:
                        acc[i] += c * v
        return cls(e, acc, den)

    # predicates -------------------------------------------------------------
    def is_integral(self) -> bool:
        """True iff the element lies in Z[w]."""
        return self.den == 1

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def is_rational_integer(self) -> bool:
        return self.den == 1 and self.is_rational()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.coords[0], self.den)

    def __complex__(self) -> complex:
        return sum(c * cmath.exp(2j * cmath.pi * i / self.e) for i, c in enumerate(self.coords)) / self.den

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.e != self.e:
                raise ConductorMismatch(f"conductors {self.e} and {other.e} differ")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.integer(self.e, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.den * other.den // math.gcd(self.den, other.den)
        a, b = d // self.den, d // other.den
        return Cyclotomic(self.e, [a * x + b * y for x, y in zip(self.coords, other.coords)], d)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.e, [-c for c in self.coords], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Cyclotomic(self.e, [c * other.numerator for c in self.coords],
                              self.den * other.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        deg = len(self.coords)
        acc = [0] * (2 * deg - 1)
        b_nz = [(j, b) for j, b in enumerate(other.coords) if b]
        for i, a in enumerate(self.coords):
            if a:
                for j, b in b_nz:
                    acc[i + j] += a * b
        out = acc[:deg]
        pw = _powers(self.e)
        for k in range(deg, len(acc)):
            c = acc[k]
            if c:
                for i, v in enumerate(pw[k]):
                    if v:
                        out[i] += c * v
        return Cyclotomic(self.e, out, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Cyclotomic(self.e, [c * other.denominator for c in self.coords],
                              self.den * other.numerator)
        return NotImplemented

    def conj(self) -> "Cyclotomic":
        """Complex conjugate, the ring automorphism ``w -> w^-1``."""
        return Cyclotomic.from_exponents(self.e, [((-i) % self.e, c) for i, c in enumerate(self.coords)], self.den)

    def galois(self, k: int) -> "Cyclotomic":
        """Image under ``w -> w^k`` (``k`` coprime to the conductor)."""
        return Cyclotomic.from_exponents(self.e, [((k * i) % self.e, c) for i, c in enumerate(self.coords)], self.den)

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.coords[0], self.den) == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.e == other.e and self.coords == other.coords and self.den == other.den

    def __hash__(self):
        return hash((self.e, self.coords, self.den))

    def __repr__(self) -> str:
        return f"Cyclotomic({self.e}, {list(self.coords)}, den={self.den})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        if self.den != 1:
            return f"({body})/{self.den}"
        return body

    def to_json(self) -> dict:
        out = {"conductor": self.e, "coords": list(self.coords)}
        if self.den != 1:
            out["den"] = self.den
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "Cyclotomic":
        return cls(doc["conductor"], doc["coords"], doc.get("den", 1))


# Integral elements are the same type; the alias names the Z[w] use.
CyclotomicInt = Cyclotomic
