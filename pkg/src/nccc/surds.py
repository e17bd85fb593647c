"""Exact numbers of the form ``a + b*sqrt(d)`` with rational ``a, b``.

``d`` is a square-free positive integer; rational values carry ``d == 1``
and ``b == 0``. Arithmetic is closed for operands sharing the same ``d``
(or where one side is rational), which covers every closed-form spectrum
and energy handled in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = ["Surd", "surd", "sqrt", "as_surd", "square_free_split"]


def square_free_split(r: int) -> tuple[int, int]:
    """Write ``r >= 0`` as ``k*k*d`` with ``d`` square-free; return ``(k, d)``."""
    if r < 0:
        raise ValueError(f"negative radicand {r}")
    if r == 0:
        return 0, 1
    k, d = 1, 1
    rest = r
    f = 2
    while f * f <= rest:
        e = 0
        while rest % f == 0:
            rest //= f
            e += 1
        k *= f ** (e // 2)
        if e % 2:
            d *= f
        f += 1 if f == 2 else 2
    d *= rest
    return k, d


@dataclass(frozen=True)
class Surd:
    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    # -- construction -------------------------------------------------
    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be a positive square-free integer")
        if (self.b == 0 or self.d == 1) and (self.d != 1 or self.b != 0):
            raise ValueError("use surd() to build normalized values")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    # -- exact order --------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __abs__(self) -> Surd:
        return -self if self.sign() < 0 else self

    def __neg__(self) -> Surd:
        return surd(-self.a, -self.b, self.d)

    def __pos__(self) -> Surd:
        return self

    def _coerce(self, other) -> Surd | None:
        if isinstance(other, Surd):
            return other
        if isinstance(other, (int, Rational)):
            return surd(Fraction(other))
        return None

    def _common_d(self, other: Surd) -> int:
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise ValueError(f"incompatible radicands {self.d} and {other.d}")

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return surd(self.a + o.a, self.b + o.b, self._common_d(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._common_d(o)
        return surd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return surd(self.a / Fraction(other), self.b / Fraction(other), self.d)
        return NotImplemented

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.a, self.b, self.d) == (o.a, o.b, o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __float__(self) -> float:
        if self.b == 0:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = f"√{self.d}"
        if self.b == 1:
            irr = root
        elif self.b == -1:
            irr = "-" + root
        else:
            irr = f"{self.b}{root}" if self.b.denominator == 1 else f"({self.b}){root}"
        if self.a == 0:
            return irr
        if irr.startswith("-"):
            return f"{self.a} - {irr[1:]}"
        return f"{self.a} + {irr}"

    def __repr__(self) -> str:
        return f"Surd({self})"


def surd(a=0, b=0, radicand=1) -> Surd:
    """Normalized ``a + b*sqrt(radicand)``; ``radicand`` may be a non-negative rational."""
    a, b, r = Fraction(a), Fraction(b), Fraction(radicand)
    if r < 0:
        raise ValueError(f"negative radicand {radicand}")
    if r.denominator != 1:
        # sqrt(p/q) = sqrt(p*q)/q
        b /= r.denominator
        r = Fraction(r.numerator * r.denominator)
    k, d = square_free_split(int(r))
    b *= k
    if b == 0 or d == 1:
        return Surd(a + b, Fraction(0), 1)
    return Surd(a, b, d)


def sqrt(radicand) -> Surd:
    return surd(0, 1, radicand)


def as_surd(x) -> Surd:
    return x if isinstance(x, Surd) else surd(x)
