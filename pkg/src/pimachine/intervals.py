"""Rigorous real intervals with dyadic rational endpoints.

Transcendental enclosures (``atan`` of a rational, ``pi``) are computed in
fixed point on Python integers with explicit directed rounding: lower
bounds truncate every term downwards and drop the series tail, upper bounds
round every term up and add a geometric bound on the tail. Endpoints are
kept as :class:`~fractions.Fraction` so interval arithmetic on them is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> Interval:
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def relative_width(self) -> Fraction:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("relative width of an interval containing 0")
        return self.width / min(abs(self.lo), abs(self.hi))

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def integers_inside(self) -> range:
        """Every integer n with lo <= n <= hi."""
        return range(math.ceil(self.lo), math.floor(self.hi) + 1)

    def __add__(self, other):
        other = _coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("division by an interval containing 0")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"


def _coerce(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(x)


def _atan_fixed(num: int, den: int, prec: int) -> tuple[int, int]:
    """Bounds ``(lo, hi)`` with ``lo <= atan(num/den) * 2**prec <= hi``.

    Requires ``0 <= num <= den``. Uses Euler's series
    ``atan x = sum_n (2n)!!/(2n+1)!! * x**(2n+1) / (1+x**2)**(n+1)``,
    whose terms are positive with ratio below ``y = x**2/(1+x**2) <= 1/2``.
    """
    if not 0 <= num <= den:
        raise ValueError("argument must lie in [0, 1]")
    if num == 0:
        return 0, 0
    s = num * num + den * den
    sq = num * num
    first = (num * den) << prec

    lo = 0
    term = first // s
    n = 0
    while term:
        lo += term
        term = term * (2 * n + 2) * sq // ((2 * n + 3) * s)
        n += 1

    hi = 0
    term = -(-first // s)
    n = 0
    while term > 1:
        hi += term
        term = -(-term * (2 * n + 2) * sq // ((2 * n + 3) * s))
        n += 1
    # tail from the current term on is below term / (1 - y) = term * s / den**2
    hi += -(-term * s // (den * den))
    return lo, hi


@lru_cache(maxsize=64)
def _pi_fixed(prec: int) -> tuple[int, int]:
    # Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    a_lo, a_hi = _atan_fixed(1, 5, prec)
    b_lo, b_hi = _atan_fixed(1, 239, prec)
    return 16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo


def _working_precision(bits: int) -> int:
    # each series term contributes at most one ulp of rounding error
    return bits + bits.bit_length() + 12


def pi_interval(bits: int = 64) -> Interval:
    """Enclosure of pi with absolute width below ``2**-bits``."""
    prec = _working_precision(bits)
    lo, hi = _pi_fixed(prec)
    scale = 1 << prec
    return Interval(Fraction(lo, scale), Fraction(hi, scale))


def atan_interval(x: Interval, bits: int = 64) -> Interval:
    """Enclosure of ``atan`` over ``x``, for ``x`` inside ``[0, 1]``."""
    if x.lo < 0 or x.hi > 1:
        raise ValueError("atan_interval supports arguments in [0, 1] only")
    prec = _working_precision(bits)
    scale = 1 << prec
    lo, _ = _atan_fixed(x.lo.numerator, x.lo.denominator, prec)
    _, hi = _atan_fixed(x.hi.numerator, x.hi.denominator, prec)
    return Interval(Fraction(lo, scale), Fraction(hi, scale))


def sqrt_interval(q: Fraction, bits: int = 64) -> Interval:
    """Dyadic enclosure of ``sqrt(q)`` of absolute width at most ``2**-bits``."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative number")
    # floor(sqrt(floor(y))) == floor(sqrt(y)) for y >= 0
    root = math.isqrt((q.numerator << (2 * bits)) // q.denominator)
    scale = 1 << bits
    if root * root * q.denominator == q.numerator << (2 * bits):
        return Interval.point(Fraction(root, scale))
    return Interval(Fraction(root, scale), Fraction(root + 1, scale))
