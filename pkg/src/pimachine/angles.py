"""Closed-form angle dynamics of the machine at certified precision.

In the weighted velocity plane ``(sqrt(m2) v2, sqrt(m1) v1)`` every pair of
events (wall bounce, block collision) rotates the state by ``2 theta*`` with
``sin theta* = sqrt(m1 / (m1 + m2))``. Starting from angle ``pi`` the
machine stops once the angle can no longer advance without passing ``2 pi``,
which gives the collision count ``ceil(pi / theta*) - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CertificationError
from .intervals import Interval, atan_interval, pi_interval, sqrt_interval
from .machine import as_rational

MIN_BITS = 64
DEFAULT_MAX_BITS = 10**6

# m1/(m1+m2) -> pi/theta* for the ratios where theta* is a rational multiple of pi
_EXACT_CASES = {
    Fraction(1, 2): 4,  # theta* = pi/4, equal masses
    Fraction(1, 4): 6,  # theta* = pi/6, m2 = 3 m1
    Fraction(3, 4): 3,  # theta* = pi/3, m1 = 3 m2
}


@dataclass(frozen=True)
class CertifiedCount:
    """Collision count from the closed form.

    ``count`` is ``None`` when the precision ceiling was reached before the
    floor of ``pi/theta*`` could be pinned down.
    """

    count: int | None
    certified: bool
    precision_used: int
    mass_ratio: Fraction


def _validate_masses(m1, m2) -> tuple[Fraction, Fraction]:
    m1, m2 = as_rational(m1), as_rational(m2)
    if m1 <= 0 or m2 <= 0:
        raise ValueError(f"masses must be positive, got m1={m1}, m2={m2}")
    return m1, m2


def theta_star(m1, m2, bits: int = MIN_BITS) -> Interval:
    """Enclosure of ``arcsin(sqrt(m1/(m1+m2)))`` with relative width below ``2**(1-bits)``."""
    m1, m2 = _validate_masses(m1, m2)
    if bits < MIN_BITS:
        raise ValueError(f"bits must be at least {MIN_BITS}")
    target = Fraction(2) ** (1 - bits)
    # theta* is about sqrt(m1/m2) when m2 dominates; absolute precision must cover that scale
    scale_bits = max(0, math.floor(m2 / m1).bit_length() // 2) + 2
    work = bits + scale_bits
    while True:
        theta = _theta_star_abs(m1, m2, work)
        if theta.width < target * theta.lo:
            return theta
        work += bits


def _theta_star_abs(m1: Fraction, m2: Fraction, bits: int) -> Interval:
    # arcsin(sqrt(m1/(m1+m2))) == atan(sqrt(m1/m2)) == pi/2 - atan(sqrt(m2/m1))
    if m1 <= m2:
        x = sqrt_interval(m1 / m2, bits)
        x = Interval(x.lo, min(x.hi, Fraction(1)))
        return atan_interval(x, bits)
    x = sqrt_interval(m2 / m1, bits)
    return pi_interval(bits) / 2 - atan_interval(x, bits)


def angle_at(t: int, theta: Interval) -> Interval:
    """Polar angle after ``t`` block-block collisions: ``2 t theta* + pi``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    # pi accurate to the resolution of theta's endpoints, or to 64 bits if theta is coarser
    bits = max(MIN_BITS, theta.lo.denominator.bit_length(), theta.hi.denominator.bit_length())
    return 2 * t * theta + pi_interval(bits)


@dataclass(frozen=True)
class AngleModel:
    theta_star: Interval
    mass_ratio: Fraction
    precision_bits: int

    @classmethod
    def from_masses(cls, m1, m2, bits: int = MIN_BITS) -> AngleModel:
        m1, m2 = _validate_masses(m1, m2)
        return cls(theta_star(m1, m2, bits), m2 / m1, bits)

    def angle_at(self, t: int) -> Interval:
        return angle_at(t, self.theta_star)


def _exact_count(m1: Fraction, m2: Fraction) -> int | None:
    turns = _EXACT_CASES.get(m1 / (m1 + m2))
    return None if turns is None else turns - 1


def collision_count_closed_form(m1, m2, max_bits: int = DEFAULT_MAX_BITS) -> CertifiedCount:
    """Certified value of ``ceil(pi/theta*) - 1``.

    Precision starts at 64 bits and doubles until the enclosure of
    ``pi/theta*`` is narrower than 1/4 and contains no integer.
    """
    m1, m2 = _validate_masses(m1, m2)
    ratio = m2 / m1
    exact = _exact_count(m1, m2)
    if exact is not None:
        return CertifiedCount(exact, True, 0, ratio)
    bits, tried = MIN_BITS, 0
    while bits <= max_bits:
        quotient = pi_interval(bits) / theta_star(m1, m2, bits)
        if quotient.width < Fraction(1, 4) and not quotient.integers_inside():
            return CertifiedCount(math.floor(quotient.lo), True, bits, ratio)
        tried, bits = bits, bits * 2
    return CertifiedCount(None, False, tried, ratio)


def pi_digits(n: int, max_bits: int = DEFAULT_MAX_BITS) -> str:
    """Collision count for mass ratio ``100**n`` as a digit string."""
    if n < 0:
        raise ValueError("n must be non-negative")
    result = collision_count_closed_form(1, 100**n, max_bits)
    if not result.certified:
        raise CertificationError(
            f"count for mass ratio 10^{2 * n} not certified within {max_bits} bits"
        )
    return str(result.count)
