"""Grover search as a dense state vector and as a rotation in the plane.

The phase shift is the reflection ``2|u><u| - I`` about the uniform state
``u``, so one iteration (oracle, then phase shift) rotates the
(unmarked, marked) plane by ``+2 theta`` with ``sin theta = 1/sqrt(N)``.
That sign choice leaves ``u`` fixed; the opposite convention differs only by
a global phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .machine import as_rational

Z = np.diag([1.0, -1.0])


@dataclass(frozen=True)
class GroverInstance:
    n: int
    k: int = 0
    # exact mass ratio m2/m1 this instance was derived from, if any
    mass_ratio: Fraction | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one qubit")
        if not 0 <= self.k < self.N:
            raise ValueError(f"marked index {self.k} outside [0, {self.N})")

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def theta(self) -> float:
        return math.asin(1 / math.sqrt(self.N))

    @property
    def theta_ratio(self) -> float | None:
        """Rotation angle of the mass ratio itself, before padding to ``2**n``."""
        if self.mass_ratio is None:
            return None
        return math.asin(math.sqrt(1 / (1 + self.mass_ratio)))

    def as_dict(self) -> dict:
        return {"n": self.n, "N": self.N, "k": self.k, "theta": self.theta}


def instance_from_ratio(m1, m2, k: int = 0) -> GroverInstance:
    """Qubit count ``ceil(log2(1 + m2/m1))``, computed without floating logs."""
    m1, m2 = as_rational(m1), as_rational(m2)
    if m1 <= 0 or m2 <= 0:
        raise ValueError("masses must be positive")
    ratio = m2 / m1
    if ratio < 1:
        raise ValueError(f"mass ratio m2/m1 = {ratio} < 1; the heavy block must be m2")
    # smallest n with 2**n >= 1 + ratio; 2**n is an integer so the ceiling can be taken first
    size = math.ceil(1 + ratio)
    return GroverInstance((size - 1).bit_length(), k, ratio)


def uniform_state(N: int) -> np.ndarray:
    return np.full(N, 1 / math.sqrt(N), dtype=complex)


def basis_state(N: int, k: int) -> np.ndarray:
    s = np.zeros(N, dtype=complex)
    s[k] = 1
    return s


def apply_oracle(s: np.ndarray, k: int) -> np.ndarray:
    """Flip the sign of the marked amplitude."""
    if not 0 <= k < len(s):
        raise ValueError(f"marked index {k} outside [0, {len(s)})")
    out = np.array(s, dtype=complex)
    out[k] = -out[k]
    return out


def apply_phase_shift_about_start(s: np.ndarray) -> np.ndarray:
    """Reflect about the uniform superposition: ``2<u|s>u - s``."""
    s = np.asarray(s, dtype=complex)
    # <u|s> u == mean(s) * ones
    return 2 * s.mean() - s


def grover_iterate(s: np.ndarray, k: int, t: int) -> np.ndarray:
    if t < 0:
        raise ValueError("iteration count must be non-negative")
    for _ in range(t):
        s = apply_phase_shift_about_start(apply_oracle(s, k))
    return s


def marked_probability(s: np.ndarray, k: int) -> float:
    return float(abs(s[k]) ** 2)


def rotation_operator(theta_star: float) -> np.ndarray:
    """Basis change ``U`` from the wall frame to the collision frame."""
    c, s = math.cos(theta_star), math.sin(theta_star)
    return np.array([[c, s], [-s, c]])


def g_matrix(theta_star: float) -> np.ndarray:
    """``U^T Z U Z``: wall reflection followed by reflection about the collision axis."""
    u = rotation_operator(theta_star)
    return u.T @ Z @ u @ Z


def evolve_two_dim(initial, theta_star: float, t: int) -> np.ndarray:
    """Apply ``g_matrix(theta_star)`` ``t`` times to a 2-vector."""
    return two_dim_trajectory(initial, theta_star, t)[-1]


def two_dim_trajectory(initial, theta_star: float, t: int) -> np.ndarray:
    """Array of shape ``(t + 1, 2)``: the initial vector and every iterate."""
    if t < 0:
        raise ValueError("t must be non-negative")
    g = g_matrix(theta_star)
    out = np.empty((t + 1, 2))
    out[0] = np.asarray(initial, dtype=float)
    for i in range(t):
        out[i + 1] = g @ out[i]
    return out


def success_probability_closed_form(t: int, theta_star: float) -> float:
    if t < 0:
        raise ValueError("t must be non-negative")
    return math.sin((2 * t + 1) * theta_star) ** 2


def optimal_iterations(theta: float) -> int:
    return math.floor(math.pi / (4 * theta))


def probability_trace(instance: GroverInstance, steps: int) -> list[tuple[int, float, float, float]]:
    """Rows ``(t, P_statevector, P_closed_form, theta_t)`` for ``t = 0..steps``.

    The state vector always uses the padded ``N``. The closed form uses the
    angle of the exact mass ratio when the instance carries one.
    """
    theta = instance.theta_ratio if instance.mass_ratio is not None else instance.theta
    s = uniform_state(instance.N)
    rows = []
    for t in range(steps + 1):
        if t:
            s = grover_iterate(s, instance.k, 1)
        rows.append(
            (
                t,
                marked_probability(s, instance.k),
                success_probability_closed_form(t, theta),
                (2 * t + 1) * theta,
            )
        )
    return rows
