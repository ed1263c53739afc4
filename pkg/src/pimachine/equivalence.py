"""Side-by-side check that the block machine and Grover iteration are one rotation.

Three angle sequences are built for a mass ratio:

* the machine angle after each block-block collision, reconstructed from the
  exact velocities;
* the 2-D Grover rotation started at angle ``pi`` (block 2 moving, block 1
  at rest);
* the Grover *search* rotation started from the uniform state, i.e. at
  angle ``theta*``, whose marked probability is ``sin((2t+1) theta*)**2``.

The first two must coincide; the third must be the first shifted by
``theta* - pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .angles import DEFAULT_MAX_BITS, collision_count_closed_form, theta_star
from .grover import success_probability_closed_form, two_dim_trajectory
from .machine import (
    DEFAULT_MAX_EVENTS,
    CollisionTrace,
    Event,
    MachineConfig,
    TraceMode,
    run_machine,
)

ANGLE_TOLERANCE = 1e-9
FULL_TRACE_LIMIT = 10**5

TWO_PI = 2 * math.pi


def _lift(raw: float, previous: float) -> float:
    """Representative of ``raw`` (mod 2 pi) in ``[previous, previous + 2 pi)``."""
    return previous + (raw - previous) % TWO_PI


def _lifted_angles(points: np.ndarray, start: float) -> list[float]:
    angles, previous = [], start
    for x, y in points:
        previous = _lift(math.atan2(y, x), previous)
        angles.append(previous)
    return angles


def machine_angle_trace(
    trace: CollisionTrace, c: MachineConfig, include_initial: bool = False
) -> list[float]:
    """Polar angle of ``(sqrt(m2) v2, sqrt(m1) v1)`` after each block-block collision.

    Angles are unwound so the sequence increases; this is unambiguous because
    each collision advances the angle by ``2 theta* < pi``.
    """
    if trace.mode is not TraceMode.FULL_TRACE:
        raise ValueError("angle reconstruction needs a full trace")
    w1, w2 = math.sqrt(c.m1), math.sqrt(c.m2)
    s0 = trace.states[0]
    previous = math.atan2(w1 * float(s0.v1), w2 * float(s0.v2)) % TWO_PI
    angles = [previous] if include_initial else []
    for before, after in zip(trace.states, trace.states[1:]):
        if before.next_event is Event.BLOCK_BLOCK:
            previous = _lift(math.atan2(w1 * float(after.v1), w2 * float(after.v2)), previous)
            angles.append(previous)
    return angles


@dataclass
class ComparisonReport:
    mass_ratio: Fraction
    theta_star: float
    machine_count: int
    closed_form_count: int | None
    counts_match: bool
    machine_angles: list[float] = field(default_factory=list)
    grover_angles: list[float] = field(default_factory=list)
    search_angles: list[float] = field(default_factory=list)
    max_angle_deviation: float = 0.0
    offset_used: float | None = None
    failure_index: int | None = None
    full_trace: bool = True

    @property
    def passed(self) -> bool:
        return self.counts_match and self.failure_index is None

    def as_dict(self) -> dict:
        return {
            "mass_ratio": str(self.mass_ratio),
            "theta_star": self.theta_star,
            "machine_count": self.machine_count,
            "closed_form_count": self.closed_form_count,
            "counts_match": self.counts_match,
            "full_trace": self.full_trace,
            "max_angle_deviation": self.max_angle_deviation,
            "offset_used": self.offset_used,
            "failure_index": self.failure_index,
            "passed": self.passed,
            "machine_angles": self.machine_angles,
            "grover_angles": self.grover_angles,
        }


def compare(
    c: MachineConfig,
    tolerance: float = ANGLE_TOLERANCE,
    max_events: int = DEFAULT_MAX_EVENTS,
    max_bits: int = DEFAULT_MAX_BITS,
    full_trace_limit: int = FULL_TRACE_LIMIT,
) -> ComparisonReport:
    """Compare machine and Grover dynamics for one configuration.

    Angle sequences are only built when the closed-form count is at most
    ``full_trace_limit``; above that the report compares counts alone.
    """
    closed = collision_count_closed_form(c.m1, c.m2, max_bits)
    theta = float(theta_star(c.m1, c.m2).mid)
    full = closed.certified and closed.count <= full_trace_limit
    trace = run_machine(c, TraceMode.FULL_TRACE if full else TraceMode.COUNT_ONLY, max_events)
    report = ComparisonReport(
        mass_ratio=c.mass_ratio,
        theta_star=theta,
        machine_count=trace.total_collisions,
        closed_form_count=closed.count,
        counts_match=closed.certified and closed.count == trace.total_collisions,
        full_trace=full,
    )
    if not full:
        return report

    # index t below is the number of block-block collisions, t = 0 is the start
    machine = machine_angle_trace(trace, c, include_initial=True)
    T = len(machine) - 1
    grover = _lifted_angles(two_dim_trajectory((-1.0, 0.0), theta, T), math.pi)
    search = _lifted_angles(two_dim_trajectory((math.cos(theta), math.sin(theta)), theta, T), 0.0)

    offsets = [s - (m - math.pi) for s, m in zip(search, machine)]
    report.offset_used = float(np.mean(offsets))

    deviations = []
    for t in range(T + 1):
        d = max(
            abs(machine[t] - (math.pi + 2 * t * theta)),
            abs(machine[t] - grover[t]),
            abs(math.sin(search[t]) ** 2 - math.sin(machine[t] - math.pi + theta) ** 2),
            abs(math.sin(search[t]) ** 2 - success_probability_closed_form(t, theta)),
        )
        deviations.append(d)
        if d > tolerance and report.failure_index is None:
            report.failure_index = t
    if abs(report.offset_used - theta) > tolerance and report.failure_index is None:
        report.failure_index = 0

    report.machine_angles = machine[1:]
    report.grover_angles = grover[1:]
    report.search_angles = search
    report.max_angle_deviation = max(deviations)
    return report
