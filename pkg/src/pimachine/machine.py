"""Exact event-driven simulation of two blocks sliding against a wall.

Block 1 (mass ``m1``) sits between the wall and block 2 (mass ``m2``).
Velocities are negative towards the wall. Only velocities are tracked:
with block 1 starting at rest the order of events is fixed by the velocity
signs, so positions would only change *when* things happen, not *what*
happens.

All arithmetic is on :class:`fractions.Fraction`, so the collision count is
exact regardless of how close the final event is to tangency.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import ContractError, EventLimitExceeded

DEFAULT_MAX_EVENTS = 10**8


class Event(str, enum.Enum):
    BLOCK_BLOCK = "BlockBlock"
    WALL_BOUNCE = "WallBounce"
    TERMINATED = "Terminated"


class TraceMode(str, enum.Enum):
    COUNT_ONLY = "count"
    FULL_TRACE = "full"


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing floats (they are not exact)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not masses or velocities")
    if isinstance(value, (Fraction, int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def classify(v1: Fraction, v2: Fraction) -> Event:
    """Return the next event for blocks moving with velocities ``v1``, ``v2``.

    Raises ValueError when both a block-block collision and a wall bounce
    are possible; which comes first then depends on positions.
    """
    if v2 < v1:
        if v1 < 0:
            raise ValueError(
                f"ambiguous state v1={v1}, v2={v2}: event order depends on positions"
            )
        return Event.BLOCK_BLOCK
    if v1 < 0:
        return Event.WALL_BOUNCE
    return Event.TERMINATED


@dataclass(frozen=True)
class MachineConfig:
    m1: Fraction
    m2: Fraction
    v2_initial: Fraction = Fraction(-1)
    v1_initial: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("m1", "m2", "v2_initial", "v1_initial"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.m1 <= 0 or self.m2 <= 0:
            raise ValueError(f"masses must be positive, got m1={self.m1}, m2={self.m2}")
        if self.v2_initial >= 0:
            raise ValueError("v2_initial must be negative (block 2 moving towards the wall)")
        classify(self.v1_initial, self.v2_initial)

    @classmethod
    def from_ratio(cls, ratio, v2_initial=-1) -> MachineConfig:
        """Config with ``m1 = 1`` and ``m2 = ratio``."""
        return cls(Fraction(1), as_rational(ratio), as_rational(v2_initial))

    @property
    def mass_ratio(self) -> Fraction:
        return self.m2 / self.m1

    def energy(self, v1: Fraction, v2: Fraction) -> Fraction:
        # Twice the kinetic energy; the factor 1/2 is irrelevant for conservation.
        return self.m1 * v1 * v1 + self.m2 * v2 * v2

    def momentum(self, v1: Fraction, v2: Fraction) -> Fraction:
        return self.m1 * v1 + self.m2 * v2


@dataclass(frozen=True)
class MachineState:
    v1: Fraction
    v2: Fraction
    collisions: int = 0

    @property
    def next_event(self) -> Event:
        return classify(self.v1, self.v2)

    @classmethod
    def initial(cls, config: MachineConfig) -> MachineState:
        return cls(config.v1_initial, config.v2_initial, 0)


@dataclass(frozen=True)
class CollisionTrace:
    """Result of :func:`run_machine`.

    In full-trace mode ``states`` holds the initial state followed by the
    state after every event; in count-only mode it holds the final state only.
    """

    states: tuple[MachineState, ...]
    total_collisions: int
    mode: TraceMode = TraceMode.FULL_TRACE

    @property
    def final(self) -> MachineState:
        return self.states[-1]

    @property
    def events(self) -> list[Event]:
        """Event type of each recorded transition (full traces only)."""
        if self.mode is not TraceMode.FULL_TRACE:
            raise ContractError("event list requires a full trace")
        return [s.next_event for s in self.states[:-1]]


def step_block_collision(s: MachineState, c: MachineConfig) -> MachineState:
    """Elastic collision between the two blocks."""
    if s.next_event is not Event.BLOCK_BLOCK:
        raise ContractError(
            f"block collision requested but next event is {s.next_event.value}"
        )
    m1, m2 = c.m1, c.m2
    total = m1 + m2
    v1 = ((m1 - m2) * s.v1 + 2 * m2 * s.v2) / total
    v2 = ((m2 - m1) * s.v2 + 2 * m1 * s.v1) / total
    return MachineState(v1, v2, s.collisions + 1)


def step_wall_bounce(s: MachineState) -> MachineState:
    """Block 1 reflects off the wall."""
    if s.next_event is not Event.WALL_BOUNCE:
        raise ContractError(
            f"wall bounce requested but next event is {s.next_event.value}"
        )
    return MachineState(-s.v1, s.v2, s.collisions + 1)


def step(s: MachineState, c: MachineConfig) -> MachineState:
    event = s.next_event
    if event is Event.BLOCK_BLOCK:
        return step_block_collision(s, c)
    if event is Event.WALL_BOUNCE:
        return step_wall_bounce(s)
    raise ContractError("machine has already terminated")


def run_machine(
    c: MachineConfig,
    trace_mode: TraceMode | str = TraceMode.COUNT_ONLY,
    max_events: int = DEFAULT_MAX_EVENTS,
) -> CollisionTrace:
    """Run the machine until no further collision can happen.

    Raises :class:`EventLimitExceeded` instead of returning a truncated count.
    """
    trace_mode = TraceMode(trace_mode)
    if max_events <= 0:
        raise ValueError("max_events must be positive")
    state = MachineState.initial(c)
    keep = trace_mode is TraceMode.FULL_TRACE
    states = [state]
    while state.next_event is not Event.TERMINATED:
        if state.collisions >= max_events:
            raise EventLimitExceeded(max_events)
        state = step(state, c)
        if keep:
            states.append(state)
    if not keep:
        states = [state]
    return CollisionTrace(tuple(states), state.collisions, trace_mode)


def count_collisions(m1, m2, max_events: int = DEFAULT_MAX_EVENTS) -> int:
    """Total collision count for block 2 approaching block 1 at rest."""
    return run_machine(MachineConfig(m1, m2), TraceMode.COUNT_ONLY, max_events).total_collisions
