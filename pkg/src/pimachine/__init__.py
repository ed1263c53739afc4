"""The two-block collision pi machine and its correspondence with Grover search."""

from .angles import (
    AngleModel,
    CertifiedCount,
    angle_at,
    collision_count_closed_form,
    pi_digits,
    theta_star,
)
from .equivalence import ComparisonReport, compare, machine_angle_trace
from .errors import CertificationError, ContractError, EventLimitExceeded, PiMachineError
from .grover import (
    GroverInstance,
    apply_oracle,
    apply_phase_shift_about_start,
    evolve_two_dim,
    g_matrix,
    grover_iterate,
    instance_from_ratio,
    success_probability_closed_form,
    uniform_state,
)
from .machine import (
    CollisionTrace,
    Event,
    MachineConfig,
    MachineState,
    TraceMode,
    run_machine,
    step_block_collision,
    step_wall_bounce,
)

__version__ = "0.1.0"
