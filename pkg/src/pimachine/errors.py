"""Exception types shared across the package."""


class PiMachineError(Exception):
    """Base class; ``kind`` is the stable identifier reported by the CLI."""

    kind = "error"


class ContractError(PiMachineError):
    """An operation was called in a state that violates its precondition."""

    kind = "contract_violation"


class EventLimitExceeded(PiMachineError):
    """The collision simulation ran past its configured event budget."""

    kind = "event_limit_exceeded"

    def __init__(self, limit: int):
        super().__init__(f"simulation exceeded the event limit of {limit}")
        self.limit = limit


class CertificationError(PiMachineError):
    """A closed-form count could not be certified within the precision ceiling."""

    kind = "certification_failed"
