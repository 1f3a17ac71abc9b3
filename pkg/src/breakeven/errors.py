"""Exception types shared across the package."""


class BreakevenError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BreakevenError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InverseDomainError(DomainError):
    """The requested quantity cannot be reached by any positive discount rate."""


class ConvergenceError(BreakevenError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class ValidationError(BreakevenError, ValueError):
    """One or more project parameters violate their invariants.

    ``issues`` maps each offending field name to a human readable message,
    so callers can report every problem at once.
    """

    def __init__(self, issues: dict[str, str]):
        self.issues = dict(issues)
        detail = "; ".join(f"{name}: {msg}" for name, msg in self.issues.items())
        super().__init__(f"invalid parameters ({detail})")
