"""Exception types shared across the package."""


class PathdevError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(PathdevError):
    """Operands have incompatible or unsupported dimensions."""


class CausalityError(PathdevError):
    """A vector that must be timelike (and future-pointing) is not."""


class DomainError(PathdevError):
    """An argument lies outside the domain an operation is defined on."""


class JoinError(PathdevError):
    """Worldline segments cannot be joined at a junction.

    `kind` is "position" for an endpoint gap and "kink" for a velocity-direction
    mismatch.  A kink carries a rapidity jump the deviation integral cannot see,
    so it is refused instead of silently dropped.
    """

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class NumericsError(PathdevError):
    """A numerical procedure failed to reach the requested accuracy.

    Carries the best available estimate and its error bound, plus a partial
    report when the failing procedure had one to give.
    """

    def __init__(self, message, *, estimate=None, error_bound=None, report=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
        self.report = report


class ScenarioError(PathdevError):
    """A scenario document failed validation; `field` names the offender."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
