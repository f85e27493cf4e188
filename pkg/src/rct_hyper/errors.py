"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the supported real domain."""


class MixedTrendError(ValueError):
    """A sequence shows more than one trend reversal, so no single
    increasing/decreasing/one-turn classification applies."""


class TurningPointNotFound(RuntimeError):
    """No interior extremum was detected on the scan grid (the quotient is
    monotone at the resolution used)."""
