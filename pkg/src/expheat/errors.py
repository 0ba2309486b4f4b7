"""Exception types shared across the package."""


class OverflowGuardError(ValueError):
    """A field or scalar is too large to evaluate exp(u^2) in double precision."""


class BracketError(RuntimeError):
    """A bisection bracket could not be established or maintained."""


class NewtonError(RuntimeError):
    """Damped Newton iteration failed to converge."""


class SolverError(RuntimeError):
    """Time integration produced an invalid (non-finite) state."""
