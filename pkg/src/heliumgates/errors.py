"""Exception types shared across the package."""


class HeliumGatesError(Exception):
    """Base class for all package errors."""


class DimensionError(HeliumGatesError, ValueError):
    """Operand shapes are incompatible with the requested operation."""


class NotHermitianError(HeliumGatesError, ValueError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class NotPositiveError(HeliumGatesError, ValueError):
    """A density matrix has eigenvalues below the positivity tolerance."""


class PulseNotNormalizedError(HeliumGatesError, ValueError):
    """A drive pulse does not carry the area required by the gate."""


class InvariantViolation(HeliumGatesError):
    """A physical invariant of the evolving state failed during integration.

    Attributes
    ----------
    invariant : str
        Name of the failed check (``"trace"``, ``"hermiticity"``,
        ``"positivity"`` or ``"finite"``).
    time : float
        Simulation time in ns at which the check failed.
    value : float
        Offending deviation.
    """

    def __init__(self, invariant, time, value, tolerance):
        self.invariant = invariant
        self.time = time
        self.value = value
        self.tolerance = tolerance
        super().__init__(
            f"{invariant} invariant violated at t={time:.6g} ns: "
            f"deviation {value:.3e} exceeds tolerance {tolerance:.1e}"
        )


class ConvergenceError(HeliumGatesError):
    """A numerical method cannot reach the requested accuracy."""


class ConfigError(HeliumGatesError, ValueError):
    """Malformed run configuration."""
