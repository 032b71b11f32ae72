"""Holonomic gates on spin and Rydberg states of electrons above liquid helium.

Units throughout: time in ns, angular frequencies and rates in rad/ns or 1/ns,
lengths in nm unless a name says otherwise, fields in V/cm.
"""

from .errors import (
    ConfigError,
    ConvergenceError,
    DimensionError,
    HeliumGatesError,
    InvariantViolation,
    NotHermitianError,
    NotPositiveError,
    PulseNotNormalizedError,
)
from .holonomy import HADAMARD_GATE, NOT_GATE, GateParams, holonomic_unitary
from .pulses import GaussianPulse, normalize_area
from .quantum import BASIS, DIM, Spin, ket, partial_trace_spin, projector, state_fidelity

__version__ = "0.1.0"
