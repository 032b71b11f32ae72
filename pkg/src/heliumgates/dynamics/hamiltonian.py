"""Drive schemes and their rotating-wave Hamiltonians on the 6-level space.

Every level is taken in the interaction picture of its own bare energy, so a
drive of carrier frequency w on a transition of frequency w_tr contributes
``Omega(t) * amp * exp(i (w_tr - w) t)`` to the upper-lower matrix element.
Resonant terms are static; off-resonant cross-talk rotates at the detuning.
Counter-rotating terms and drives on transitions detuned by a Rydberg
frequency difference (hundreds of GHz) are dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConvergenceError, PulseNotNormalizedError
from ..helium import DetuningSet
from ..holonomy import GateParams, coupling_matrix
from ..pulses import GaussianPulse, envelope, is_normalized, normalize_area
from ..quantum import DIM, Spin, index

DOWN, UP = Spin.DOWN, Spin.UP


def default_pulse() -> GaussianPulse:
    return normalize_area(GaussianPulse())


@dataclass(frozen=True)
class ControlledU:
    """Two drives resonant with the spin-up Lambda system only.

    ``spin_down_coupling=True`` adds the off-resonant action of both drives
    on the spin-down levels (detuned by the Zeeman splittings).
    """

    gate: GateParams
    pulse: GaussianPulse = field(default_factory=default_pulse)
    spin_down_coupling: bool = False

    @property
    def t_end(self) -> float:
        return self.pulse.end_time


@dataclass(frozen=True)
class SingleQubitFourDrive:
    """Resonant Lambda drives on both spin blocks; the spin-down pair lags."""

    gate: GateParams
    pulse: GaussianPulse = field(default_factory=default_pulse)
    lag: float = 0.0
    crosstalk: bool = False

    def __post_init__(self):
        if not 0.0 <= self.lag <= self.pulse.duration:
            raise ValueError("lag must lie in [0, T]")

    @property
    def t_end(self) -> float:
        return self.pulse.end_time + self.lag


@dataclass(frozen=True)
class RydbergControlSpinRabi:
    """Square spin-resonance drive at the Zeeman frequency of level 2.

    ``rabi`` is the full Rabi frequency: a spin flip needs
    ``rabi * duration = pi``.
    """

    rabi: float
    duration: float | None = None
    start_time: float = 0.0

    def __post_init__(self):
        if self.duration is None:
            object.__setattr__(self, "duration", math.pi / self.rabi)
        if not self.duration > 0:
            raise ValueError("duration must be positive")

    @property
    def t_end(self) -> float:
        return self.start_time + self.duration


@dataclass(frozen=True)
class Coupling:
    """One RWA term ``amp * envelope(t) * exp(i detuning t) |upper><lower|`` + h.c."""

    upper: int
    lower: int
    amp: complex
    detuning: float
    pulse: GaussianPulse | None = None
    window: tuple[float, float] | None = None

    def envelope(self, t):
        if self.pulse is not None:
            return envelope(self.pulse, t)
        t = np.asarray(t, dtype=float)
        lo, hi = self.window
        val = np.where((t >= lo) & (t <= hi), 1.0, 0.0)
        return float(val) if val.ndim == 0 else val


def _lambda_terms(g: GateParams, spin, pulse, detunings):
    """Drive pair on the (1,3), (2,3) transitions of one spin block."""
    m = coupling_matrix(g)
    top = index(spin, 3)
    out = []
    for lvl, det in zip((1, 2), detunings):
        if math.isinf(det):
            continue
        out.append(Coupling(top, index(spin, lvl), complex(m[2, lvl - 1]), det, pulse))
    return out


def couplings(scheme, det: DetuningSet) -> list[Coupling]:
    """All RWA terms of ``scheme``; infinitely detuned terms are omitted."""
    if isinstance(scheme, ControlledU):
        out = _lambda_terms(scheme.gate, UP, scheme.pulse, (0.0, 0.0))
        if scheme.spin_down_coupling:
            out += _lambda_terms(scheme.gate, DOWN, scheme.pulse,
                                 (det.delta13, det.delta23))
        return out
    if isinstance(scheme, SingleQubitFourDrive):
        lagged = scheme.pulse.shifted(scheme.lag)
        out = _lambda_terms(scheme.gate, UP, scheme.pulse, (0.0, 0.0))
        out += _lambda_terms(scheme.gate, DOWN, lagged, (0.0, 0.0))
        if scheme.crosstalk:
            out += _lambda_terms(scheme.gate, DOWN, scheme.pulse,
                                 (det.delta13, det.delta23))
            out += _lambda_terms(scheme.gate, UP, lagged,
                                 (-det.delta13, -det.delta23))
        return out
    if isinstance(scheme, RydbergControlSpinRabi):
        window = (scheme.start_time, scheme.t_end)
        # spin-resonance offsets relative to the level-2 Zeeman frequency
        offsets = {1: det.delta12, 2: 0.0, 3: -det.delta23}
        return [
            Coupling(index(UP, n), index(DOWN, n), 0.5 * scheme.rabi, off, None, window)
            for n, off in offsets.items() if not math.isinf(off)
        ]
    raise TypeError(f"unknown drive scheme {scheme!r}")


def _check_pulses(scheme):
    pulse = getattr(scheme, "pulse", None)
    if pulse is not None and not is_normalized(pulse):
        raise PulseNotNormalizedError(
            f"pulse area must be pi for a cyclic evolution, got {pulse.amplitude:.6g} "
            "peak amplitude; use normalize_area()"
        )


def build_hamiltonian(scheme, det: DetuningSet, t: float) -> np.ndarray:
    """Hamiltonian (rad/ns) at time ``t`` (ns)."""
    _check_pulses(scheme)
    return sample_hamiltonian(couplings(scheme, det), np.array([float(t)]))[0]


def sample_hamiltonian(terms: list[Coupling], times: np.ndarray) -> np.ndarray:
    """Stack of Hamiltonians at ``times``, shape ``(len(times), 6, 6)``."""
    times = np.asarray(times, dtype=float)
    hs = np.zeros((len(times), DIM, DIM), dtype=complex)
    for c in terms:
        val = c.amp * c.envelope(times)
        if c.detuning != 0.0:
            val = val * np.exp(1j * c.detuning * times)
        hs[:, c.upper, c.lower] += val
        hs[:, c.lower, c.upper] += np.conj(val)
    return hs


# A rotating term is resolved if one step covers at most this phase.
MAX_PHASE_PER_STEP = 0.5
# Unresolvable terms may be dropped only if their Stark-phase bound is below this.
NEGLIGIBLE_PHASE = 1e-5


def resolve_terms(terms: list[Coupling], step: float, t_span) -> list[Coupling]:
    """Drop terms rotating too fast for ``step`` when their effect is negligible.

    A term with peak coupling g and detuning d shifts the levels by at most
    g^2 / |d|; over the run this bounds the dropped phase by
    g^2 T / |d|.  Raises ConvergenceError if a fast term is not negligible.
    """
    duration = t_span[1] - t_span[0]
    kept = []
    for c in terms:
        if abs(c.detuning) * step <= MAX_PHASE_PER_STEP:
            kept.append(c)
            continue
        peak = abs(c.amp) * (c.pulse.amplitude if c.pulse is not None else 1.0)
        bound = peak**2 * duration / abs(c.detuning)
        if bound > NEGLIGIBLE_PHASE:
            raise ConvergenceError(
                f"detuning {c.detuning:.4g} rad/ns is not resolved by step "
                f"{step:.4g} ns and its Stark bound {bound:.2e} is not negligible; "
                "reduce the step"
            )
    return kept
