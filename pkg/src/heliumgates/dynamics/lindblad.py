"""Master-equation integration with fixed-step RK4."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvariantViolation
from ..quantum import (
    BASIS,
    DIM,
    HERMITIAN_TOL,
    POSITIVITY_TOL,
    BasisLabel,
    Spin,
    check_density_matrix,
    dag,
)
from . import _backend
from .hamiltonian import _check_pulses, couplings, resolve_terms, sample_hamiltonian

# Trace may drift by at most this over a run (no renormalization is applied).
TRACE_DRIFT_TOL = 1e-8
STEPS_PER_PULSE = 5000


@dataclass(frozen=True)
class LindbladChannel:
    """Spontaneous decay from ``from_level`` to ``to_level`` at ``rate`` (1/ns)."""

    from_level: BasisLabel
    to_level: BasisLabel
    rate: float

    def __post_init__(self):
        if self.rate < 0 or not math.isfinite(self.rate):
            raise ValueError("decay rate must be finite and nonnegative")
        if self.from_level.spin != self.to_level.spin:
            raise ValueError("decay channels preserve the spin")
        if self.to_level.rydberg >= self.from_level.rydberg:
            raise ValueError("decay channels must lower the Rydberg index")

    @property
    def collapse_operator(self) -> np.ndarray:
        c = np.zeros((DIM, DIM), dtype=complex)
        c[self.to_level.index, self.from_level.index] = 1.0
        return c


def rydberg_channels(rates: dict, scale: float = 1.0) -> list[LindbladChannel]:
    """Channels in both spin blocks from ``{(m, n): rate}`` (decay n -> m)."""
    out = []
    for spin in Spin:
        for (m, n), k in sorted(rates.items()):
            out.append(LindbladChannel(BasisLabel(spin, n), BasisLabel(spin, m), k * scale))
    return out


def lindblad_rhs(rho, h, channels=()) -> np.ndarray:
    """d rho / dt = -i[H, rho] + sum_k kappa_k (C rho C^+ - {C^+ C, rho} / 2)."""
    rho = np.asarray(rho, dtype=complex)
    h = np.asarray(h, dtype=complex)
    out = -1j * (h @ rho - rho @ h)
    for ch in channels:
        c = ch.collapse_operator
        cd = dag(c)
        cdc = cd @ c
        out += ch.rate * (c @ rho @ cd - 0.5 * (cdc @ rho + rho @ cdc))
    return out


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    fidelities: np.ndarray | None = None

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def populations(self) -> np.ndarray:
        return np.real(np.einsum("tii->ti", self.states))

    def invariant_errors(self) -> dict:
        """Worst-case deviations from the density-matrix invariants."""
        traces = np.trace(self.states, axis1=1, axis2=2)
        herm = np.max(np.abs(self.states - np.conj(np.swapaxes(self.states, 1, 2))))
        sym = 0.5 * (self.states + np.conj(np.swapaxes(self.states, 1, 2)))
        min_eig = float(np.min(np.linalg.eigvalsh(sym)))
        return {
            "trace": float(np.max(np.abs(traces - 1.0))),
            "hermiticity": float(herm),
            "min_eigenvalue": min_eig,
        }


def _jump_arrays(channels):
    to = np.array([c.to_level.index for c in channels], dtype=np.int64)
    frm = np.array([c.from_level.index for c in channels], dtype=np.int64)
    rate = np.array([c.rate for c in channels], dtype=float)
    return to, frm, rate


def _step_grid(t_span, step):
    t0, t1 = t_span
    n_steps = max(1, int(math.ceil((t1 - t0) / step - 1e-9)))
    dt = (t1 - t0) / n_steps
    stage_times = t0 + 0.5 * dt * np.arange(2 * n_steps + 1)
    return n_steps, dt, stage_times


def default_step(scheme) -> float:
    pulse = getattr(scheme, "pulse", None)
    duration = pulse.duration if pulse is not None else scheme.duration
    return duration / STEPS_PER_PULSE


def check_trajectory(traj: Trajectory, trace_tol=TRACE_DRIFT_TOL,
                     herm_tol=HERMITIAN_TOL, pos_tol=POSITIVITY_TOL):
    """Raise InvariantViolation at the earliest sampled state that fails a check."""
    states = traj.states
    finite = np.all(np.isfinite(states), axis=(1, 2))
    n_ok = len(states) if finite.all() else int(np.argmin(finite))
    ok = states[:n_ok]
    traces = np.abs(np.trace(ok, axis1=1, axis2=2) - 1.0)
    herm = np.max(np.abs(ok - np.conj(np.swapaxes(ok, 1, 2))), axis=(1, 2))
    sym = 0.5 * (ok + np.conj(np.swapaxes(ok, 1, 2)))
    min_eig = np.linalg.eigvalsh(sym)[:, 0] if n_ok else np.empty(0)
    first = None
    for name, dev, tol in (("trace", traces, trace_tol),
                           ("hermiticity", herm, herm_tol),
                           ("positivity", -min_eig, pos_tol)):
        bad = np.nonzero(dev > tol)[0]
        if bad.size and (first is None or bad[0] < first[0]):
            k = int(bad[0])
            first = (k, name, float(dev[k]), tol)
    if first is None and n_ok < len(states):
        first = (n_ok, "finite", math.inf, 0.0)
    if first is not None:
        k, name, dev, tol = first
        raise InvariantViolation(name, float(traj.times[k]), dev, tol)


def evolve(rho0, scheme, det, channels=(), t_span=None, step=None, stride=1,
           check=True, backend=None) -> Trajectory:
    """Propagate ``rho0`` under ``scheme`` with dissipation.

    Parameters
    ----------
    rho0 : (6, 6) array
        Initial density matrix.
    scheme : ControlledU | SingleQubitFourDrive | RydbergControlSpinRabi
    det : DetuningSet
    channels : sequence of LindbladChannel
    t_span : (float, float), optional
        Defaults to (0, end of the last pulse).
    step : float, optional
        RK4 step in ns, default T / 5000.  Rounded down so that it divides
        the interval.
    stride : int
        Record every ``stride``-th step; both endpoints are always kept.
    check : bool
        Verify density-matrix invariants on every recorded state.
    backend : module, optional
        Override the kernel (compiled or pure-Python).
    """
    rho0 = check_density_matrix(rho0)
    _check_pulses(scheme)
    if t_span is None:
        t_span = (0.0, scheme.t_end)
    if step is None:
        step = default_step(scheme)
    if step <= 0:
        raise ValueError("step must be positive")
    n_steps, dt, stage_times = _step_grid(t_span, step)
    terms = resolve_terms(couplings(scheme, det), dt, t_span)
    hs = np.ascontiguousarray(sample_hamiltonian(terms, stage_times))
    kern = backend or _backend.kernel
    to, frm, rate = _jump_arrays(channels)
    stride = max(1, int(stride))
    states = kern.rk4_lindblad(np.ascontiguousarray(rho0), hs, to, frm, rate, dt, stride)
    recorded = np.minimum(stride * np.arange(len(states)), n_steps)
    times = t_span[0] + dt * recorded
    traj = Trajectory(times=times, states=np.asarray(states))
    if check:
        check_trajectory(traj)
    return traj


def unitary_propagator(scheme, det, t_span=None, step=None, backend=None) -> np.ndarray:
    """Closed-system propagator U(t1, t0) on the 6-level space."""
    _check_pulses(scheme)
    if t_span is None:
        t_span = (0.0, scheme.t_end)
    if step is None:
        step = default_step(scheme)
    n_steps, dt, stage_times = _step_grid(t_span, step)
    terms = resolve_terms(couplings(scheme, det), dt, t_span)
    hs = np.ascontiguousarray(sample_hamiltonian(terms, stage_times))
    kern = backend or _backend.kernel
    return np.asarray(kern.rk4_unitary(np.eye(DIM, dtype=complex), hs, dt))


__all__ = [
    "BASIS",
    "LindbladChannel",
    "Trajectory",
    "check_trajectory",
    "evolve",
    "lindblad_rhs",
    "rydberg_channels",
    "unitary_propagator",
]
