"""Gate-fidelity experiments at the reference operating point.

Each driver takes decay channels and detunings explicitly so runs are pure
functions of their inputs; :class:`OperatingPoint` assembles the defaults
(E_perp = 100 V/cm, Omega_R / 2 pi = 40 MHz, T = 25 ns).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .. import helium
from ..holonomy import HADAMARD_GATE, NOT_GATE, GateParams, holonomic_unitary
from ..pulses import GaussianPulse, normalize_area
from ..quantum import (
    Spin,
    ket,
    partial_trace_spin,
    projector,
    state_fidelity,
    state_vector,
)
from .hamiltonian import ControlledU, RydbergControlSpinRabi, SingleQubitFourDrive
from .lindblad import Trajectory, evolve, rydberg_channels

DOWN, UP = Spin.DOWN, Spin.UP
S2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class OperatingPoint:
    """Physical inputs of one simulation run."""

    e_perp: float = helium.REFERENCE_FIELD
    constants: helium.PhysicalConstants = field(default_factory=helium.PhysicalConstants)
    pulse: GaussianPulse = field(default_factory=lambda: normalize_area(GaussianPulse()))
    kappa_scale: float = 1.0
    detunings: helium.DetuningSet | None = None
    step: float | None = None
    crosstalk: bool = False

    def rates(self) -> dict:
        return helium.decay_rates(self.e_perp, self.constants)

    def channels(self):
        return rydberg_channels(self.rates(), self.kappa_scale)

    def resolved_detunings(self) -> helium.DetuningSet:
        if self.detunings is not None:
            return self.detunings
        # the Zeeman gradient is fixed at the reference field
        return helium.default_detunings(helium.REFERENCE_FIELD, self.constants)

    def with_field(self, e_perp: float) -> "OperatingPoint":
        return replace(self, e_perp=e_perp, detunings=self.resolved_detunings())


def _r(n):
    return np.eye(3, dtype=complex)[n - 1]


SPIN_PLUS = np.array([S2, S2], dtype=complex)

# (input label, input ket, ideal label, ideal ket) for the CNOT
CNOT_CASES = (
    ("|down,1>", ket(DOWN, 1), "|down,1>", ket(DOWN, 1)),
    ("|down,2>", ket(DOWN, 2), "|down,2>", ket(DOWN, 2)),
    ("|up,1>", ket(UP, 1), "|up,2>", ket(UP, 2)),
    ("|up,2>", ket(UP, 2), "|up,1>", ket(UP, 1)),
    ("(|down>+|up>)|1>/sqrt2", state_vector(ket(DOWN, 1) + ket(UP, 1)),
     "(|down,1>+|up,2>)/sqrt2", state_vector(ket(DOWN, 1) + ket(UP, 2))),
)
ENTANGLING_INPUT = CNOT_CASES[-1][1]
ENTANGLING_TARGET = CNOT_CASES[-1][3]

# Rydberg inputs for the single-qubit average; the spin starts in |+>.
SINGLE_QUBIT_INPUTS = (
    ("|1>", _r(1)),
    ("|2>", _r(2)),
    ("(|1>+|2>)/sqrt2", S2 * (_r(1) + _r(2))),
    ("(|1>-|2>)/sqrt2", S2 * (_r(1) - _r(2))),
    ("(|1>+i|2>)/sqrt2", S2 * (_r(1) + 1j * _r(2))),
    ("(|1>-i|2>)/sqrt2", S2 * (_r(1) - 1j * _r(2))),
)


@dataclass(frozen=True)
class CnotRow:
    input: str
    ideal_output: str
    fidelity: float


def run_cnot_table(channels, det, pulse=None, step=None, crosstalk=False,
                   gate: GateParams = NOT_GATE) -> list[CnotRow]:
    """Fidelities of the five reference inputs under the controlled gate."""
    scheme = _controlled(gate, pulse, crosstalk)
    rows = []
    for label, psi, ideal_label, ideal in CNOT_CASES:
        traj = evolve(projector(psi), scheme, det, channels, step=step, stride=10**9)
        rows.append(CnotRow(label, ideal_label,
                            state_fidelity(traj.final, projector(ideal))))
    return rows


def _controlled(gate, pulse, crosstalk):
    if pulse is None:
        return ControlledU(gate, spin_down_coupling=crosstalk)
    return ControlledU(gate, pulse, spin_down_coupling=crosstalk)


def entangling_trajectory(channels, det, pulse=None, step=None, stride=10,
                          crosstalk=False) -> Trajectory:
    """Evolution of (|down>+|up>)|1>/sqrt2 with F(t) against the Bell target."""
    scheme = _controlled(NOT_GATE, pulse, crosstalk)
    traj = evolve(projector(ENTANGLING_INPUT), scheme, det, channels,
                  step=step, stride=stride)
    target = projector(ENTANGLING_TARGET)
    traj.fidelities = np.array([state_fidelity(s, target) for s in traj.states])
    return traj


def single_qubit_fidelities(g: GateParams, lag: float, channels, det, pulse=None,
                            step=None, crosstalk=False) -> list[float]:
    """Reduced-Rydberg-state fidelities for the six reference inputs."""
    kwargs = {} if pulse is None else {"pulse": pulse}
    scheme = SingleQubitFourDrive(g, lag=lag, crosstalk=crosstalk, **kwargs)
    u = np.eye(3, dtype=complex)
    u[:2, :2] = holonomic_unitary(g)
    out = []
    for _, r in SINGLE_QUBIT_INPUTS:
        psi = np.kron(SPIN_PLUS, r)
        traj = evolve(projector(psi), scheme, det, channels, step=step, stride=10**9)
        reduced = partial_trace_spin(traj.final)
        out.append(state_fidelity(reduced, projector(u @ r)))
    return out


def run_single_qubit_average(g: GateParams, lag: float, channels, det, pulse=None,
                             step=None, crosstalk=False) -> float:
    return float(np.mean(single_qubit_fidelities(g, lag, channels, det, pulse,
                                                 step, crosstalk)))


@dataclass(frozen=True)
class SingleQubitRow:
    gate: str
    theta: float
    phi: float
    simultaneous: float
    lagged: float
    lag: float


def run_single_qubit_table(channels, det, pulse=None, step=None, lag=None,
                           gates=None, crosstalk=False) -> list[SingleQubitRow]:
    """Average fidelities for each gate, simultaneous and with the lagged pair."""
    if pulse is None:
        pulse = normalize_area(GaussianPulse())
    if lag is None or lag == 0:
        lag = pulse.duration / 4.0
    if gates is None:
        gates = (("NOT", NOT_GATE), ("Hadamard", HADAMARD_GATE))
    rows = []
    for name, g in gates:
        f0 = run_single_qubit_average(g, 0.0, channels, det, pulse, step, crosstalk)
        f1 = run_single_qubit_average(g, lag, channels, det, pulse, step, crosstalk)
        rows.append(SingleQubitRow(name, g.theta, g.phi, f0, f1, lag))
    return rows


@dataclass(frozen=True)
class RydbergControlReport:
    rabi: float
    duration: float
    delta12: float
    flip_fidelity: float
    idle_fidelity: float


def run_rydberg_control_gate(rabi: float, det, channels=(), duration=None,
                             step=None) -> RydbergControlReport:
    """Spin flip conditioned on the Rydberg level: |down,2> flips, |down,1> idles."""
    scheme = RydbergControlSpinRabi(rabi, duration)
    flip = evolve(projector(ket(DOWN, 2)), scheme, det, channels, step=step,
                  stride=10**9)
    idle = evolve(projector(ket(DOWN, 1)), scheme, det, channels, step=step,
                  stride=10**9)
    return RydbergControlReport(
        rabi=rabi,
        duration=scheme.duration,
        delta12=det.delta12,
        flip_fidelity=state_fidelity(flip.final, projector(ket(UP, 2))),
        idle_fidelity=state_fidelity(idle.final, projector(ket(DOWN, 1))),
    )


@dataclass(frozen=True)
class FieldPoint:
    e_perp: float
    kappa2: float
    kappa3: float
    fidelity: float


@dataclass(frozen=True)
class RatePoint:
    e_perp: float
    kappa12: float
    kappa13: float
    kappa23: float

    @property
    def kappa2(self) -> float:
        return self.kappa12

    @property
    def kappa3(self) -> float:
        return self.kappa13 + self.kappa23


def rate_point(e_perp: float, constants=None) -> RatePoint:
    if constants is None:
        constants = helium.PhysicalConstants()
    r = helium.decay_rates(e_perp, constants)
    return RatePoint(float(e_perp), r[(1, 2)], r[(1, 3)], r[(2, 3)])


def _map(fn, items, jobs):
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def decay_rate_sweep(e_perp_list, constants=None, jobs=1) -> list[RatePoint]:
    items = [(float(e), constants) for e in e_perp_list]
    return _map(_rate_task, items, jobs)


def _rate_task(args):
    return rate_point(*args)


def _field_task(args):
    op, e = args
    op = op.with_field(e)
    rp = rate_point(e, op.constants)
    traj = evolve(projector(ENTANGLING_INPUT), _controlled(NOT_GATE, op.pulse, op.crosstalk),
                  op.resolved_detunings(), op.channels(), step=op.step, stride=10**9)
    f = state_fidelity(traj.final, projector(ENTANGLING_TARGET))
    return FieldPoint(float(e), rp.kappa2, rp.kappa3, f)


def fidelity_vs_field(e_perp_list, op: OperatingPoint | None = None,
                      jobs: int = 1) -> list[FieldPoint]:
    """Entangling-input CNOT fidelity as the holding field varies.

    Decay rates are recomputed at every field; the Zeeman detunings stay
    those of ``op`` (the gradient is a property of the magnet, not the field).
    Rows come back in input order regardless of ``jobs``.
    """
    if op is None:
        op = OperatingPoint()
    op = replace(op, detunings=op.resolved_detunings())
    return _map(_field_task, [(op, float(e)) for e in e_perp_list], jobs)
