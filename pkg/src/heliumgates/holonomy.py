"""Closed-form holonomic gates on a resonantly driven Lambda system.

Two drives couple the lower levels |1>, |2> to the common upper level |3>
with a fixed complex ratio set by ``GateParams``.  After a pulse of area pi
the computational subspace {|1>, |2>} undergoes the purely geometric
transformation ``n . sigma``.  Everything here is analytic and serves as the
reference for the numerical propagation in :mod:`heliumgates.dynamics`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quantum import PAULI_X, PAULI_Y, PAULI_Z, dag, expm_hermitian

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GateParams:
    """Bloch angles (theta, phi) of the gate axis.

    The drive amplitudes are Omega_1 = Omega sin(theta/2) e^{i phi} on 1<->3
    and Omega_2 = -Omega cos(theta/2) on 2<->3.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        object.__setattr__(self, "phi", self.phi % TWO_PI)

    @property
    def axis(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi),
                         math.cos(self.theta)])

    @property
    def drive_amplitudes(self) -> tuple[complex, complex]:
        """Relative (Omega_1, Omega_2) per unit envelope."""
        half = 0.5 * self.theta
        return (math.sin(half) * complex(math.cos(self.phi), math.sin(self.phi)),
                -math.cos(half) + 0j)


NOT_GATE = GateParams(math.pi / 2, 0.0)
HADAMARD_GATE = GateParams(math.pi / 4, 0.0)


@dataclass(frozen=True)
class LambdaFrame:
    dark: np.ndarray
    bright: np.ndarray
    intermediate: np.ndarray

    def as_matrix(self) -> np.ndarray:
        """Columns (dark, bright, intermediate)."""
        return np.column_stack([self.dark, self.bright, self.intermediate])


def coupling_matrix(g: GateParams) -> np.ndarray:
    """M with H_I(t) = Omega(t) M on the ordered levels (|1>, |2>, |3>)."""
    o1, o2 = g.drive_amplitudes
    m = np.zeros((3, 3), dtype=complex)
    m[2, 0] = o1
    m[2, 1] = o2
    return m + dag(m)


def lambda_frame(g: GateParams) -> LambdaFrame:
    half = 0.5 * g.theta
    c, s = math.cos(half), math.sin(half)
    e = complex(math.cos(g.phi), math.sin(g.phi))
    return LambdaFrame(
        dark=np.array([c, s * e, 0.0], dtype=complex),
        bright=np.array([s * e.conjugate(), -c, 0.0], dtype=complex),
        intermediate=np.array([0.0, 0.0, 1.0], dtype=complex),
    )


def holonomic_unitary(g: GateParams) -> np.ndarray:
    """Gate n . sigma on {|1>, |2>} produced by a pulse of area pi."""
    n = g.axis
    return n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z


def lambda_propagator(g: GateParams, alpha: float) -> np.ndarray:
    """exp(-i alpha M): exact 3x3 evolution after accumulated area ``alpha``.

    Valid for any envelope since H_I(t) commutes with itself at all times.
    """
    return expm_hermitian(coupling_matrix(g) * alpha)


def connection_matrix(g: GateParams, alpha_dot: float = 1.0) -> np.ndarray:
    """Connection A_ij = <xi_i| i d/dt |xi_j> at envelope value ``alpha_dot``."""
    half = 0.5 * g.theta
    c, s = math.cos(half), math.sin(half)
    e = complex(math.cos(g.phi), math.sin(g.phi))
    return -alpha_dot * np.array(
        [[s * s, -s * c * e.conjugate()],
         [-s * c * e, c * c]], dtype=complex)


def transported_basis(g: GateParams, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """The moving basis (|xi_1>, |xi_2>) at accumulated area ``alpha``.

    Both start at |1>, |2> and return there when alpha = pi.
    """
    frame = lambda_frame(g)
    u = lambda_propagator(g, alpha)
    dark = u @ frame.dark
    bright = np.exp(1j * alpha) * (u @ frame.bright)
    half = 0.5 * g.theta
    c, s = math.cos(half), math.sin(half)
    e = complex(math.cos(g.phi), math.sin(g.phi))
    xi1 = s * e * bright + c * dark
    xi2 = -c * bright + s * e.conjugate() * dark
    return xi1, xi2


def compose_holonomic(g1: GateParams, g2: GateParams) -> np.ndarray:
    """U(g1) U(g2), i.e. ``g2`` applied first.

    Equals (n1 . n2) I + i sigma . (n1 x n2): a rotation by 2 arccos(n1 . n2)
    about n2 x n1.
    """
    return holonomic_unitary(g1) @ holonomic_unitary(g2)


def compose_closed_form(g1: GateParams, g2: GateParams) -> np.ndarray:
    n1, n2 = g1.axis, g2.axis
    cross = np.cross(n1, n2)
    return (np.dot(n1, n2) * np.eye(2)
            + 1j * (cross[0] * PAULI_X + cross[1] * PAULI_Y + cross[2] * PAULI_Z))


def controlled_unitary(g: GateParams) -> np.ndarray:
    """|down><down| x I + |up><up| x U(g) on (|d1>, |d2>, |u1>, |u2>)."""
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = np.eye(2)
    out[2:, 2:] = holonomic_unitary(g)
    return out


def embed_controlled(g: GateParams) -> np.ndarray:
    """The ideal controlled gate on the full 6-level space, identity on level 3."""
    out = np.eye(6, dtype=complex)
    out[3:5, 3:5] = holonomic_unitary(g)
    return out


def embed_single_qubit(g: GateParams) -> np.ndarray:
    """I x U(g) on the full 6-level space, identity on level 3."""
    out = np.eye(6, dtype=complex)
    u = holonomic_unitary(g)
    out[0:2, 0:2] = u
    out[3:5, 3:5] = u
    return out
