"""Dense linear algebra on the spin x Rydberg Hilbert space.

The composite basis is spin-major with the Rydberg index ascending::

    |down,1>, |down,2>, |down,3>, |up,1>, |up,2>, |up,3>

so that a spin-controlled operation is block diagonal.  Operators are plain
complex ``numpy`` arrays; the helpers here validate and combine them.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionError, NotHermitianError, NotPositiveError

HERMITIAN_TOL = 1e-9
TRACE_TOL = 1e-9
POSITIVITY_TOL = 1e-8
NORM_TOL = 1e-12
# eigenvalues of a density matrix above -EIG_CLAMP are treated as zero
EIG_CLAMP = 1e-10
FIDELITY_SLACK = 1e-9
# largest eigenvalue above 1 - PURE_TOL marks a pure state
PURE_TOL = 1e-10

N_RYDBERG = 3


class Spin(enum.IntEnum):
    DOWN = 0
    UP = 1


@dataclass(frozen=True, order=True)
class BasisLabel:
    spin: Spin
    rydberg: int

    def __post_init__(self):
        if self.rydberg not in range(1, N_RYDBERG + 1):
            raise ValueError(f"Rydberg index must be 1..{N_RYDBERG}")

    @property
    def index(self) -> int:
        return int(self.spin) * N_RYDBERG + self.rydberg - 1

    def __str__(self):
        arrow = "down" if self.spin is Spin.DOWN else "up"
        return f"|{arrow},{self.rydberg}>"


BASIS = tuple(BasisLabel(s, n) for s, n in itertools.product(Spin, range(1, 4)))
DIM = len(BASIS)


def index(spin, rydberg: int) -> int:
    """Position of |spin, rydberg> in the composite basis."""
    return BasisLabel(Spin(spin), rydberg).index


def basis_vector(i: int, dim: int = DIM) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[i] = 1.0
    return v


def ket(spin, rydberg: int) -> np.ndarray:
    return basis_vector(index(spin, rydberg))


def state_vector(amplitudes) -> np.ndarray:
    """Normalize ``amplitudes`` to a unit complex vector."""
    v = np.asarray(amplitudes, dtype=complex).ravel()
    norm = np.linalg.norm(v)
    if not np.isfinite(norm) or norm == 0:
        raise ValueError("state vector must have finite nonzero norm")
    return v / norm


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def dag(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def check_square(a, name: str = "operator") -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def hermiticity_error(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - dag(a)))) if a.size else 0.0


def density_matrix_errors(rho: np.ndarray) -> dict:
    """Deviations of ``rho`` from the density-matrix invariants."""
    return {
        "hermiticity": hermiticity_error(rho),
        "trace": abs(np.trace(rho) - 1.0),
        "positivity": max(0.0, -float(np.linalg.eigvalsh(0.5 * (rho + dag(rho)))[0])),
    }


def check_density_matrix(rho, herm_tol=HERMITIAN_TOL, trace_tol=TRACE_TOL,
                         pos_tol=POSITIVITY_TOL) -> np.ndarray:
    """Validate and return ``rho`` as a complex array.

    Raises
    ------
    NotHermitianError, NotPositiveError, ValueError
    """
    rho = check_square(np.asarray(rho, dtype=complex), "density matrix")
    err = density_matrix_errors(rho)
    if err["hermiticity"] > herm_tol:
        raise NotHermitianError(
            f"density matrix not Hermitian (max deviation {err['hermiticity']:.2e})"
        )
    if err["trace"] > trace_tol:
        raise ValueError(f"density matrix trace deviates from 1 by {err['trace']:.2e}")
    if err["positivity"] > pos_tol:
        raise NotPositiveError(
            f"density matrix has eigenvalue {-err['positivity']:.2e}"
        )
    return rho


def tensor_product(*ops) -> np.ndarray:
    """Kronecker product, leftmost factor most significant (spin first)."""
    if not ops:
        raise DimensionError("need at least one operand")
    out = np.asarray(ops[0])
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op))
    return out


def partial_trace_spin(rho, n_spin: int = 2) -> np.ndarray:
    """Trace out the leading spin factor of a spin-major density matrix."""
    rho = check_square(np.asarray(rho, dtype=complex), "density matrix")
    dim = rho.shape[0]
    if dim % n_spin:
        raise DimensionError(
            f"dimension {dim} is not divisible by the spin dimension {n_spin}"
        )
    d = dim // n_spin
    return np.einsum("iaib->ab", rho.reshape(n_spin, d, n_spin, d))


def herm_matrix_function(h, f: Callable, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Apply the scalar map ``f`` to a Hermitian matrix through its spectrum."""
    h = check_square(np.asarray(h, dtype=complex))
    err = hermiticity_error(h)
    if err > tol:
        raise NotHermitianError(f"matrix is not Hermitian (max deviation {err:.2e})")
    w, v = np.linalg.eigh(0.5 * (h + dag(h)))
    return (v * f(w)) @ dag(v)


def expm_hermitian(h, scale: complex = -1j) -> np.ndarray:
    """exp(scale * h) for Hermitian ``h``; the default gives a unitary."""
    return herm_matrix_function(h, lambda w: np.exp(scale * w))


def sqrtm_psd(rho) -> np.ndarray:
    """Square root of a positive semidefinite matrix, clamping round-off."""
    def root(w):
        if w[0] < -POSITIVITY_TOL:
            raise NotPositiveError(f"matrix has eigenvalue {w[0]:.2e}")
        return np.sqrt(np.where(w > EIG_CLAMP, w, 0.0))

    return herm_matrix_function(rho, root)


def state_fidelity(rho, rho_ideal) -> float:
    """Uhlmann fidelity Tr sqrt(sqrt(rho_i) rho sqrt(rho_i)), not squared."""
    rho = check_density_matrix(rho)
    rho_ideal = check_density_matrix(rho_ideal)
    if rho.shape != rho_ideal.shape:
        raise DimensionError(f"shape mismatch {rho.shape} vs {rho_ideal.shape}")
    # Rank-one shortcut F = sqrt(<psi|rho|psi>) avoids the square-root noise
    # floor (~sqrt(eps)) of the general formula near pure states.
    for a, b in ((rho_ideal, rho), (rho, rho_ideal)):
        w, v = np.linalg.eigh(0.5 * (a + dag(a)))
        if w[-1] > 1.0 - PURE_TOL:
            psi = v[:, -1]
            overlap = float(np.real(np.vdot(psi, b @ psi)))
            return min(max(overlap, 0.0), 1.0) ** 0.5
    # Tr sqrt(s_i rho s_i) equals the trace norm of sqrt(rho) sqrt(rho_i); the
    # singular values avoid taking square roots of round-off eigenvalues.
    prod = sqrtm_psd(rho) @ sqrtm_psd(rho_ideal)
    f = float(np.sum(np.linalg.svd(prod, compute_uv=False)))
    if f > 1.0 + FIDELITY_SLACK:
        raise ValueError(f"fidelity {f} exceeds 1 beyond round-off")
    return min(max(f, 0.0), 1.0)


def pure_fidelity(psi, phi) -> float:
    """|<psi|phi>| for normalized kets."""
    return float(abs(np.vdot(psi, phi)))


def as_density(state) -> np.ndarray:
    """Promote a ket to its projector; pass density matrices through."""
    a = np.asarray(state, dtype=complex)
    if a.ndim == 1:
        return projector(state_vector(a))
    return a


def equal_up_to_phase(a, b, atol: float = 1e-10) -> bool:
    return phase_distance(a, b) <= atol


def fix_global_phase(u: np.ndarray) -> np.ndarray:
    """Rescale so that the first entry with appreciable magnitude is real positive."""
    u = np.asarray(u, dtype=complex)
    flat = u.ravel()
    k = int(np.argmax(np.abs(flat) > 1e-8 * np.abs(flat).max()))
    return u * (abs(flat[k]) / flat[k])


def phase_distance(a, b) -> float:
    """Max-norm distance between two operators after removing a global phase."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    # optimal phase aligning a to b in the Frobenius sense
    overlap = np.vdot(a, b)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.max(np.abs(a * phase - b)))


def purity(rho) -> float:
    rho = np.asarray(rho)
    return float(np.real(np.trace(rho @ rho)))


PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)
