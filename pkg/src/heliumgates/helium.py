"""Vertical bound states of an electron above liquid helium and their decay.

The electron sees the attractive image potential of the helium surface plus a
uniform holding field pressing it towards the liquid.  We solve the resulting
1D Schrodinger problem on a uniform grid by second-order finite differences
and derive the two-ripplon emission rates between the lowest levels.

Unit conventions
----------------
* Lengths on the grid are in nm, wavefunctions in nm^-1/2.
* Energies are reported as ordinary frequencies in GHz (E/h).
* Potential-gradient matrix elements are in N (SI).
* Decay rates are computed in SI (1/s) and converted once to 1/ns.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import constants as sc
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError, HeliumGatesError

NM = 1e-9
PER_S_TO_PER_NS = 1e-9
# (V/cm) -> (V/m)
V_PER_CM = 100.0

# kappa^(2) at 100 V/cm implied by the |down,2> row of the CNOT table
# (F = exp(-kappa T / 2) with F = 0.9957 and T = 25 ns).
REFERENCE_FIELD = 100.0
REFERENCE_KAPPA2 = -2.0 * math.log(0.9957) / 25.0

# Penetration depth parameter (1/m) fixed by `calibrate_kappa0` against
# REFERENCE_KAPPA2 on the default grid; regenerate if the model changes.
DEFAULT_KAPPA0 = 2.3218293956e9

# |psi| next to the upper wall, relative to its peak, above which z_max is too small
WALL_TOL = 1e-6


@dataclass(frozen=True)
class PhysicalConstants:
    """Material and fundamental constants in SI units.

    ``Lambda`` is derived from ``epsilon`` and cannot be passed in.
    """

    epsilon: float = 1.057
    m_e: float = sc.m_e
    e: float = sc.e
    hbar: float = sc.hbar
    g_factor: float = 2.0
    mu_B: float = sc.physical_constants["Bohr magneton"][0]
    alpha_surface: float = 3.78e-4
    rho_helium: float = 145.0
    kappa_0: float = DEFAULT_KAPPA0
    Lambda: float = field(init=False)

    def __post_init__(self):
        if self.epsilon <= 1.0:
            raise HeliumGatesError("dielectric constant must exceed 1")
        object.__setattr__(
            self, "Lambda", (self.epsilon - 1.0) / (4.0 * (self.epsilon + 1.0))
        )

    def replace(self, **changes) -> "PhysicalConstants":
        return dataclasses.replace(self, **changes)

    @property
    def image_strength(self) -> float:
        """Lambda e^2 / (4 pi eps0) in J m."""
        return self.Lambda * self.e**2 / (4.0 * math.pi * sc.epsilon_0)

    @property
    def bohr_radius(self) -> float:
        """Effective Bohr radius of the image-potential problem in m."""
        return self.hbar**2 / (self.m_e * self.image_strength)

    @property
    def rydberg(self) -> float:
        """Effective Rydberg energy in J (Lambda^2 times the hydrogen value)."""
        return self.image_strength / (2.0 * self.bohr_radius)


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [z_min, z_max] in nm with Dirichlet walls at the ends."""

    z_min: float = 0.01
    z_max: float = 300.0
    n_points: int = 6000

    def __post_init__(self):
        if not self.z_min > 0:
            raise HeliumGatesError("z_min must be positive to exclude the 1/z pole")
        if self.z_max <= self.z_min:
            raise HeliumGatesError("z_max must exceed z_min")
        if self.n_points < 16:
            raise HeliumGatesError("grid needs at least 16 points")

    @property
    def z(self) -> np.ndarray:
        return np.linspace(self.z_min, self.z_max, self.n_points)

    @property
    def spacing(self) -> float:
        return (self.z_max - self.z_min) / (self.n_points - 1)

    def refined(self, factor: int = 2) -> "Grid":
        return Grid(self.z_min, self.z_max, factor * (self.n_points - 1) + 1)


@dataclass(frozen=True)
class EigenSolution:
    """Lowest vertical eigenstates at one holding field.

    Attributes
    ----------
    e_perp : float
        Holding field in V/cm.
    z : ndarray
        Grid nodes in nm.
    energies_ghz : ndarray
        E_n / h in GHz, ascending.
    wavefunctions : ndarray
        Shape ``(n_states, len(z))``, real, unit L2 norm, positive lobe
        nearest the surface.
    expected_z : ndarray
        <z>_n in nm.
    grad_elements : ndarray
        Diagonal elements (dV/dz)_nn in N.
    warnings : tuple of str
        Grid-convergence diagnostics, empty when the grid is adequate.
    """

    e_perp: float
    z: np.ndarray
    energies_ghz: np.ndarray
    wavefunctions: np.ndarray
    expected_z: np.ndarray
    grad_elements: np.ndarray
    warnings: tuple = ()

    @property
    def n_states(self) -> int:
        return len(self.energies_ghz)

    @property
    def energies_joule(self) -> np.ndarray:
        return self.energies_ghz * 1e9 * sc.h


def vertical_potential(z, e_perp: float, c: PhysicalConstants = PhysicalConstants()):
    """Potential energy in J at height ``z`` (nm) for holding field ``e_perp`` (V/cm).

    The liquid is an impenetrable wall, so ``z <= 0`` is rejected.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise HeliumGatesError("vertical potential is undefined for z <= 0 (hard wall)")
    z_m = z * NM
    return -c.image_strength / z_m + c.e * e_perp * V_PER_CM * z_m


def potential_gradient(z, e_perp: float, c: PhysicalConstants = PhysicalConstants()):
    """dV/dz in N at height ``z`` (nm)."""
    z_m = np.asarray(z, dtype=float) * NM
    return c.image_strength / z_m**2 + c.e * e_perp * V_PER_CM


def _solve_on(grid: Grid, e_perp: float, n_states: int, c: PhysicalConstants):
    z = grid.z
    h = grid.spacing * NM
    # Scale to units of the effective Rydberg so the tridiagonal is O(1).
    scale = c.rydberg
    kinetic = c.hbar**2 / (2.0 * c.m_e * h**2) / scale
    interior = z[1:-1]
    diag = 2.0 * kinetic + vertical_potential(interior, e_perp, c) / scale
    off = np.full(len(interior) - 1, -kinetic)
    vals, vecs = eigh_tridiagonal(
        diag, off, select="i", select_range=(0, n_states - 1)
    )
    psi = np.zeros((n_states, len(z)))
    psi[:, 1:-1] = vecs.T
    norms = np.sqrt(np.trapezoid(psi**2, z, axis=1))
    psi /= norms[:, None]
    for row in psi:
        # sign convention: first lobe positive
        first = np.argmax(np.abs(row) > 1e-3 * np.abs(row).max())
        if row[first] < 0:
            row *= -1.0
    return z, vals * scale, psi


def solve_vertical_states(
    e_perp: float,
    grid: Grid = Grid(),
    n_states: int = 3,
    c: PhysicalConstants = PhysicalConstants(),
    check_convergence: bool = False,
) -> EigenSolution:
    """Lowest ``n_states`` eigenpairs of the vertical Hamiltonian.

    With ``check_convergence`` the problem is re-solved on a 2x refined grid
    and a warning is attached for any level whose energy moves by more than
    0.1 %.
    """
    if not 1 <= n_states <= 5:
        raise HeliumGatesError("n_states must be between 1 and 5")
    z, energies, psi = _solve_on(grid, e_perp, n_states, c)
    warnings = []
    if check_convergence:
        _, fine, _ = _solve_on(grid.refined(), e_perp, n_states, c)
        # relative to |E_n|, but levels crossing zero are judged on the spacing
        ref = np.abs(fine)
        if n_states > 1:
            ref = np.maximum(ref, np.min(np.diff(fine)))
        shift = np.abs(fine - energies) / ref
        for n, s in enumerate(shift, start=1):
            if s > 1e-3:
                warnings.append(
                    f"level {n}: energy shifts by {100 * s:.3f}% under 2x refinement"
                )
    edge = np.abs(psi[:, -2]) / np.abs(psi).max(axis=1)
    for n, r in enumerate(edge, start=1):
        if r > WALL_TOL:
            warnings.append(f"level {n}: wavefunction reaches z_max ({r:.1e} of peak)")
    density = psi**2
    expected_z = np.trapezoid(density * z, z, axis=1)
    grad = np.trapezoid(density * potential_gradient(z, e_perp, c), z, axis=1)
    return EigenSolution(
        e_perp=float(e_perp),
        z=z,
        energies_ghz=energies / sc.h / 1e9,
        wavefunctions=psi,
        expected_z=expected_z,
        grad_elements=grad,
        warnings=tuple(warnings),
    )


def gradient_matrix_element(
    sol: EigenSolution, n: int, e_perp: float | None = None,
    c: PhysicalConstants = PhysicalConstants(),
) -> float:
    """(dV/dz)_nn in N for level ``n`` (1-based) by trapezoidal quadrature."""
    if not 1 <= n <= sol.n_states:
        raise HeliumGatesError(f"level {n} outside solved range 1..{sol.n_states}")
    if e_perp is None:
        e_perp = sol.e_perp
    density = sol.wavefunctions[n - 1] ** 2
    return float(np.trapezoid(density * potential_gradient(sol.z, e_perp, c), sol.z))


def ripplon_prefactor(c: PhysicalConstants = PhysicalConstants()) -> float:
    """Material prefactor of the two-ripplon rate, SI (1/s per N^2 J^(2/3))."""
    a, rho, hbar = c.alpha_surface, c.rho_helium, c.hbar
    return (
        c.m_e * c.kappa_0**2 / (4.0 * math.pi * hbar * a * rho)
        * (rho / (4.0 * hbar**2 * a)) ** (1.0 / 3.0)
    )


def two_ripplon_decay_rate_si(m: int, n: int, sol: EigenSolution,
                              c: PhysicalConstants = PhysicalConstants()) -> float:
    """Decay rate |n> -> |m> in 1/s."""
    if m >= n:
        raise HeliumGatesError(
            f"only downward transitions are modelled (got m={m}, n={n})"
        )
    if n > sol.n_states:
        raise HeliumGatesError(f"level {n} outside solved range 1..{sol.n_states}")
    energies = sol.energies_joule
    gap = max(energies[n - 1] - energies[m - 1], 0.0)
    return (
        ripplon_prefactor(c)
        * sol.grad_elements[m - 1]
        * sol.grad_elements[n - 1]
        * gap ** (2.0 / 3.0)
    )


def two_ripplon_decay_rate(m: int, n: int, e_perp: float | None = None,
                           sol: EigenSolution | None = None,
                           c: PhysicalConstants = PhysicalConstants()) -> float:
    """Two-ripplon emission rate from ``n`` down to ``m`` in 1/ns.

    Either a precomputed ``sol`` or the field ``e_perp`` must be given.
    """
    if sol is None:
        if e_perp is None:
            raise HeliumGatesError("need either e_perp or an EigenSolution")
        sol = solve_vertical_states(e_perp, n_states=max(n, 3), c=c)
    return two_ripplon_decay_rate_si(m, n, sol, c) * PER_S_TO_PER_NS


def total_decay_rate(n: int, e_perp: float | None = None,
                     sol: EigenSolution | None = None,
                     c: PhysicalConstants = PhysicalConstants()) -> float:
    """Sum of the downward rates out of level ``n`` in 1/ns."""
    if n < 1:
        raise HeliumGatesError("levels are numbered from 1")
    if n == 1:
        return 0.0
    if sol is None:
        sol = solve_vertical_states(e_perp, n_states=max(n, 3), c=c)
    return sum(two_ripplon_decay_rate(m, n, sol=sol, c=c) for m in range(1, n))


def decay_rates(e_perp: float, c: PhysicalConstants = PhysicalConstants(),
                grid: Grid = Grid()) -> dict:
    """All downward rates among the three lowest levels at ``e_perp``.

    Returns a mapping ``{(m, n): rate_per_ns}`` with m < n.
    """
    sol = solve_vertical_states(e_perp, grid, 3, c)
    return {(m, n): two_ripplon_decay_rate(m, n, sol=sol, c=c)
            for n in (2, 3) for m in range(1, n)}


def calibrate_kappa0(target: float = REFERENCE_KAPPA2,
                     e_perp: float = REFERENCE_FIELD,
                     c: PhysicalConstants = PhysicalConstants(),
                     grid: Grid = Grid()) -> float:
    """Penetration depth parameter reproducing ``target`` for kappa^(2).

    The rate is quadratic in kappa_0, so one solve suffices.
    """
    sol = solve_vertical_states(e_perp, grid, 2, c)
    unit = two_ripplon_decay_rate(1, 2, sol=sol, c=c.replace(kappa_0=1.0))
    if unit <= 0:
        raise ConvergenceError("degenerate levels, cannot calibrate kappa_0")
    return math.sqrt(target / unit)


@dataclass(frozen=True)
class DetuningSet:
    """Zeeman detunings between Rydberg levels in rad/ns.

    ``delta13`` and ``delta23`` separate the spin-down and spin-up
    transition frequencies n -> 3; ``delta12`` separates the spin-resonance
    frequencies of levels 1 and 2.  ``math.inf`` marks the decoupled limit.
    """

    delta13: float
    delta23: float
    delta12: float

    def __post_init__(self):
        for name in ("delta13", "delta23", "delta12"):
            if getattr(self, name) < 0:
                raise HeliumGatesError(f"{name} must be nonnegative")

    @classmethod
    def decoupled(cls) -> "DetuningSet":
        return cls(math.inf, math.inf, math.inf)

    def scaled(self, factor: float) -> "DetuningSet":
        return DetuningSet(self.delta13 * factor, self.delta23 * factor,
                           self.delta12 * factor)


# 0.88 GHz as an ordinary frequency; see README "Units".
DEFAULT_DELTA13 = 2.0 * math.pi * 0.88


def default_field_gradient(sol: EigenSolution, delta13: float = DEFAULT_DELTA13,
                           c: PhysicalConstants = PhysicalConstants()) -> float:
    """dB/dz in T/m that yields ``delta13`` (rad/ns) for the given levels."""
    dz = (sol.expected_z[0] - sol.expected_z[2]) * NM
    return delta13 / PER_S_TO_PER_NS * c.hbar / (c.g_factor * c.mu_B * dz)


def transition_detunings(sol: EigenSolution, field_gradient: float | None = None,
                         c: PhysicalConstants = PhysicalConstants()) -> DetuningSet:
    """Zeeman detunings under a linear field B(z) = B0 + (dB/dz) z.

    ``field_gradient`` is dB/dz in T/m; by default it is chosen so that
    delta13 equals ``DEFAULT_DELTA13``.
    """
    if field_gradient is None:
        field_gradient = default_field_gradient(sol, c=c)
    z = sol.expected_z * NM

    def delta(i, j):
        return (c.g_factor * c.mu_B * field_gradient * (z[i] - z[j])
                / c.hbar * PER_S_TO_PER_NS)

    d13, d23, d12 = delta(0, 2), delta(1, 2), delta(0, 1)
    # magnitudes only; the Hamiltonian builder fixes the signs
    return DetuningSet(abs(d13), abs(d23), abs(d12))


def default_detunings(e_perp: float = REFERENCE_FIELD,
                      c: PhysicalConstants = PhysicalConstants()) -> DetuningSet:
    return transition_detunings(solve_vertical_states(e_perp, c=c), c=c)
