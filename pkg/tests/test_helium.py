import dataclasses
import math

import numpy as np
import pytest
from scipy import constants as sc

from heliumgates import helium
from heliumgates.errors import HeliumGatesError
from heliumgates.helium import (
    DEFAULT_DELTA13,
    DEFAULT_KAPPA0,
    REFERENCE_KAPPA2,
    DetuningSet,
    Grid,
    PhysicalConstants,
    calibrate_kappa0,
    decay_rates,
    gradient_matrix_element,
    solve_vertical_states,
    total_decay_rate,
    transition_detunings,
    two_ripplon_decay_rate,
    two_ripplon_decay_rate_si,
    vertical_potential,
)

C = PhysicalConstants()
WIDE = Grid(0.01, 800.0, 16000)
LEVELS = (1, 2, 3)


@pytest.fixture(scope="module")
def zero_field():
    return solve_vertical_states(0.0, WIDE, 3)


@pytest.fixture(scope="module")
def operating():
    return solve_vertical_states(100.0)


def test_lambda_and_scales():
    assert C.Lambda == pytest.approx(0.00693, abs=5e-6)
    assert C.bohr_radius / helium.NM == pytest.approx(7.6, abs=0.05)
    assert C.rydberg / sc.e * 1e3 == pytest.approx(0.653, abs=1e-3)
    with pytest.raises(TypeError):
        PhysicalConstants(Lambda=0.1)
    assert C.replace(epsilon=1.1).Lambda == pytest.approx(0.1 / (4 * 2.1))


def test_grid_validation():
    with pytest.raises(HeliumGatesError):
        Grid(0.0, 300.0, 100)
    with pytest.raises(HeliumGatesError):
        Grid(10.0, 5.0, 100)
    g = Grid(0.01, 300.0, 6000)
    assert g.refined().n_points == 2 * 6000 - 1
    assert g.refined().spacing == pytest.approx(g.spacing / 2)


def test_potential_examples():
    rb = C.bohr_radius
    v = vertical_potential(rb / helium.NM, 0.0)
    assert v == pytest.approx(-C.image_strength / rb, rel=1e-12)
    far = vertical_potential(np.array([1000.0, 2000.0, 3000.0]), 100.0)
    assert np.all(np.diff(far) > 0)
    assert np.diff(far)[0] == pytest.approx(np.diff(far)[1], rel=1e-6)
    z = np.linspace(0.01, 300, 50)
    assert np.all(helium.potential_gradient(z, 100.0) > 0)
    with pytest.raises(HeliumGatesError):
        vertical_potential(0.0, 100.0)
    with pytest.raises(HeliumGatesError):
        vertical_potential(-1.0, 100.0)


def test_hydrogenic_spectrum(zero_field):
    ry_ghz = C.rydberg / sc.h / 1e9
    rb = C.bohr_radius / helium.NM
    for n in LEVELS:
        exact_e = -ry_ghz / n**2
        assert zero_field.energies_ghz[n - 1] == pytest.approx(exact_e, rel=0.01)
        assert zero_field.expected_z[n - 1] == pytest.approx(1.5 * n**2 * rb, rel=0.01)
    assert zero_field.energies_ghz[0] * sc.h * 1e9 / sc.e * 1e3 == pytest.approx(
        -0.653, rel=0.01)


def test_hydrogenic_inverse_square_moment(zero_field):
    # <1/z^2>_n = 2 / (n^3 r_B^2) for the 1D hydrogen states z L_{n-1}^1(2z/n r_B) e^{-z/n r_B}
    rb = C.bohr_radius
    for n in LEVELS:
        element = gradient_matrix_element(zero_field, n, 0.0)
        assert element == pytest.approx(C.image_strength * 2 / (n**3 * rb**2), rel=0.01)
    grads = zero_field.grad_elements
    assert grads[1] < grads[0] and grads[2] < grads[0]


def test_operating_point_states(operating):
    psi, z = operating.wavefunctions, operating.z
    overlaps = np.trapezoid(psi[:, None, :] * psi[None, :, :], z, axis=2)
    assert np.max(np.abs(overlaps - np.eye(3))) <= 1e-8
    assert np.all(np.diff(operating.energies_ghz) > 0)
    assert np.all(np.diff(operating.expected_z) > 0)
    peak = np.abs(psi).max(axis=1)
    assert np.all(psi[:, 0] == 0) and np.all(psi[:, -1] == 0)
    # decays well before the upper wall; at the lower wall psi ~ z by construction
    assert np.all(np.abs(psi[:, -2]) < 1e-6 * peak)
    assert np.all(np.abs(psi[:, 1]) < 0.05 * peak)
    assert operating.warnings == ()


def test_node_count(operating):
    for n, row in enumerate(operating.wavefunctions, start=1):
        significant = row[np.abs(row) > 1e-6 * np.abs(row).max()]
        assert np.count_nonzero(np.diff(np.sign(significant))) == n - 1


def test_expected_positions_cross_check(operating):
    # finite-element reference values of a realistic cell are 7.63/17.2/25.3 nm;
    # the uniform-field model should agree in order of magnitude only
    ref = np.array([7.63, 17.2, 25.3])
    ratio = operating.expected_z / ref
    assert np.all((ratio > 0.5) & (ratio < 3.0))


def test_grid_convergence_at_defaults():
    coarse = solve_vertical_states(100.0)
    fine = solve_vertical_states(100.0, Grid().refined())
    rel = np.abs(fine.energies_ghz - coarse.energies_ghz) / np.abs(fine.energies_ghz)
    assert np.all(rel < 1e-3)
    assert np.all(np.abs(fine.expected_z - coarse.expected_z) < 0.1)


def test_coarse_grid_warns():
    sol = solve_vertical_states(100.0, Grid(0.01, 300.0, 120), check_convergence=True)
    assert any("refinement" in w for w in sol.warnings)
    sol = solve_vertical_states(0.0, Grid(0.01, 120.0, 3000))
    assert any("z_max" in w for w in sol.warnings)


def test_n_states_limit():
    with pytest.raises(HeliumGatesError):
        solve_vertical_states(100.0, n_states=6)


def test_field_monotonicity():
    fields = np.linspace(0.0, 1000.0, 11)
    sols = [solve_vertical_states(e) for e in fields]
    zs = np.array([s.expected_z for s in sols])
    assert np.all(np.diff(zs, axis=0) < 0)
    for n in LEVELS:
        g = [gradient_matrix_element(s, n) for s in sols]
        assert np.all(np.diff(g) > 0)
    for n in (2, 3):
        k = [total_decay_rate(n, sol=s) for s in sols]
        assert np.all(np.diff(k) > 0)


def test_rates_increase_with_field():
    fields = np.linspace(100.0, 1000.0, 10)
    rates = [decay_rates(e) for e in fields]
    for key in ((1, 2), (1, 3), (2, 3)):
        assert np.all(np.diff([r[key] for r in rates]) > 0)


def test_unit_roundtrip(operating):
    si = two_ripplon_decay_rate_si(1, 2, operating)
    assert two_ripplon_decay_rate(1, 2, sol=operating) == pytest.approx(si * 1e-9, rel=1e-15)
    assert helium.PER_S_TO_PER_NS * 1e9 == 1.0
    e = operating.energies_joule
    assert e / sc.h / 1e9 == pytest.approx(operating.energies_ghz, rel=1e-15)


def test_rate_vanishes_for_degenerate_levels(operating):
    flat = dataclasses.replace(operating, energies_ghz=np.full(3, 5.0))
    assert two_ripplon_decay_rate(1, 2, sol=flat) == 0.0


def test_rate_requires_downward_transition(operating):
    for m, n in ((2, 2), (3, 1)):
        with pytest.raises(HeliumGatesError):
            two_ripplon_decay_rate(m, n, sol=operating)


def test_total_rate_definition(operating):
    assert total_decay_rate(1, sol=operating) == 0.0
    k3 = total_decay_rate(3, sol=operating)
    assert k3 == pytest.approx(two_ripplon_decay_rate(1, 3, sol=operating)
                               + two_ripplon_decay_rate(2, 3, sol=operating), rel=1e-15)


def test_third_level_decays_faster_in_operating_regime():
    for e in (200.0, 400.0, 700.0, 1000.0):
        sol = solve_vertical_states(e)
        assert total_decay_rate(3, sol=sol) > total_decay_rate(2, sol=sol)


def test_calibration():
    assert calibrate_kappa0() == pytest.approx(DEFAULT_KAPPA0, rel=1e-9)
    assert decay_rates(100.0)[(1, 2)] == pytest.approx(REFERENCE_KAPPA2, rel=1e-8)
    assert abs(REFERENCE_KAPPA2 - 3.5e-4) <= 1e-5
    # lifetime of order microseconds
    assert 1.0 < 1e-3 / REFERENCE_KAPPA2 < 5.0
    # rates scale with kappa_0 squared
    doubled = decay_rates(100.0, C.replace(kappa_0=2 * DEFAULT_KAPPA0))
    assert doubled[(1, 2)] == pytest.approx(4 * REFERENCE_KAPPA2, rel=1e-10)


def test_detuning_identities(operating):
    zero = transition_detunings(operating, field_gradient=0.0)
    assert (zero.delta13, zero.delta23, zero.delta12) == (0.0, 0.0, 0.0)
    det = transition_detunings(operating)
    assert det.delta13 == pytest.approx(DEFAULT_DELTA13, rel=1e-12)
    z1, z2, z3 = operating.expected_z
    assert det.delta12 / det.delta13 == pytest.approx((z1 - z2) / (z1 - z3), rel=1e-12)
    assert det.delta13 == pytest.approx(det.delta12 + det.delta23, rel=1e-12)


def test_detuning_set():
    with pytest.raises(HeliumGatesError):
        DetuningSet(-1.0, 0.0, 0.0)
    d = DetuningSet.decoupled()
    assert math.isinf(d.delta13) and math.isinf(d.delta12)
    assert DetuningSet(1.0, 2.0, 3.0).scaled(2.0) == DetuningSet(2.0, 4.0, 6.0)
