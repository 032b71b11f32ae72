import numpy as np
import pytest
from hypothesis import strategies as st

from heliumgates.dynamics import _kernel_py
from heliumgates.dynamics._backend import COMPILED


def random_ket(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng, dim, rank=None):
    rank = dim if rank is None else rank
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_matrix(rng, n, m=None):
    m = n if m is None else m
    return rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))


seeds = st.integers(min_value=0, max_value=2**32 - 1)
thetas = st.floats(min_value=0.0, max_value=np.pi)
phis = st.floats(min_value=0.0, max_value=2 * np.pi, exclude_max=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20260417)


def backends():
    out = [pytest.param(_kernel_py, id="python")]
    if COMPILED:
        from heliumgates.dynamics import _kernel
        out.append(pytest.param(_kernel, id="cython"))
    return out


# ---- acceptance summary ------------------------------------------------------

_CRITERIA = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _CRITERIA.append((props["criterion"], report.outcome, props.get("detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, outcome, detail in sorted(_CRITERIA):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {detail}")
