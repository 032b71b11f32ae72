import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import erf

from heliumgates.pulses import (
    DEFAULT_DURATION,
    GaussianPulse,
    envelope,
    is_normalized,
    normalize_area,
    pulse_area,
    simpson_area,
    total_area,
)

durations = st.floats(min_value=1.0, max_value=200.0)
starts = st.floats(min_value=-50.0, max_value=50.0)


@pytest.fixture
def pulse():
    return normalize_area(GaussianPulse())


def test_defaults():
    p = GaussianPulse()
    assert p.duration == DEFAULT_DURATION == 25.0
    assert p.std_dev == pytest.approx(25.0 / 8)


def test_rejects_nonpositive_width():
    with pytest.raises(ValueError):
        GaussianPulse(duration=0.0)
    with pytest.raises(ValueError):
        GaussianPulse(std_dev=-1.0)


def test_envelope_support_and_peak(pulse):
    assert envelope(pulse, -1.0) == 0.0
    assert envelope(pulse, 1e3) == 0.0
    assert envelope(pulse, pulse.center) == pulse.amplitude
    ts = np.linspace(0, 25, 1001)
    assert np.argmax(pulse(ts)) == 500


def test_fwhm_is_three_tenths_of_window(pulse):
    assert pulse.fwhm / pulse.duration == pytest.approx(0.2944, abs=1e-4)
    half = 0.5 * pulse.fwhm
    assert envelope(pulse, pulse.center + half) == pytest.approx(0.5 * pulse.amplitude)


def test_area_examples(pulse):
    assert pulse_area(pulse, -3.0) == 0.0
    assert pulse_area(pulse, pulse.center) == pytest.approx(math.pi / 2, rel=1e-14)
    assert pulse_area(pulse, pulse.end_time) == pytest.approx(math.pi, rel=1e-14)
    assert pulse_area(pulse, 1e4) == pytest.approx(math.pi, rel=1e-14)


def test_normalized_amplitude_closed_form(pulse):
    sigma, T = pulse.std_dev, pulse.duration
    truncation = erf(T / (2 * math.sqrt(2) * sigma))
    expected = math.pi / (sigma * math.sqrt(2 * math.pi) * truncation)
    assert pulse.amplitude == pytest.approx(expected, rel=1e-13)


def test_doubling_sigma_roughly_halves_amplitude():
    a1 = normalize_area(GaussianPulse(100.0, 5.0)).amplitude
    a2 = normalize_area(GaussianPulse(100.0, 10.0)).amplitude
    assert a2 / a1 == pytest.approx(0.5, rel=1e-6)


def test_target_must_be_positive():
    with pytest.raises(ValueError):
        normalize_area(GaussianPulse(), 0.0)


def test_simpson_matches_closed_form(pulse):
    for t in (3.0, 12.5, 20.0, 25.0):
        assert simpson_area(pulse, t) == pytest.approx(pulse_area(pulse, t), rel=1e-10)


@given(durations, st.floats(min_value=0.05, max_value=0.5), starts,
       st.floats(min_value=0.1, max_value=10.0))
@settings(max_examples=50, deadline=None)
def test_normalization_idempotent(T, width, t0, target):
    p = normalize_area(GaussianPulse(T, width * T, start_time=t0), target)
    q = normalize_area(p, target)
    assert abs(q.amplitude - p.amplitude) <= 1e-12 * p.amplitude
    assert abs(total_area(p) - target) <= 1e-10 * target
    assert is_normalized(p, target)


@given(durations, starts, st.lists(st.floats(min_value=0, max_value=1), min_size=2,
                                   max_size=20))
@settings(max_examples=50, deadline=None)
def test_area_nondecreasing(T, t0, fractions):
    p = normalize_area(GaussianPulse(T, start_time=t0))
    ts = t0 + T * np.sort(np.array(fractions)) * 1.2 - 0.1 * T
    areas = pulse_area(p, ts)
    assert np.all(np.diff(areas) >= 0)


@given(durations, starts, st.floats(min_value=0.0, max_value=0.999))
@settings(max_examples=50, deadline=None)
def test_envelope_symmetric(T, t0, frac):
    p = normalize_area(GaussianPulse(T, start_time=t0))
    x = frac * 0.5 * T  # strictly inside the window
    assert envelope(p, p.center + x) == pytest.approx(envelope(p, p.center - x), rel=1e-12)


def test_shifted_keeps_shape(pulse):
    q = pulse.shifted(6.25)
    assert q.start_time == 6.25 and q.amplitude == pulse.amplitude
    assert envelope(q, 6.25 + 12.5) == pulse.amplitude
