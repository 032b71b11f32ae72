"""Truncated Gaussian drive envelopes.

A pulse is zero outside ``[t0, t0 + T]`` and Gaussian inside, centred on the
window.  The gate construction only needs the running area of the envelope,
which is available in closed form through the error function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import erf

AREA_RTOL = 1e-10

# Reference operating point: Omega_R / 2 pi = 40 MHz, T = 2 pi / Omega_R.
RABI_FREQUENCY = 2.0 * math.pi * 0.040
DEFAULT_DURATION = 1.0 / 0.040  # one Rabi period, 25 ns


@dataclass(frozen=True)
class GaussianPulse:
    """Gaussian envelope in rad/ns on the window [t0, t0 + duration] (ns).

    ``std_dev`` defaults to ``duration / 8``.  ``amplitude`` is the peak
    value; use :meth:`normalized` to fix it from a target area instead.
    """

    duration: float = DEFAULT_DURATION
    std_dev: float | None = None
    amplitude: float = 1.0
    start_time: float = 0.0

    def __post_init__(self):
        if self.std_dev is None:
            object.__setattr__(self, "std_dev", self.duration / 8.0)
        if not self.duration > 0 or not self.std_dev > 0:
            raise ValueError("pulse duration and std_dev must be positive")

    @property
    def center(self) -> float:
        return self.start_time + 0.5 * self.duration

    @property
    def end_time(self) -> float:
        return self.start_time + self.duration

    @property
    def fwhm(self) -> float:
        return 2.0 * math.sqrt(2.0 * math.log(2.0)) * self.std_dev

    def shifted(self, lag: float) -> "GaussianPulse":
        return replace(self, start_time=self.start_time + lag)

    def normalized(self, target: float = math.pi) -> "GaussianPulse":
        return normalize_area(self, target)

    def __call__(self, t):
        return envelope(self, t)


def envelope(p: GaussianPulse, t):
    """Omega(t); accepts scalars or arrays."""
    t = np.asarray(t, dtype=float)
    inside = (t >= p.start_time) & (t <= p.end_time)
    val = np.where(
        inside, p.amplitude * np.exp(-((t - p.center) ** 2) / (2.0 * p.std_dev**2)), 0.0
    )
    return float(val) if val.ndim == 0 else val


def _unit_area(p: GaussianPulse, t):
    # integral of exp(-(t'-c)^2 / 2 s^2) from t0 to min(t, t0+T)
    t = np.clip(np.asarray(t, dtype=float), p.start_time, p.end_time)
    s = p.std_dev * math.sqrt(2.0)
    return p.std_dev * math.sqrt(math.pi / 2.0) * (
        erf((t - p.center) / s) - erf((p.start_time - p.center) / s)
    )


def pulse_area(p: GaussianPulse, t):
    """Running area alpha(t) = integral of the envelope from t0 to t, in rad."""
    val = p.amplitude * _unit_area(p, t)
    return float(val) if np.ndim(val) == 0 else val


def total_area(p: GaussianPulse) -> float:
    return pulse_area(p, p.end_time)


def normalize_area(p: GaussianPulse, target: float = math.pi) -> GaussianPulse:
    """Rescale the amplitude so the truncated area equals ``target``."""
    if not target > 0:
        raise ValueError("target area must be positive")
    return replace(p, amplitude=target / float(_unit_area(p, p.end_time)))


def is_normalized(p: GaussianPulse, target: float = math.pi,
                  rtol: float = AREA_RTOL) -> bool:
    return abs(total_area(p) - target) <= rtol * target


def simpson_area(p: GaussianPulse, t, tol: float = 1e-12) -> float:
    """Adaptive Simpson quadrature of the envelope, used as a cross-check."""
    a = p.start_time
    b = min(max(float(t), a), p.end_time)
    if b <= a:
        return 0.0
    f = lambda x: envelope(p, x)  # noqa: E731

    def simpson(lo, hi, flo, fmid, fhi):
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo, hi, flo, fmid, fhi, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = simpson(lo, mid, flo, flm, fmid)
        right = simpson(mid, hi, fmid, frm, fhi)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return (recurse(lo, mid, flo, flm, fmid, left, eps / 2, depth - 1)
                + recurse(mid, hi, fmid, frm, fhi, right, eps / 2, depth - 1))

    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 50)
