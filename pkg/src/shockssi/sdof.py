"""Single-degree-of-freedom oscillators under base acceleration.

Two independent routes compute the absolute acceleration of the mass:

* :func:`sdof_response_filter` -- ramp-invariant recursive filter
  (Smallwood), O(m) and used for production.
* :func:`sdof_response_oracle` -- classical RK4 on the equation of motion
  with linearly interpolated input, used to cross-check the filter.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, exp, pi, sin, sqrt

import numpy as np
from scipy.signal import lfilter

from .errors import AliasError, ParameterError
from .signal import Signal

#: oscillators must sit below this fraction of the Nyquist frequency
NYQUIST_GUARD = 0.8


@dataclass(frozen=True)
class OscillatorBank:
    """Natural-frequency grid (Hz) and common quality factor."""

    freqs: np.ndarray
    q: float = 10.0

    def __post_init__(self):
        f = np.atleast_1d(np.array(self.freqs, dtype=float))
        if f.ndim != 1 or f.size == 0:
            raise ParameterError("freqs must be a non-empty 1-D array")
        if not np.all(np.isfinite(f)) or np.any(f <= 0):
            raise ParameterError("natural frequencies must be positive and finite")
        if np.any(np.diff(f) <= 0):
            raise ParameterError("natural frequencies must be strictly increasing")
        if not self.q > 0.5:
            raise ParameterError(f"q must exceed 0.5 (underdamped), got {self.q}")
        f.flags.writeable = False
        object.__setattr__(self, "freqs", f)
        object.__setattr__(self, "q", float(self.q))

    @property
    def zeta(self) -> float:
        return 1.0 / (2.0 * self.q)

    def __len__(self):
        return self.freqs.size

    @classmethod
    def log_spaced(cls, fmin=100.0, fmax=25600.0, points_per_octave=6, q=10.0):
        return cls(log_freq_grid(fmin, fmax, points_per_octave), q)


def log_freq_grid(fmin, fmax, points_per_octave):
    """Geometric grid ``fmin * 2**(k/ppo)`` up to `fmax`.

    `fmax` is appended when the sequence does not land on it.

    >>> log_freq_grid(100, 800, 1)
    array([100., 200., 400., 800.])
    """
    if not fmin > 0:
        raise ParameterError("fmin must be positive")
    if fmax < fmin:
        raise ParameterError("fmax must not be below fmin")
    if points_per_octave < 1 or int(points_per_octave) != points_per_octave:
        raise ParameterError("points_per_octave must be a positive integer")
    ppo = int(points_per_octave)
    # tolerate round-off when fmax sits on the grid
    kmax = int(np.floor(ppo * np.log2(fmax / fmin) + 1e-9))
    freqs = fmin * 2.0 ** (np.arange(kmax + 1) / ppo)
    if np.isclose(freqs[-1], fmax, rtol=1e-9, atol=0):
        freqs[-1] = fmax
    else:
        freqs = np.append(freqs, fmax)
    return freqs


def _check_args(signal, fn, zeta):
    if not fn > 0:
        raise ParameterError(f"natural frequency must be positive, got {fn}")
    if not 0 < zeta < 1:
        raise ParameterError(f"zeta must lie in (0, 1), got {zeta}")
    limit = NYQUIST_GUARD * 0.5 / signal.dt
    if fn >= limit:
        raise AliasError(
            f"oscillator at {fn:g} Hz is at or above {limit:g} Hz "
            f"({NYQUIST_GUARD:.0%} of Nyquist)"
        )


def absacc_coefficients(fn, zeta, dt):
    """Ramp-invariant ``(b, a)`` for absolute acceleration, for lfilter."""
    wn = 2 * pi * fn
    wd = wn * sqrt(1 - zeta * zeta)
    E = exp(-zeta * wn * dt)
    E2 = E * E
    B = wd * dt
    C = E * cos(B)
    Sb = E * sin(B) / B
    b = np.array([1 - Sb, 2 * (Sb - C), E2 - Sb])
    a = np.array([1.0, -2 * C, E2])
    return b, a


def sdof_response_filter(signal: Signal, fn, zeta=0.05) -> Signal:
    """Absolute acceleration of an oscillator at rest, via recursive filter."""
    _check_args(signal, fn, zeta)
    b, a = absacc_coefficients(fn, zeta, signal.dt)
    y = lfilter(b, a, signal.samples)
    return Signal(y, signal.dt, f"{signal.label}@{fn:g}Hz")


def _rk4_sample_map(wn, zeta, dt, substeps):
    """Linear map of one input sample interval under `substeps` RK4 steps.

    The equation of motion for relative displacement ``z`` is
    ``z'' + 2 zeta wn z' + wn^2 z = -a(t)`` with ``a`` linear between
    samples. Since RK4 applied to a linear system with linear forcing is
    itself linear in ``(z, z', a_k, a_k+1)``, the map is obtained by pushing
    the four unit vectors through the integrator.
    """
    h = dt / substeps
    c, k = 2 * zeta * wn, wn * wn

    def f(state, acc):
        z, v = state
        return np.array([v, -c * v - k * z - acc])

    G = np.empty((2, 4))
    for col in range(4):
        basis = np.zeros(4)
        basis[col] = 1.0
        s = basis[:2].copy()
        a0, a1 = basis[2], basis[3]
        for j in range(substeps):
            t0 = j / substeps
            th = (j + 0.5) / substeps
            t1 = (j + 1) / substeps
            u0 = a0 + (a1 - a0) * t0
            uh = a0 + (a1 - a0) * th
            u1 = a0 + (a1 - a0) * t1
            k1 = f(s, u0)
            k2 = f(s + 0.5 * h * k1, uh)
            k3 = f(s + 0.5 * h * k2, uh)
            k4 = f(s + h * k3, u1)
            s = s + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        G[:, col] = s
    return G


def sdof_response_oracle(signal: Signal, fn, zeta=0.05, substeps=8) -> Signal:
    """Absolute acceleration by fixed-step RK4, sampled at the input instants.

    Slow reference path. The input is taken as zero before the first
    sample, matching the filter's rest initial condition.
    """
    if substeps < 4 or int(substeps) != substeps:
        raise ParameterError("substeps must be an integer >= 4")
    if not fn > 0:
        raise ParameterError(f"natural frequency must be positive, got {fn}")
    if not 0 < zeta < 1:
        raise ParameterError(f"zeta must lie in (0, 1), got {zeta}")
    wn = 2 * pi * fn
    G = _rk4_sample_map(wn, zeta, signal.dt, int(substeps))
    x = signal.samples
    m = x.size
    z = np.empty(m)
    v = np.empty(m)
    # rest before t=0, input ramps from 0 to x[0] over the preceding interval
    s = G[:, 2] * 0.0 + G[:, 3] * x[0]
    z[0], v[0] = s
    g00, g01, g02, g03 = G[0]
    g10, g11, g12, g13 = G[1]
    zi, vi = s
    for i in range(1, m):
        xa, xb = x[i - 1], x[i]
        zi, vi = (g00 * zi + g01 * vi + g02 * xa + g03 * xb,
                  g10 * zi + g11 * vi + g12 * xa + g13 * xb)
        z[i] = zi
        v[i] = vi
    y = -(2 * zeta * wn * v + wn * wn * z)
    return Signal(y, signal.dt, f"{signal.label}@{fn:g}Hz/rk4")
