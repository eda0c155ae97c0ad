"""Acceleration-time histories: container, CSV I/O and synthetic generators."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    AliasError,
    EmptyInput,
    IoError,
    ParameterError,
    ParseError,
    ResolutionError,
    SamplingError,
)

#: standard gravity, m/s^2 per g
G0 = 9.80665

#: relative deviation of any time step from the median step tolerated on load
JITTER_TOL = 1e-6


@dataclass(frozen=True)
class Signal:
    """Uniformly sampled acceleration history in m/s^2.

    ``samples`` is stored as a read-only float array so a Signal can be
    shared freely between threads.
    """

    samples: np.ndarray
    dt: float
    label: str = ""

    def __post_init__(self):
        x = np.array(self.samples, dtype=float)
        if x.ndim != 1:
            raise ParameterError("samples must be one-dimensional")
        if x.size < 2:
            raise ParameterError("a signal needs at least 2 samples")
        if not np.all(np.isfinite(x)):
            raise ParameterError("samples contain NaN or Inf")
        dt = float(self.dt)
        if not (np.isfinite(dt) and dt > 0):
            raise ParameterError(f"dt must be positive, got {self.dt!r}")
        x.flags.writeable = False
        object.__setattr__(self, "samples", x)
        object.__setattr__(self, "dt", dt)

    def __len__(self):
        return self.samples.size

    def __eq__(self, other):
        if not isinstance(other, Signal):
            return NotImplemented
        return (
            self.dt == other.dt
            and self.label == other.label
            and np.array_equal(self.samples, other.samples)
        )

    __hash__ = None

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.samples.size) * self.dt

    @property
    def sample_rate(self) -> float:
        return 1.0 / self.dt

    @property
    def duration(self) -> float:
        return (self.samples.size - 1) * self.dt

    def scaled(self, factor: float) -> "Signal":
        return Signal(self.samples * factor, self.dt, self.label)

    def in_g(self) -> np.ndarray:
        return self.samples / G0

    @classmethod
    def from_g(cls, samples_g, dt, label="") -> "Signal":
        return cls(np.asarray(samples_g, dtype=float) * G0, dt, label)


def _split_row(line):
    if "," in line:
        return [tok.strip() for tok in line.split(",")]
    return line.split()


def _read_rows(path):
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except FileNotFoundError as exc:
        raise IoError(f"no such file: {path}") from exc
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc

    rows = []
    first = True
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = _split_row(line)
        try:
            rows.append([float(t) for t in toks])
        except ValueError:
            # a single leading header line is allowed
            if first and any(c.isalpha() for c in line):
                first = False
                continue
            raise ParseError(f"{path}:{lineno}: non-numeric row {line!r}") from None
        first = False
    if not rows:
        raise EmptyInput(f"{path}: no data rows")
    return rows


def load_signal(path, format="csv_two_column", dt=None, label=None,
                jitter_tol=JITTER_TOL) -> Signal:
    """Read a signal from a text file.

    Parameters
    ----------
    path : str or Path
        Comma or whitespace separated text. Lines starting with ``#`` are
        skipped and a single header line is tolerated.
    format : {"csv_two_column", "csv_single_column"}
        Two columns are ``time_s, accel_ms2``; the sample interval is the
        median time step. A single column holds accelerations only and
        `dt` must be given.
    dt : float, optional
        Sample interval for the single-column format.
    label : str, optional
        Defaults to the file stem.
    jitter_tol : float
        Largest relative deviation of any time step from the median.
    """
    path = Path(path)
    label = path.stem if label is None else label
    rows = _read_rows(path)

    if format in ("csv_single_column", "csv_single_column+dt"):
        if dt is None:
            raise ParameterError("single-column format needs dt")
        if any(len(r) != 1 for r in rows):
            raise ParseError(f"{path}: expected exactly one column")
        return Signal(np.array([r[0] for r in rows]), dt, label)

    if format != "csv_two_column":
        raise ParameterError(f"unknown format {format!r}")
    if any(len(r) < 2 for r in rows):
        raise ParseError(f"{path}: expected two columns")
    data = np.array([r[:2] for r in rows])
    t, x = data[:, 0], data[:, 1]
    if t.size < 2:
        raise ParseError(f"{path}: need at least two samples")
    steps = np.diff(t)
    if np.any(steps <= 0):
        raise SamplingError(f"{path}: time column is not strictly increasing")
    step = float(np.median(steps))
    jitter = np.max(np.abs(steps - step)) / step
    if jitter >= jitter_tol:
        raise SamplingError(
            f"{path}: non-uniform sampling (relative jitter {jitter:.3g})"
        )
    return Signal(x, step, label)


def save_signal(signal: Signal, path) -> None:
    """Write ``time_s,accel_ms2`` with 17 significant digits."""
    path = Path(path)
    data = np.column_stack([signal.times, signal.samples])
    try:
        np.savetxt(path, data, fmt="%.17g", delimiter=",",
                   header="time_s,accel_ms2", comments="")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def gen_half_sine(amplitude, duration, dt, pad=0.0, label="half-sine") -> Signal:
    """Half-sine pulse followed by `pad` seconds of zeros.

    The pulse spans ``round(duration / dt) + 1`` samples, both ends zero.
    With an even number of intervals the midpoint sample equals `amplitude`.
    """
    if not amplitude > 0:
        raise ParameterError("amplitude must be positive")
    if not dt > 0:
        raise ParameterError("dt must be positive")
    if pad < 0:
        raise ParameterError("pad must be non-negative")
    nint = int(round(duration / dt))
    if nint < 10:
        raise ResolutionError(
            f"pulse of {duration} s resolved by fewer than 10 steps of {dt} s"
        )
    pulse = amplitude * np.sin(np.pi * np.arange(nint + 1) / nint)
    mid, rem = divmod(nint, 2)
    if rem == 0:
        pulse[mid] = amplitude
    pulse[-1] = 0.0
    tail = np.zeros(int(round(pad / dt)))
    return Signal(np.concatenate([pulse, tail]), dt, label)


def gen_damped_sine_sum(components, duration, dt, label="damped-sines") -> Signal:
    """Sum of ``amp * exp(-decay*t) * sin(2*pi*freq*t + phase)`` terms.

    `components` is an iterable of ``(freq_hz, amplitude, decay, phase)``.
    Sampling covers ``[0, duration]`` inclusive.
    """
    if not dt > 0:
        raise ParameterError("dt must be positive")
    nyq = 0.5 / dt
    n = int(round(duration / dt)) + 1
    t = np.arange(n) * dt
    x = np.zeros(n)
    for freq, amp, decay, phase in components:
        if freq >= nyq:
            raise AliasError(f"component at {freq} Hz is not below Nyquist {nyq} Hz")
        if freq < 0 or decay < 0:
            raise ParameterError("frequency and decay must be non-negative")
        x += amp * np.exp(-decay * t) * np.sin(2 * np.pi * freq * t + phase)
    return Signal(x, dt, label)


def pyroshock_like(seed=0, n_components=24, fmin=200.0, fmax=20000.0,
                   level=2.0e4, duration=0.05, dt=5e-6, label=None) -> Signal:
    """Random damped-sine composite resembling a near-field pyroshock.

    Frequencies are log-uniform in ``[fmin, fmax]``, amplitudes grow with
    frequency and each component starts after a short random delay.
    Deterministic for a given `seed`.
    """
    rng = np.random.default_rng(seed)
    n = int(round(duration / dt)) + 1
    t = np.arange(n) * dt
    x = np.zeros(n)
    freqs = np.exp(rng.uniform(np.log(fmin), np.log(fmax), n_components))
    if freqs.max() >= 0.5 / dt:
        raise AliasError("component above Nyquist")
    for f in freqs:
        amp = level * (f / fmax) ** 0.5 * rng.uniform(0.3, 1.0)
        delay = rng.uniform(0.0, 0.2 * duration)
        decay = 2 * np.pi * f * rng.uniform(0.01, 0.05)
        phase = rng.uniform(0, 2 * np.pi)
        tau = np.clip(t - delay, 0.0, None)
        x += np.where(t >= delay,
                      amp * np.exp(-decay * tau) * np.sin(2 * np.pi * f * tau + phase),
                      0.0)
    return Signal(x, dt, label or f"pyro{seed}")

