"""Shock response matrix, shock response spectrum and contour export."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _svg
from .errors import AliasError, GridError, IoError, ParameterError
from .sdof import OscillatorBank, sdof_response_filter
from .signal import Signal

SRC_FLOOR = 240.0
SRC_CEILING = 200_000.0


@dataclass(frozen=True)
class ResponseMatrix:
    """Responses of an oscillator bank; rows are time, columns frequency.

    Attributes
    ----------
    m_signed : (m, n) ndarray
        Absolute-acceleration histories, m/s^2.
    n_abs : (m, n) ndarray
        Element-wise magnitude of `m_signed`.
    times : (m,) ndarray
    freqs : (n,) ndarray
    q : float
    label : str
    """

    m_signed: np.ndarray
    n_abs: np.ndarray
    times: np.ndarray
    freqs: np.ndarray
    q: float = 10.0
    label: str = ""

    def __post_init__(self):
        M = np.asarray(self.m_signed, dtype=float)
        N = np.asarray(self.n_abs, dtype=float)
        if M.ndim != 2 or M.shape != N.shape:
            raise ParameterError("m_signed and n_abs must be equal-shape 2-D arrays")
        if len(self.times) != M.shape[0] or len(self.freqs) != M.shape[1]:
            raise ParameterError("axes do not match the matrix shape")
        if not (np.all(np.isfinite(M)) and np.all(np.isfinite(N))):
            raise ParameterError("response matrix has non-finite entries")
        for name in ("m_signed", "n_abs", "times", "freqs"):
            a = np.array(getattr(self, name), dtype=float)
            a.flags.writeable = False
            object.__setattr__(self, name, a)

    @classmethod
    def from_signed(cls, m_signed, times, freqs, q=10.0, label=""):
        M = np.asarray(m_signed, dtype=float)
        return cls(M, np.abs(M), times, freqs, q, label)

    @property
    def shape(self):
        return self.n_abs.shape

    @property
    def dt(self):
        return float(self.times[1] - self.times[0]) if self.times.size > 1 else 0.0


@dataclass(frozen=True)
class SrsVector:
    """Maximax absolute-acceleration spectrum."""

    values: np.ndarray
    freqs: np.ndarray
    q: float = 10.0
    label: str = ""


def build_response_matrix(signal: Signal, bank: OscillatorBank, workers=None) -> ResponseMatrix:
    """Run every oscillator of `bank` over `signal`.

    Columns are independent; ``workers > 1`` computes them on a thread pool.
    Column order and values do not depend on scheduling.
    """
    limit = 0.8 * 0.5 / signal.dt
    bad = bank.freqs[bank.freqs >= limit]
    if bad.size:
        raise AliasError(
            f"oscillator at {bad[0]:g} Hz exceeds 80% of Nyquist ({limit:g} Hz) "
            f"for dt={signal.dt:g} s"
        )
    zeta = bank.zeta

    def column(fn):
        return sdof_response_filter(signal, fn, zeta).samples

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cols = list(pool.map(column, bank.freqs))
    else:
        cols = [column(fn) for fn in bank.freqs]
    M = np.column_stack(cols)
    return ResponseMatrix(M, np.abs(M), signal.times, bank.freqs, bank.q, signal.label)


def srs(matrix: ResponseMatrix) -> SrsVector:
    """Column maxima of the magnitude matrix."""
    return SrsVector(matrix.n_abs.max(axis=0), matrix.freqs.copy(), matrix.q, matrix.label)


def check_same_grid(a, b, what="frequency grids"):
    a, b = np.asarray(a, float), np.asarray(b, float)
    if a.shape != b.shape or not np.allclose(a, b, rtol=1e-12, atol=0):
        raise GridError(f"{what} differ")


def write_srs_csv(spec: SrsVector, path):
    data = np.column_stack([spec.freqs, spec.values])
    _savetxt(path, data, "freq_hz,srs_ms2")


def write_srs_svg(spectra, path, title="Shock response spectrum"):
    """Overlay one or more SrsVectors sharing a grid on log-log axes."""
    if isinstance(spectra, SrsVector):
        spectra = [spectra]
    freqs = spectra[0].freqs
    for s in spectra[1:]:
        check_same_grid(freqs, s.freqs)
    series = {(s.label or f"SRS {k + 1}") + f" (Q={s.q:g})": s.values
              for k, s in enumerate(spectra)}
    _write_text(path, _svg.loglog_chart(freqs, series, title, "Acceleration (m/s^2)"))


def export_src(matrix: ResponseMatrix, path, floor=SRC_FLOOR, ceiling=SRC_CEILING):
    """Write the shock response contour of `matrix`.

    Produces ``<path>.csv`` in long format ``time_s,freq_hz,abs_accel_ms2``
    (unclamped, one row per matrix entry, time-major) and ``<path>.svg``
    rendered with values clamped to ``[floor, ceiling]``.

    Returns the two written paths.
    """
    if not 0 < floor < ceiling:
        raise ParameterError("need 0 < floor < ceiling")
    path = Path(path)
    base = path.with_suffix("") if path.suffix in (".csv", ".svg") else path
    csv_path = base.with_name(base.name + ".csv")
    svg_path = base.with_name(base.name + ".svg")
    m, n = matrix.shape
    data = np.column_stack([
        np.repeat(matrix.times, n),
        np.tile(matrix.freqs, m),
        matrix.n_abs.ravel(),
    ])
    _savetxt(csv_path, data, "time_s,freq_hz,abs_accel_ms2")
    title = f"Shock response contour {matrix.label}".strip()
    _write_text(svg_path, _svg.contour_cells(matrix.times, matrix.freqs, matrix.n_abs,
                                             floor, ceiling, title))
    return csv_path, svg_path


def _savetxt(path, data, header):
    try:
        np.savetxt(path, data, fmt="%.17g", delimiter=",", header=header, comments="")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _write_text(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
