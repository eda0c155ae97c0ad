"""Shock severity infimum from the best rank-one fit of the magnitude matrix.

The magnitude matrix ``N`` is factored as ``sum_k sigma_k u_k v_k^T``. Its
leading component ``N_1 = sigma_1 u_1 v_1^T`` is the closest separable
(rank-one) matrix in the Frobenius norm, and the column maxima of ``N_1``
give the infimum spectrum::

    v_ssi = sigma_1 * max|u_1| * v_1

The share of energy left outside ``N_1`` is
``alpha = 1 - sigma_1**2 / sum(sigma_k**2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import _svg
from .errors import DegenerateInput, GridError, IoError, ParameterError
from .spectrum import ResponseMatrix, SrsVector, check_same_grid

#: singular values below this fraction of sigma_1 are treated as zero
RANK_TOL = 1e-12

#: ssi entries below this fraction of max(srs) make the margin infinite
MARGIN_FLOOR = 1e-12


@dataclass(frozen=True)
class SvdDecomposition:
    """Thin SVD ``N = U diag(sigma) V^T`` truncated to numerical rank.

    ``u_vectors`` is (m, r), ``v_vectors`` is (n, r). Each pair is signed so
    that the frequency vector has a non-negative sum.
    """

    sigma: np.ndarray
    u_vectors: np.ndarray
    v_vectors: np.ndarray
    freqs: np.ndarray | None = None
    times: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return self.sigma.size

    def component(self, k):
        """Rank-one matrix ``N_k`` (1-based)."""
        return self.sigma[k - 1] * np.outer(self.u_vectors[:, k - 1], self.v_vectors[:, k - 1])

    def reconstruct(self, k=None):
        k = self.rank if k is None else k
        return (self.u_vectors[:, :k] * self.sigma[:k]) @ self.v_vectors[:, :k].T


@dataclass(frozen=True)
class SsiResult:
    v_ssi: np.ndarray
    u_ssi: np.ndarray
    alpha: float
    sigma: np.ndarray
    freqs: np.ndarray | None = None
    times: np.ndarray | None = None

    def n1(self):
        """The separable approximation ``u_ssi v_ssi^T``."""
        return np.outer(self.u_ssi, self.v_ssi)


@dataclass(frozen=True)
class DualSpectra:
    freqs: np.ndarray
    srs: np.ndarray
    ssi: np.ndarray
    margin_db: np.ndarray
    flagged: np.ndarray
    label: str = ""


class TrendCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def _magnitude(matrix):
    if isinstance(matrix, ResponseMatrix):
        return matrix.n_abs, matrix.freqs, matrix.times
    N = np.asarray(matrix, dtype=float)
    if N.ndim != 2:
        raise ParameterError("expected a 2-D matrix")
    return N, None, None


def _canonical_signs(U, V):
    for k in range(V.shape[1]):
        v = V[:, k]
        s = v.sum()
        scale = max(np.abs(v).max(), 1.0) * v.size * np.finfo(float).eps
        if abs(s) <= scale:
            nz = np.flatnonzero(np.abs(v) > scale)
            flip = nz.size and v[nz[0]] < 0
        else:
            flip = s < 0
        if flip:
            U[:, k] *= -1
            V[:, k] *= -1


def svd_nonneg(matrix, tol=RANK_TOL) -> SvdDecomposition:
    """Thin SVD of the magnitude matrix, truncated at ``tol * sigma_1``.

    For tall inputs the matrix is first reduced by a QR factorisation and
    the small ``n x n`` triangular factor is decomposed, costing
    ``O(m n^2)``. Wide inputs go straight to LAPACK.

    Parameters
    ----------
    matrix : ResponseMatrix or array_like
        Uses ``n_abs`` of a ResponseMatrix; plain arrays are used as given.
    tol : float
        Relative cut-off for the numerical rank.
    """
    N, freqs, times = _magnitude(matrix)
    if not np.all(np.isfinite(N)):
        raise ParameterError("matrix has non-finite entries")
    if N.size == 0 or not np.any(N):
        raise DegenerateInput("matrix is all zero")
    m, n = N.shape
    if m >= n:
        Q, R = np.linalg.qr(N, mode="reduced")
        Ur, s, Vt = np.linalg.svd(R)
        U = Q @ Ur
    else:
        U, s, Vt = np.linalg.svd(N, full_matrices=False)
    V = Vt.T
    r = int(np.count_nonzero(s > tol * s[0]))
    U, s, V = U[:, :r].copy(), s[:r].copy(), V[:, :r].copy()
    _canonical_signs(U, V)
    return SvdDecomposition(s, U, V, freqs, times)


def ssi_extract(decomp: SvdDecomposition) -> SsiResult:
    """Infimum spectrum, normalised time shape and residual share alpha."""
    if decomp.rank < 1:
        raise DegenerateInput("decomposition has rank zero")
    s1 = decomp.sigma[0]
    u1 = decomp.u_vectors[:, 0]
    v1 = decomp.v_vectors[:, 0]
    umax = np.abs(u1).max()
    # put the peak of the time shape at +1 so v_ssi is the N_1 column maximum
    sign = 1.0 if u1[np.argmax(np.abs(u1))] >= 0 else -1.0
    v_ssi = s1 * umax * v1 * sign
    u_ssi = u1 / umax * sign
    energy = np.sum(decomp.sigma**2)
    alpha = float(min(max(1.0 - s1**2 / energy, 0.0), 1.0))
    return SsiResult(v_ssi, u_ssi, alpha, decomp.sigma.copy(), decomp.freqs, decomp.times)


def residual_share(matrix, decomp: SvdDecomposition) -> float:
    """``(||N - N_1||_F / ||N||_F)**2`` computed directly from the matrices."""
    N, _, _ = _magnitude(matrix)
    return float((np.linalg.norm(N - decomp.component(1)) / np.linalg.norm(N)) ** 2)


def dual_spectra(srs: SrsVector, ssi: SsiResult, freqs=None) -> DualSpectra:
    """Pair the supremum and infimum spectra with their dB margin.

    ``margin = 20 log10(srs / ssi)``. Where ``ssi`` is below
    ``1e-12 * max(srs)`` the margin is ``+inf`` and the bin is flagged.
    Negative margins are reported as computed: the rank-one fit can
    overshoot a column maximum, typically for short pulses at frequencies
    whose oscillators ring long after the input ends.
    """
    grid = ssi.freqs if freqs is None else freqs
    if grid is not None:
        try:
            check_same_grid(srs.freqs, grid)
        except GridError:
            raise GridError("SRS and SSI are on different frequency grids") from None
    if srs.values.shape != ssi.v_ssi.shape:
        raise GridError("SRS and SSI lengths differ")
    top = srs.values.max() if srs.values.size else 0.0
    floor = MARGIN_FLOOR * top
    flagged = ssi.v_ssi <= floor
    with np.errstate(divide="ignore", invalid="ignore"):
        margin = 20.0 * np.log10(srs.values / np.where(flagged, 1.0, ssi.v_ssi))
    margin = np.where(flagged, np.inf, margin)
    return DualSpectra(srs.freqs.copy(), srs.values.copy(), ssi.v_ssi.copy(),
                       margin, flagged, srs.label)


def trend_bound_check(matrix, decomp: SvdDecomposition, x, rtol=1e-9) -> TrendCheck:
    """Distance between ``N x`` and its leading-component trend.

    ``lhs = ||N x - (sigma_1 v_1.x) u_1||_2`` and ``rhs = sigma_2 ||x||_2``
    (zero at rank one). The bound is accepted with slack
    ``rtol * sigma_1 * ||x||_2`` for round-off.
    """
    N, _, _ = _magnitude(matrix)
    x = np.asarray(x, dtype=float)
    if x.shape != (N.shape[1],):
        raise ParameterError(f"weight vector must have length {N.shape[1]}")
    if np.any(x < 0):
        raise ParameterError("weight vector must be non-negative")
    s1 = decomp.sigma[0]
    trend = (s1 * decomp.v_vectors[:, 0] @ x) * decomp.u_vectors[:, 0]
    lhs = float(np.linalg.norm(N @ x - trend))
    xn = float(np.linalg.norm(x))
    rhs = float(decomp.sigma[1] * xn) if decomp.rank > 1 else 0.0
    return TrendCheck(lhs, rhs, lhs <= rhs + rtol * s1 * xn)


def analyse(matrix: ResponseMatrix, srs_vec: SrsVector | None = None, tol=RANK_TOL):
    """Decomposition, SSI and dual spectra of a response matrix in one call."""
    from .spectrum import srs as _srs

    decomp = svd_nonneg(matrix, tol)
    res = ssi_extract(decomp)
    sv = _srs(matrix) if srs_vec is None else srs_vec
    return decomp, res, dual_spectra(sv, res)


def write_dual_csv(dual: DualSpectra, path):
    data = np.column_stack([dual.freqs, dual.srs, dual.ssi, dual.margin_db])
    try:
        np.savetxt(path, data, fmt="%.17g", delimiter=",",
                   header="freq_hz,srs_ms2,ssi_ms2,margin_db", comments="")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def write_dual_svg(dual: DualSpectra, path):
    title = f"Dual spectra {dual.label}".strip()
    text = _svg.loglog_chart(dual.freqs, {"SRS": dual.srs, "SSI": dual.ssi}, title,
                             "Acceleration (m/s^2)", right=("margin (dB)", dual.margin_db))
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
