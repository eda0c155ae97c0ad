"""Modal superposition on the response matrix and the SSI/SRS bounds.

A structure with modal frequencies ``f_k``, participation factors
``gamma_k`` and mode-shape values ``phi_k`` at the observation point responds
to the base shock approximately as ``a(t) = sum_k gamma_k phi_k r(t, f_k)``
where ``r(., f)`` is the oscillator response at ``f``. Off-grid frequencies
are reached by linear interpolation in log frequency, which is the same as
multiplying the response matrix by a weight vector ``x`` whose entries
split each mode between its two bracketing grid points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import IoError, ParameterError, ParseError, RangeError
from .signal import Signal
from .spectrum import ResponseMatrix, SrsVector, check_same_grid
from .ssi import SsiResult, SvdDecomposition, trend_bound_check

log = logging.getLogger(__name__)

BOUNDS_HEADER = "signal,actual_max,abs_max,ssi_bound,srs_bound,left_bound_ok"


@dataclass(frozen=True)
class ModalModel:
    mode_no: np.ndarray
    freq_hz: np.ndarray
    gamma: np.ndarray
    phi: np.ndarray
    m_eff: np.ndarray | None = None

    def __post_init__(self):
        arrs = {}
        for name in ("mode_no", "freq_hz", "gamma", "phi"):
            arrs[name] = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
        sizes = {a.size for a in arrs.values()}
        if len(sizes) != 1 or 0 in sizes:
            raise ParameterError("modal columns must be non-empty and of equal length")
        if not all(np.all(np.isfinite(a)) for a in arrs.values()):
            raise ParameterError("modal data must be finite")
        if np.any(arrs["freq_hz"] <= 0):
            raise ParameterError("modal frequencies must be positive")
        arrs["mode_no"] = arrs["mode_no"].astype(int)
        for name, a in arrs.items():
            object.__setattr__(self, name, a)
        if self.m_eff is not None:
            object.__setattr__(self, "m_eff", np.asarray(self.m_eff, dtype=float))

    def __len__(self):
        return self.freq_hz.size

    @property
    def coupling(self) -> np.ndarray:
        """Signed modal contributions ``gamma * phi``."""
        return self.gamma * self.phi

    def negligible(self, rel=1e-9) -> np.ndarray:
        c = np.abs(self.coupling)
        return c < rel * c.max()


def _fortran_float(tok):
    """Parse numbers, accepting exponents written without ``e`` (``4.1-12``)."""
    tok = tok.strip()
    try:
        return float(tok)
    except ValueError:
        pass
    for k in range(len(tok) - 1, 0, -1):
        if tok[k] in "+-" and tok[k - 1] not in "eE":
            return float(tok[:k] + "e" + tok[k:])
    raise ValueError(tok)


def load_modal_model(path) -> ModalModel:
    """Read ``mode_no,freq_hz,gamma,phi[,m_eff_kg]`` with a header row."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    lines = [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError(f"{path}: empty modal file")
    header = [h.strip().lower() for h in lines[0].split(",")]
    required = ["mode_no", "freq_hz", "gamma", "phi"]
    missing = [c for c in required if c not in header]
    if missing:
        raise ParseError(f"{path}: missing columns {missing}")
    meff_col = next((c for c in ("m_eff_kg", "m_eff") if c in header), None)
    cols = {c: [] for c in required + ([meff_col] if meff_col else [])}
    for lineno, line in enumerate(lines[1:], start=2):
        toks = [t.strip() for t in line.split(",")]
        if len(toks) != len(header):
            raise ParseError(f"{path}:{lineno}: expected {len(header)} fields")
        try:
            for c in cols:
                cols[c].append(_fortran_float(toks[header.index(c)]))
        except ValueError:
            raise ParseError(f"{path}:{lineno}: non-numeric field in {line!r}") from None
    if not cols["mode_no"]:
        raise ParseError(f"{path}: no modal rows")
    try:
        return ModalModel(cols["mode_no"], cols["freq_hz"], cols["gamma"], cols["phi"],
                          cols[meff_col] if meff_col else None)
    except ParameterError as exc:
        raise ParseError(f"{path}: {exc}") from None


def cantilever_beam() -> ModalModel:
    """Bundled 17-mode aluminium cantilever used in the worked examples."""
    ref = resources.files("shockssi") / "data" / "cantilever_beam.csv"
    with resources.as_file(ref) as p:
        return load_modal_model(p)


def _split_weights(freqs, grid, values, mode_no=None):
    grid = np.asarray(grid, dtype=float)
    lg = np.log(grid)
    x = np.zeros(grid.size)
    lo, hi = grid[0], grid[-1]
    for k, (f, c) in enumerate(zip(freqs, values)):
        tol = 1e-12 * f
        if f < lo - tol or f > hi + tol:
            which = mode_no[k] if mode_no is not None else k + 1
            raise RangeError(
                f"mode {which} at {f:g} Hz lies outside the grid [{lo:g}, {hi:g}] Hz"
            )
        j = int(np.searchsorted(grid, f))
        if j < grid.size and abs(grid[j] - f) <= tol:
            x[j] += c
            continue
        if j > 0 and abs(grid[j - 1] - f) <= tol:
            x[j - 1] += c
            continue
        w = (np.log(f) - lg[j - 1]) / (lg[j] - lg[j - 1])
        x[j - 1] += (1 - w) * c
        x[j] += w * c
    return x


def weight_vector(model: ModalModel, grid) -> np.ndarray:
    """Non-negative weights ``x`` with ``N x`` the absolute modal sum."""
    return _split_weights(model.freq_hz, grid, np.abs(model.coupling), model.mode_no)


def signed_weight_vector(model: ModalModel, grid) -> np.ndarray:
    return _split_weights(model.freq_hz, grid, model.coupling, model.mode_no)


def _weights(arg, grid, signed=False):
    if isinstance(arg, ModalModel):
        return signed_weight_vector(arg, grid) if signed else weight_vector(arg, grid)
    x = np.asarray(arg, dtype=float)
    if x.shape != (len(grid),):
        raise ParameterError(f"weight vector must have length {len(grid)}")
    return x


def predict_actual(matrix: ResponseMatrix, model) -> tuple[Signal, float]:
    """Signed superposition ``M x_signed`` and its peak magnitude."""
    x = _weights(model, matrix.freqs, signed=True)
    a = matrix.m_signed @ x
    dt = matrix.dt or 1.0
    return Signal(a, dt, f"{matrix.label} modal"), float(np.abs(a).max())


@dataclass(frozen=True)
class ResponseBounds:
    actual_max: float
    abs_max: float
    ssi_bound: float
    srs_bound: float
    label: str = ""

    @property
    def left_bound_ok(self) -> bool:
        return self.ssi_bound <= self.abs_max * (1 + 1e-9)

    @property
    def right_bound_ok(self) -> bool:
        return self.abs_max <= self.srs_bound * (1 + 1e-9)

    def as_row(self):
        return (self.label, self.actual_max, self.abs_max, self.ssi_bound,
                self.srs_bound, self.left_bound_ok)


def predict_bounds(matrix: ResponseMatrix, srs: SrsVector, ssi: SsiResult, model) -> ResponseBounds:
    """Actual peak, absolute-sum peak and the two spectral bounds."""
    check_same_grid(matrix.freqs, srs.freqs)
    if ssi.freqs is not None:
        check_same_grid(matrix.freqs, ssi.freqs)
    _, actual = predict_actual(matrix, model)
    x = _weights(model, matrix.freqs)
    abs_max = float((matrix.n_abs @ x).max())
    b = ResponseBounds(actual, abs_max, float(ssi.v_ssi @ x), float(srs.values @ x),
                       matrix.label)
    if not b.left_bound_ok:
        log.warning("%s: SSI bound %.6g exceeds |N x| peak %.6g",
                    matrix.label, b.ssi_bound, b.abs_max)
    return b


def write_bounds_csv(bounds, path):
    rows = [BOUNDS_HEADER]
    for b in bounds:
        label, *nums, ok = b.as_row()
        rows.append(",".join([label] + [f"{v:.17g}" for v in nums] + [str(ok).lower()]))
    try:
        Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def reconstruction_compare(matrix: ResponseMatrix, decomp: SvdDecomposition, model, k=1):
    """Histories ``N x`` and ``(N_1 + ... + N_k) x`` with the residual share.

    Returns ``(nx, nkx, alpha)`` where alpha is that of the rank-one fit.
    """
    if not 1 <= k <= decomp.rank:
        raise ParameterError(f"order k must lie in [1, {decomp.rank}]")
    x = _weights(model, matrix.freqs)
    nx = matrix.n_abs @ x
    coef = decomp.sigma[:k] * (decomp.v_vectors[:, :k].T @ x)
    nkx = decomp.u_vectors[:, :k] @ coef
    alpha = 1.0 - decomp.sigma[0] ** 2 / np.sum(decomp.sigma**2)
    dt = matrix.dt or 1.0
    return (Signal(nx, dt, f"{matrix.label} Nx"),
            Signal(nkx, dt, f"{matrix.label} N{k}x"),
            float(max(alpha, 0.0)))


@dataclass
class BoundReport:
    """Outcome of randomised checks of the trend and sandwich bounds."""

    trials: int
    trend_failures: int = 0
    right_failures: int = 0
    identity_failures: int = 0
    left_violations: int = 0
    gaps: np.ndarray = field(default_factory=lambda: np.empty(0))
    witnesses: list = field(default_factory=list)

    @property
    def proved_ok(self) -> bool:
        return self.trend_failures == self.right_failures == self.identity_failures == 0

    @property
    def left_violation_rate(self) -> float:
        return self.left_violations / self.trials if self.trials else 0.0

    def gap_stats(self):
        if self.gaps.size == 0:
            return (np.nan, np.nan, np.nan)
        return (float(self.gaps.min()), float(np.median(self.gaps)), float(self.gaps.max()))

    def to_dict(self):
        gmin, gmed, gmax = self.gap_stats()
        return {
            "trials": self.trials,
            "trend_failures": self.trend_failures,
            "right_failures": self.right_failures,
            "identity_failures": self.identity_failures,
            "left_violations": self.left_violations,
            "left_violation_rate": self.left_violation_rate,
            "gap_min": gmin,
            "gap_median": gmed,
            "gap_max": gmax,
            "witnesses": [list(map(float, w)) for w in self.witnesses],
        }


def check_bounds(matrix, decomp: SvdDecomposition, srs_values, ssi: SsiResult,
                 trials=1000, seed=0, weights=None, rtol=1e-9) -> BoundReport:
    """Test the proved bounds and monitor the empirical one.

    Weight vectors are ``|z|`` with ``z`` standard normal from a seeded
    generator, unless `weights` (an iterable of vectors) is supplied.
    Proved: ``||N x - N_1 x||_2 <= sigma_2 ||x||_2``,
    ``||N x||_inf <= v_srs.x`` and ``||N_1 x||_inf = v_ssi.x``.
    Monitored: ``v_ssi.x <= ||N x||_inf``; each violation keeps its ``x``.
    """
    N = matrix.n_abs if isinstance(matrix, ResponseMatrix) else np.asarray(matrix, float)
    n = N.shape[1]
    if weights is None:
        rng = np.random.default_rng(seed)
        weights = np.abs(rng.standard_normal((trials, n)))
    weights = [np.asarray(w, float) for w in weights]
    srs_values = np.asarray(srs_values, float)
    rep = BoundReport(len(weights))
    u1 = decomp.u_vectors[:, 0]
    s1 = decomp.sigma[0]
    gaps = []
    for x in weights:
        if not trend_bound_check(N, decomp, x, rtol).holds:
            rep.trend_failures += 1
        nx_max = float((N @ x).max())
        upper = float(srs_values @ x)
        if nx_max > upper * (1 + rtol):
            rep.right_failures += 1
        lower = float(ssi.v_ssi @ x)
        n1x_max = float(np.abs(s1 * (decomp.v_vectors[:, 0] @ x) * u1).max())
        # scale bounds |lower| by Cauchy-Schwarz since ||v_1||_2 = 1
        scale = s1 * np.abs(u1).max() * np.linalg.norm(x)
        if abs(n1x_max - lower) > rtol * scale:
            rep.identity_failures += 1
        gaps.append(nx_max - lower)
        if lower > nx_max * (1 + rtol):
            rep.left_violations += 1
            rep.witnesses.append(x)
    rep.gaps = np.array(gaps)
    return rep
