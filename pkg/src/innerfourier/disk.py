"""Inner analytic function w(z) = sum a_k z^k and its radial limits.

A coefficient sequence is summed inside the open unit disk on a ladder of
radii rho_j = 1 - 2^-j; the boundary value at each angle is the
polynomial extrapolation of the rung values to h = 1 - rho = 0.  Cosine
sequences recover the function from Re w, sine sequences from Im w; the
other part gives the Fourier-conjugate function.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .coeffs import CoefficientSequence
from .core import PeriodicFunctionSpec
from .errors import DomainError, ExclusionError, GrowthGateError, TruncationError
from .growth import classify, fit_envelope

__all__ = [
    "DiskPoint",
    "InnerAnalyticEvaluation",
    "LadderConfig",
    "ReconstructionResult",
    "ErrorStats",
    "evaluate_series",
    "evaluate_on_circle",
    "horner",
    "neville",
    "reconstruct",
    "conjugate_reconstruct",
    "compare_to_oracle",
    "theta_grid",
    "TAIL_TOL",
]

PI = math.pi
TAIL_TOL = 1e-12
MAX_TERMS = 1 << 20


@dataclass(frozen=True)
class DiskPoint:
    rho: float
    theta: float

    def __post_init__(self):
        if not 0 <= self.rho < 1:
            raise DomainError(f"domain error: open disk only (rho={self.rho})")
        if not -PI <= self.theta <= PI:
            raise DomainError(f"domain error: theta={self.theta} outside [-pi, pi]")

    @property
    def z(self) -> complex:
        return self.rho * complex(math.cos(self.theta), math.sin(self.theta))


@dataclass(frozen=True)
class InnerAnalyticEvaluation:
    real_part: float
    imag_part: float
    terms_used: int
    tail_bound: float


def horner(coeffs, z):
    """sum_{k>=1} coeffs[k-1] * z**k for scalar or array z."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros(z.shape, dtype=complex)
    for a in coeffs[::-1]:
        acc = (acc + a) * z
    return acc


def _tail_bounds(vals, rho, finite):
    """Bound on sum_{k>n} |a_k| rho^k for n = 0..K (log space)."""
    K = vals.size
    k = np.arange(1, K + 1, dtype=float)
    if finite:
        lam = p = 0.0
        log_env = -math.inf
    else:
        lam, p, _ = fit_envelope(vals)
        # past K, assume growth no faster than a power times e^{lam k}
        lam = max(lam, 0.0) if math.isfinite(lam) else 0.0
        p = max(p, 0.0)
    mag = np.abs(vals)
    with np.errstate(divide="ignore"):
        scaled = np.log(mag) - p * np.log(k) - lam * k
    if not finite:
        window = max(8, K // 4) if K >= 16 else K
        log_env = float(np.max(scaled[-window:]))
    # suffix maxima: max over k > n, with n = 0..K
    suffix = np.append(np.maximum.accumulate(scaled[::-1])[::-1], -math.inf)
    log_m = np.maximum(suffix, log_env)
    if rho == 0:
        return np.full(K + 1, -math.inf)
    n = np.arange(0, K + 1, dtype=float)
    log_q = p * np.log((n + 2) / (n + 1)) + math.log(rho) + lam
    with np.errstate(invalid="ignore", divide="ignore"):
        log_b = (log_m + p * np.log(n + 1) + lam * (n + 1) + (n + 1) * math.log(rho)
                 - np.log1p(-np.exp(np.minimum(log_q, 0.0))))
    log_b = np.where(log_q >= 0, math.inf, log_b)
    return np.where(np.isneginf(log_m), -math.inf, log_b)


def _truncate(seq, rho, tail_tol=TAIL_TOL, max_terms=MAX_TERMS):
    """Coefficients, terms_used and tail bound meeting ``tail_tol`` at radius rho."""
    vals = seq.values
    log_tol = math.log(tail_tol)
    while True:
        log_b = _tail_bounds(vals, rho, seq.finite)
        ok = np.nonzero(log_b < log_tol)[0]
        if ok.size:
            n = int(ok[0])
            return vals[:n], n, float(math.exp(log_b[n]))
        if seq.finite or seq.generator is None or vals.size >= max_terms:
            bound = float(math.exp(min(log_b[-1], 700.0)))
            raise TruncationError(
                f"truncation error above tolerance: {vals.size} terms leave a tail bound "
                f"of {bound:.3e} at rho={rho}", bound)
        vals = seq.extended(min(2 * vals.size, max_terms))


def evaluate_series(seq: CoefficientSequence, p: DiskPoint, tail_tol: float = TAIL_TOL) -> InnerAnalyticEvaluation:
    """w(rho e^{i theta}) by Horner's rule, truncated below ``tail_tol``."""
    coeffs, n, bound = _truncate(seq, p.rho, tail_tol)
    w = complex(horner(coeffs, p.z))
    return InnerAnalyticEvaluation(w.real, w.imag, n, bound)


def evaluate_on_circle(seq: CoefficientSequence, rho: float, thetas, tail_tol: float = TAIL_TOL):
    """Vectorised :func:`evaluate_series` at one radius; returns (w, terms, bound)."""
    if not 0 <= rho < 1:
        raise DomainError(f"domain error: open disk only (rho={rho})")
    thetas = np.asarray(thetas, dtype=float)
    coeffs, n, bound = _truncate(seq, rho, tail_tol)
    return horner(coeffs, rho * np.exp(1j * thetas)), n, bound


def neville(h, values, x=0.0):
    """Neville tableau at ``x`` for nodes ``h`` (shape (m,)) and ``values`` (m, ...).

    Returns the extrapolants using all m nodes and using the last m-1
    nodes (the ones nearest ``x`` when h decreases).
    """
    h = np.asarray(h, dtype=float)
    p = [np.asarray(v, dtype=float) for v in values]
    m = len(p)
    if m == 1:
        return p[0], p[0]
    lower = None
    for order in range(1, m):
        for i in range(m - order):
            j = i + order
            p[i] = ((x - h[j]) * p[i] - (x - h[i]) * p[i + 1]) / (h[i] - h[j])
        if order == m - 2:
            lower = p[1].copy()
    if lower is None:
        lower = np.asarray(values[-1], dtype=float)
    return p[0], lower


@dataclass(frozen=True)
class LadderConfig:
    depth: int = 10
    order: int = 4
    tol: float = 1e-6
    tail_tol: float = TAIL_TOL

    def __post_init__(self):
        if self.depth < 1 or self.order < 1:
            raise ValueError("ladder depth and extrapolation order must be >= 1")
        if not (self.tol > 0 and self.tail_tol > 0):
            raise ValueError("tolerances must be positive")

    @property
    def rungs(self) -> np.ndarray:
        return 1.0 - 2.0 ** -np.arange(1, self.depth + 1, dtype=float)


@dataclass(frozen=True, eq=False)
class ReconstructionResult:
    theta: np.ndarray
    values: np.ndarray
    ladder: np.ndarray
    residual: np.ndarray
    converged: np.ndarray
    rung_values: np.ndarray
    part: str
    terms_used: tuple = ()
    oracle_error: Optional[np.ndarray] = None
    note: str = ""

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["theta", "value", "residual", "converged"])
        for t, v, r, c in zip(self.theta, self.values, self.residual, self.converged):
            writer.writerow([f"{t:.17g}", f"{v:.17g}", f"{r:.17g}", int(bool(c))])
        return buf.getvalue()

    def to_dict(self) -> dict:
        def clean(a):
            return [float(x) if math.isfinite(x) else None for x in np.ravel(a)]

        d = {
            "part": self.part,
            "theta": clean(self.theta),
            "value": clean(self.values),
            "residual": clean(self.residual),
            "converged": [bool(c) for c in self.converged],
            "ladder": clean(self.ladder),
            "terms_used": list(self.terms_used),
            "rung_values": [clean(row) for row in self.rung_values],
        }
        if self.oracle_error is not None:
            d["oracle_error"] = clean(self.oracle_error)
        if self.note:
            d["note"] = self.note
        return d


def theta_grid(n: int) -> np.ndarray:
    """n cell-centred angles, symmetric about 0 and avoiding 0 and +-pi."""
    if n < 1:
        raise ValueError("grid size must be positive")
    return -PI + (np.arange(n) + 0.5) * (2 * PI / n)


def _gate(seq):
    if seq.finite or seq.K < 16:
        return
    report = classify(seq)
    if report.subexp_condition == "fail":
        raise GrowthGateError(
            "sequence grows exponentially (estimated rate "
            f"{report.exp_rate_estimate:.4g} per index); refusing to reconstruct", report.exp_rate_estimate)


def _reconstruct(seq, thetas, ladder, part, force):
    if not force:
        _gate(seq)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    if np.any(np.abs(thetas) > PI):
        raise DomainError("domain error: theta outside [-pi, pi]")
    used, rows, terms, note = [], [], [], ""
    for rho in ladder.rungs:
        try:
            w, n, _ = evaluate_on_circle(seq, float(rho), thetas, ladder.tail_tol)
        except TruncationError as exc:
            note = f"ladder stopped before rho={rho:.6g}: {exc}"
            break
        used.append(rho)
        rows.append(w.real if part == "real" else w.imag)
        terms.append(n)
    used = np.asarray(used)
    if not rows:
        nan = np.full(thetas.shape, math.nan)
        return ReconstructionResult(thetas, nan, used, np.full(thetas.shape, math.inf),
                                    np.zeros(thetas.shape, bool), np.empty((0, thetas.size)),
                                    part, (), None, note)
    rung_values = np.vstack(rows)
    last = min(ladder.order + 1, len(rows))
    h = 1.0 - used[-last:]
    best, lower = neville(h, rung_values[-last:])
    residual = np.abs(best - lower) if last > 1 else np.full(thetas.shape, math.inf)
    converged = np.isfinite(best) & (residual < ladder.tol)
    return ReconstructionResult(thetas, best, used, residual, converged, rung_values, part,
                                tuple(terms), None, note)


def reconstruct(seq: CoefficientSequence, thetas, ladder: LadderConfig = LadderConfig(),
                force: bool = False) -> ReconstructionResult:
    """Boundary values of the function whose coefficients are ``seq``.

    Refuses (``GrowthGateError``) sequences that fail the sub-exponential
    check unless ``force`` is set.  Points whose extrapolation does not
    settle are flagged through ``converged``, never raised.
    """
    return _reconstruct(seq, thetas, ladder, "real" if seq.kind == "cosine" else "imag", force)


def conjugate_reconstruct(seq: CoefficientSequence, thetas, ladder: LadderConfig = LadderConfig(),
                          force: bool = False) -> ReconstructionResult:
    """Like :func:`reconstruct` but from the other part of w: the conjugate function."""
    return _reconstruct(seq, thetas, ladder, "imag" if seq.kind == "cosine" else "real", force)


@dataclass(frozen=True, eq=False)
class ErrorStats:
    max_error: float
    mean_error: float
    n_points: int
    errors: np.ndarray = field(repr=False)
    mask: np.ndarray = field(repr=False)


def _angular_distance(a, b):
    return np.abs(np.mod(a - b + PI, 2 * PI) - PI)


def compare_to_oracle(r: ReconstructionResult, f: PeriodicFunctionSpec,
                      exclusion_radius: float) -> ErrorStats:
    """Error of ``r`` against ``f`` away from f's jumps and singular points."""
    if exclusion_radius < 0:
        raise ValueError("exclusion radius must be non-negative")
    centres = set(f.jumps) | set(f.singular_points)
    mask = np.ones(r.theta.shape, dtype=bool)
    for c in centres:
        mask &= _angular_distance(r.theta, c) > exclusion_radius
    if not np.any(mask):
        raise ExclusionError("exclusion too aggressive: no grid point left to compare")
    errors = np.full(r.theta.shape, math.nan)
    errors[mask] = np.abs(r.values[mask] - f(r.theta[mask]))
    sel = errors[mask]
    return ErrorStats(float(np.max(sel)), float(np.mean(sel)), int(mask.sum()), errors, mask)
