"""Growth classification of coefficient sequences.

Two conditions are checked on a trailing window of a finite prefix:

* ratio bound: |a_{k+1}/a_k| <= g(k) with g(k) -> 1;
* sub-exponential growth: |a_k| e^{-Ck} -> 0 for every C > 0, i.e. the
  exponential rate limsup ln|a_k|/k is not positive.

Asymptotic statements cannot be decided from K numbers, so every verdict
is relative to the evidence window it reports.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .coeffs import CoefficientSequence
from .errors import DegenerateSequenceError, DomainError

__all__ = [
    "GrowthReport",
    "ThresholdResult",
    "ratio_bound_check",
    "subexponential_check",
    "classify",
    "damping_profile",
    "bounded_check",
    "log_linear_threshold",
    "fit_envelope",
    "default_window",
    "RATE_TOL",
    "RATIO_TOL",
    "RATIO_MARGIN",
]

RATE_TOL = 0.02
RATIO_TOL = 0.02
RATIO_MARGIN = 0.05
# a coefficient counts as zero below this fraction of the largest earlier one,
# or below the sequence's own absolute accuracy
ZERO_REL = 1e-12
_BLOCKS = 4


def default_window(K: int) -> int:
    return max(8, K // 4)


def _check_window(seq, window):
    if window < 8:
        raise ValueError("evidence window must be at least 8")
    if seq.K < 2 * window:
        raise ValueError(f"need K >= 2*window (K={seq.K}, window={window})")


def _denoised(values, floor=0.0):
    mag = np.abs(np.asarray(values, dtype=float))
    if mag.size == 0:
        return mag
    return np.where((mag <= ZERO_REL * np.maximum.accumulate(mag)) | (mag <= floor), 0.0, mag)


def _magnitudes(seq):
    mag = _denoised(seq.values, seq.tolerance)
    if not np.any(mag):
        raise DegenerateSequenceError("degenerate sequence: all coefficients are zero")
    return mag


def _block_maxima(k, y):
    """(k, y) at the maximum of y inside each of a few contiguous blocks."""
    out = []
    for kb, yb in zip(np.array_split(k, _BLOCKS), np.array_split(y, _BLOCKS)):
        if kb.size:
            i = int(np.argmax(yb))
            out.append((kb[i], yb[i]))
    return np.array(out, dtype=float).reshape(-1, 2)


def ratio_bound_check(seq: CoefficientSequence, window: int, tol: float = RATIO_TOL,
                      margin: float = RATIO_MARGIN):
    """Ratio-bound verdict and limsup estimate of |a_{k+1}/a_k|.

    The estimate is the k -> infinity intercept of r = r_inf + c/k fitted
    to the block maxima of the ratios in the window, so ratios that creep
    down to one like (1 + 1/k)^p are recognised as bounded by g(k) -> 1.
    Returns ``(verdict, estimate)``; the estimate is NaN when inconclusive.
    """
    _check_window(seq, window)
    mag = _magnitudes(seq)
    K = seq.K
    k = np.arange(K - window, K)  # ratios a_{k+1}/a_k, 1-based k
    den = mag[k - 1]
    num = mag[k]
    ok = den > 0
    if np.count_nonzero(~ok) > window / 2:
        return "inconclusive", math.nan
    kk, r = k[ok], num[ok] / den[ok]
    pts = _block_maxima(kk, r)
    if pts.shape[0] >= 2 and np.ptp(pts[:, 0]) > 0:
        design = np.column_stack([np.ones(pts.shape[0]), 1.0 / pts[:, 0]])
        estimate = float(np.linalg.lstsq(design, pts[:, 1], rcond=None)[0][0])
    else:
        estimate = float(r.max())
    if estimate <= 1 + tol:
        return "pass", estimate
    if estimate >= 1 + margin and np.mean(r >= 1 + margin) >= 0.5:
        return "fail", estimate
    return "inconclusive", estimate


def fit_envelope(values, window: Optional[int] = None, floor: float = 0.0):
    """Fit ln|a_k| ~ lam*k + p*ln(k) + b to the window's block maxima.

    Returns ``(lam, p, b)``.  With fewer than three usable blocks the
    power is fixed at zero and ``lam`` is max ln|a_k|/k over the window.
    ``lam`` is -inf if the window holds no nonzero coefficient.
    """
    mag = _denoised(values, floor)
    K = mag.size
    window = min(window or default_window(K), K)
    k = np.arange(K - window + 1, K + 1)
    w = mag[k - 1]
    nz = w > 0
    if not np.any(nz):
        return -math.inf, 0.0, -math.inf
    kk, ly = k[nz], np.log(w[nz])
    pts = _block_maxima(kk, ly)
    if pts.shape[0] >= 3:
        design = np.column_stack([pts[:, 0], np.log(pts[:, 0]), np.ones(pts.shape[0])])
        lam, p, b = np.linalg.lstsq(design, pts[:, 1], rcond=None)[0]
        return float(lam), float(p), float(b)
    return float(np.max(ly / kk)), 0.0, float(np.max(ly))


def subexponential_check(seq: CoefficientSequence, window: int, tol: float = RATE_TOL):
    """Verdict on |a_k| e^{-Ck} -> 0 and the exponential-rate estimate.

    Separating a power of k from the exponential keeps polynomial growth
    (and a constant prefactor) out of the rate on short windows.
    """
    _check_window(seq, window)
    _magnitudes(seq)
    lam, _, _ = fit_envelope(seq.values, window, seq.tolerance)
    return ("pass" if lam <= tol else "fail"), lam


@dataclass(frozen=True)
class GrowthReport:
    ratio_condition: str
    subexp_condition: str
    exp_rate_estimate: float
    ratio_limsup_estimate: float
    bound_F: float
    evidence_window: tuple
    note: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("exp_rate_estimate", "ratio_limsup_estimate"):
            if not math.isfinite(d[key]):
                d[key] = None
        d["evidence_window"] = list(self.evidence_window)
        return d


def classify(seq: CoefficientSequence, window: Optional[int] = None, tol: float = RATE_TOL,
             ratio_tol: float = RATIO_TOL, margin: float = RATIO_MARGIN) -> GrowthReport:
    window = window or default_window(seq.K)
    _check_window(seq, window)
    span = (seq.K - window + 1, seq.K)
    try:
        ratio, r_est = ratio_bound_check(seq, window, ratio_tol, margin)
        subexp, lam = subexponential_check(seq, window, tol)
    except DegenerateSequenceError:
        # the zero function is trivially representable
        return GrowthReport("pass", "pass", -math.inf, math.nan, 0.0, span, "degenerate sequence")
    return GrowthReport(ratio, subexp, lam, r_est, bounded_check(seq), span)


def damping_profile(seq: CoefficientSequence, p: float, C: float) -> np.ndarray:
    """|a_k| k^p e^{-Ck} for k = 1..K, evaluated in log space."""
    if p <= 0 or C <= 0:
        raise ValueError("p and C must be positive")
    k = np.arange(1, seq.K + 1, dtype=float)
    mag = np.abs(seq.values)
    with np.errstate(divide="ignore"):
        logs = np.log(mag) + p * np.log(k) - C * k
    return np.where(mag > 0, np.exp(logs), 0.0)


def bounded_check(seq: CoefficientSequence) -> float:
    return float(np.max(np.abs(seq.values)))


@dataclass(frozen=True)
class ThresholdResult:
    A: float
    k_m: int
    x2: Optional[float]

    def to_dict(self) -> dict:
        return asdict(self)


def _h(A, x):
    return A * x - math.log(x)


def log_linear_threshold(A: float, scan_cap: Optional[int] = None) -> ThresholdResult:
    """Smallest integer k_m >= 1 with A*k > ln(k) for every k >= k_m.

    h(x) = A*x - ln(x) has its only minimum at x0 = 1/A with value
    1 + ln(A).  For A > 1/e it is positive everywhere; otherwise the
    larger root x2 is bracketed to the right of x0 and bisected.
    """
    if not A > 0 or not math.isfinite(A):
        raise DomainError(f"domain error: A must be a positive real, got {A}")
    if A > math.exp(-1.0):
        k_m, x2 = 1, None
    else:
        x0 = 1.0 / A
        if _h(A, x0) >= 0:
            x2 = x0  # double root, up to rounding
        else:
            lo, hi = x0, x0 * max(10.0, 2.0 / A)
            while _h(A, hi) <= 0:
                hi *= 2.0
            while hi - lo > 1e-12 * max(1.0, hi):
                mid = 0.5 * (lo + hi)
                if _h(A, mid) <= 0:
                    lo = mid
                else:
                    hi = mid
            x2 = hi
        n = math.floor(x2)
        # h < 0 only on [x1, x2]: the largest failing integer is floor(x2), if any
        k_m = n + 1 if n >= 1 and _h(A, n) <= 0 else 1
    cap = scan_cap or max(1000, 4 * k_m)
    ks = np.arange(k_m, cap + 1, dtype=float)
    if not np.all(A * ks > np.log(ks)):
        raise ArithmeticError(f"integer scan contradicts k_m={k_m} for A={A}")
    if k_m > 1 and not A * (k_m - 1) <= math.log(k_m - 1):
        raise ArithmeticError(f"k_m={k_m} is not minimal for A={A}")
    return ThresholdResult(float(A), int(k_m), x2)
