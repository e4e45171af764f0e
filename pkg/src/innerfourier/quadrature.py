"""Composite Gauss-Legendre quadrature on [-pi, pi] with dyadic refinement.

Every integral in the package goes through :func:`integrate_batch`. The
interval is cut at the caller's breakpoints, each piece is covered by
uniform panels, and the panel touching a declared singular point is
replaced by a geometric ladder of panels whose widths halve toward the
point.  The ladder is cut at ``depth`` levels and the remaining piece is
estimated from the geometric decay of the last level contributions, which
makes integrable endpoint singularities (log, inverse square root) cheap
while a non-integrable one (1/x) shows up as a ladder whose contributions
do not decay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import QuadratureError

__all__ = ["QuadratureConfig", "integrate", "integrate_batch", "cut_points"]

_PI = math.pi


@dataclass(frozen=True)
class QuadratureConfig:
    """Controls for the panel quadrature.

    ``panels`` is the base number of panels over the full period; it is
    raised by the callers to keep oscillatory integrands resolved.
    """

    panels: int = 16
    depth: int = 40
    tol: float = 1e-10
    order: int = 16
    max_doublings: int = 8

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.panels < 8:
            raise ValueError("panel count must be at least 8")
        if self.depth < 0:
            raise ValueError("refinement depth must be non-negative")
        if self.order < 2:
            raise ValueError("Gauss-Legendre order must be at least 2")


@lru_cache(maxsize=16)
def _gauss_legendre(order):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def cut_points(points: Iterable[float], lo: float = -_PI, hi: float = _PI) -> np.ndarray:
    """Sorted, de-duplicated cut points inside [lo, hi], endpoints included."""
    pts = [lo, hi]
    for p in points:
        p = float(p)
        if lo <= p <= hi:
            pts.append(p)
    pts = np.unique(np.asarray(pts, dtype=float))
    keep = np.concatenate(([True], np.diff(pts) > 1e-14 * max(1.0, abs(hi - lo))))
    return pts[keep]


def _periodic_singular(singular, lo, hi):
    sing = {float(s) for s in singular}
    # a singularity at one end of the period sits at the other end too
    if lo == -_PI and hi == _PI and (_PI in sing or -_PI in sing):
        sing.update((_PI, -_PI))
    return sing


@dataclass(frozen=True)
class _Rule:
    x: np.ndarray
    w: np.ndarray
    # one (nodes, weights) pair of shape (levels, order) per singular side
    ladders: tuple


def _build_rule(cuts, singular, n_panels, order, depth):
    gx, gw = _gauss_legendre(order)
    span = cuts[-1] - cuts[0]
    xs, ws, ladders = [], [], []
    floor_eps = 32 * np.finfo(float).eps
    for a, b in zip(cuts[:-1], cuts[1:]):
        left, right = a in singular, b in singular
        m = max(1, math.ceil(n_panels * (b - a) / span))
        if left and right:
            m = max(m, 2)
        edges = np.linspace(a, b, m + 1)
        lo_edges, hi_edges = edges[:-1], edges[1:]
        if left:
            lo_edges, hi_edges = lo_edges[1:], hi_edges[1:]
        if right:
            lo_edges, hi_edges = lo_edges[:-1], hi_edges[:-1]
        half = 0.5 * (hi_edges - lo_edges)
        mid = 0.5 * (hi_edges + lo_edges)
        xs.append((mid[:, None] + half[:, None] * gx).ravel())
        ws.append((half[:, None] * gw).ravel())
        h = (b - a) / m
        for end, sign in ((a, 1.0), (b, -1.0)):
            if (end == a and not left) or (end == b and not right):
                continue
            floor = floor_eps * max(1.0, abs(end))
            widths = []
            for j in range(depth):
                inner = h / 2.0 ** (j + 1)
                if inner < floor:
                    break
                widths.append((inner, h / 2.0**j))
            if not widths:
                continue
            inner = np.array([p for p, _ in widths])
            outer = np.array([q for _, q in widths])
            lhalf = 0.5 * (outer - inner)
            lmid = end + sign * 0.5 * (outer + inner)
            ladders.append((lmid[:, None] + lhalf[:, None] * gx, lhalf[:, None] * gw))
    x = np.concatenate(xs) if xs else np.empty(0)
    w = np.concatenate(ws) if ws else np.empty(0)
    return _Rule(x, w, tuple(ladders))


def _ladder_sum(c, tol):
    """Sum ladder contributions ``c`` (shape (m, levels)) plus a geometric tail.

    Returns the estimates and the change between the last two estimates.
    """
    levels = c.shape[-1]
    s = np.cumsum(c, axis=-1)
    if levels < 2:
        return s[..., -1], np.zeros(c.shape[0])
    with np.errstate(divide="ignore", invalid="ignore"):
        r = c[:, 1:] / c[:, :-1]
        tail = np.where((r >= 0) & (r < 1), c[:, 1:] * r / (1 - r), 0.0)
    est = s[:, 1:] + np.nan_to_num(tail)
    if levels < 3:
        return est[:, -1], np.abs(c[:, -1])
    return est[:, -1], np.abs(est[:, -1] - est[:, -2])


def _apply(rule, func, modulate, tol):
    fx = func(rule.x)
    mod = modulate(rule.x)
    total = mod @ (rule.w * fx)
    for lx, lw in rule.ladders:
        flat = lx.ravel()
        fv = func(flat) * lw.ravel()
        mv = modulate(flat) * fv
        c = mv.reshape(mv.shape[0], *lx.shape).sum(axis=-1)
        est, change = _ladder_sum(c, tol)
        if not np.all(np.isfinite(est)) or np.max(change) > tol:
            raise QuadratureError(
                "improper integral did not converge: ladder estimates still "
                f"change by {float(np.max(change)):.3e} at the refinement depth"
            )
        total = total + est
    return total


def _ones(x):
    return np.ones((1, x.size))


def integrate_batch(
    func: Callable[[np.ndarray], np.ndarray],
    modulate: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    *,
    breakpoints: Iterable[float] = (),
    singular: Iterable[float] = (),
    cfg: QuadratureConfig = QuadratureConfig(),
    n_panels: Optional[int] = None,
    lo: float = -_PI,
    hi: float = _PI,
) -> np.ndarray:
    """Integrate ``func(x) * modulate(x)[i]`` over [lo, hi] for every row i.

    ``modulate`` maps nodes of shape (n,) to an array of shape (m, n).  The
    panel count is doubled until two successive results agree within
    ``cfg.tol`` for every row.
    """
    modulate = modulate or _ones
    sing = _periodic_singular(singular, lo, hi)
    cuts = cut_points(list(breakpoints) + sorted(sing), lo, hi)
    n = max(cfg.panels, int(n_panels or 0))
    with np.errstate(divide="ignore", invalid="ignore"):
        prev = _apply(_build_rule(cuts, sing, n, cfg.order, cfg.depth), func, modulate, cfg.tol)
        change = np.inf
        for _ in range(cfg.max_doublings):
            n *= 2
            cur = _apply(_build_rule(cuts, sing, n, cfg.order, cfg.depth), func, modulate, cfg.tol)
            change = float(np.max(np.abs(cur - prev)))
            prev = cur
            if change <= cfg.tol:
                return cur
    raise QuadratureError(
        f"quadrature did not reach tolerance {cfg.tol:g} (last change {change:.3e})"
    )


def integrate(func, *, breakpoints=(), singular=(), cfg=QuadratureConfig(), n_panels=None,
              lo=-_PI, hi=_PI) -> float:
    """Scalar convenience wrapper around :func:`integrate_batch`."""
    return float(
        integrate_batch(func, None, breakpoints=breakpoints, singular=singular, cfg=cfg,
                        n_panels=n_panels, lo=lo, hi=hi)[0]
    )
