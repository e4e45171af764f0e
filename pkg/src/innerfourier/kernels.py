"""Delta kernel w(z) = 1/(2pi) - (1/pi) z/(z - z1) and completeness checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coeffs import CoefficientSequence, fourier_coefficients
from .core import PeriodicFunctionSpec
from .disk import DiskPoint, InnerAnalyticEvaluation, LadderConfig, horner, reconstruct, theta_grid
from .errors import DomainError, ParityError
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "ExtendedInnerAnalytic",
    "delta_kernel",
    "evaluate_kernel",
    "kernel_grid",
    "poisson_kernel",
    "kernel_coefficients",
    "kernel_series_consistency",
    "completeness_partial_sum",
    "reproducing_test",
    "UniquenessReport",
    "uniqueness_harness",
]

PI = math.pi


@dataclass(frozen=True)
class ExtendedInnerAnalytic:
    theta1: float
    additive_constant: float
    tag: str = "delta-kernel"

    def __post_init__(self):
        if not -PI <= self.theta1 <= PI:
            raise DomainError(f"theta1={self.theta1} outside [-pi, pi]")


def delta_kernel(theta1: float) -> ExtendedInnerAnalytic:
    """Kernel with a simple pole at exp(i*theta1) on the unit circle."""
    return ExtendedInnerAnalytic(float(theta1), 1.0 / (2 * PI))


def _parts(w, rho, theta):
    phi = np.asarray(theta, dtype=float) - w.theta1
    # 1 - 2 rho cos(phi) + rho^2 without cancellation near the pole
    denom = (1.0 - rho) ** 2 + 4.0 * rho * np.sin(0.5 * phi) ** 2
    real = w.additive_constant * (1.0 - rho) * (1.0 + rho) / denom
    imag = rho * np.sin(phi) / (PI * denom)
    return real, imag


def poisson_kernel(rho, phi):
    return (1.0 - rho) * (1.0 + rho) / (2 * PI * ((1.0 - rho) ** 2 + 4.0 * rho * np.sin(0.5 * phi) ** 2))


def evaluate_kernel(w: ExtendedInnerAnalytic, p: DiskPoint) -> InnerAnalyticEvaluation:
    """Closed-form value; the real part is the Poisson kernel."""
    if w.tag != "delta-kernel":
        raise ValueError(f"unsupported closed form {w.tag!r}")
    re, im = _parts(w, p.rho, p.theta)
    return InnerAnalyticEvaluation(float(re), float(im), 0, 0.0)


def kernel_grid(w: ExtendedInnerAnalytic, rho: float, thetas):
    """(Re, Im) arrays of the kernel on a circle of radius rho."""
    if not 0 <= rho < 1:
        raise DomainError(f"domain error: open disk only (rho={rho})")
    return _parts(w, rho, thetas)


def kernel_coefficients(K: int) -> CoefficientSequence:
    """Taylor coefficients a_k = 1/pi of the non-constant part for theta1 = 0."""
    return CoefficientSequence("cosine", np.full(K, 1.0 / PI), "kernel-expansion",
                               generator=lambda k: np.full(np.shape(k), 1.0 / PI),
                               label="delta-taylor")


def kernel_series_consistency(w: ExtendedInnerAnalytic, K: int, p: DiskPoint) -> float:
    """|closed form - K-term Taylor sum| at p.

    The expansion about the pole direction is 1/(2pi) + sum (1/pi) zeta^k
    with zeta = z / z1, so the real sequence a_k = 1/pi is evaluated at the
    rotated angle theta - theta1.
    """
    exact = evaluate_kernel(w, p)
    zeta = p.rho * np.exp(1j * (p.theta - w.theta1))
    series = w.additive_constant + complex(horner(np.full(K, 1.0 / PI), zeta))
    return abs(complex(exact.real_part, exact.imag_part) - series)


def completeness_partial_sum(theta, theta1: float, n: int):
    """Dirichlet partial sum 1/(2pi) + (1/pi) sum_{k<=n} cos(k(theta - theta1)).

    For demonstration only: this does not converge pointwise as n grows.
    """
    phi = np.asarray(theta, dtype=float) - theta1
    k = np.arange(1, n + 1)
    return 1.0 / (2 * PI) + np.cos(np.multiply.outer(phi, k)).sum(axis=-1) / PI


def reproducing_test(g: PeriodicFunctionSpec, theta1: float, rho: float,
                     cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Integral of g(theta) * Re w_delta(rho e^{i theta}); tends to g(theta1) as rho -> 1."""
    if not 0 <= rho < 1:
        raise DomainError(f"domain error: open disk only (rho={rho})")
    w = delta_kernel(theta1)
    # the kernel peaks at theta1: refine toward it like a singular point
    refine = set(g.singular_points) | {float(theta1)}
    return integrate(lambda t: g(t) * _parts(w, rho, t)[0], breakpoints=g.breakpoints,
                     singular=refine, cfg=cfg)


@dataclass(frozen=True)
class UniquenessReport:
    kind: str
    max_coefficient_gap: float
    first_coefficient_gap: float
    coefficients_agree: bool
    max_reconstructed: float
    reconstructed: bool

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        if not math.isfinite(d["max_reconstructed"]):
            d["max_reconstructed"] = None
        return d


def _kind_for(f):
    if f.declared_parity == "even":
        return "cosine"
    if f.declared_parity == "odd":
        return "sine"
    raise ParityError(f"parity error: {f.label or 'function'} has no definite parity")


def uniqueness_harness(f1: PeriodicFunctionSpec, f2: PeriodicFunctionSpec, K: int = 64,
                       cfg: QuadratureConfig = QuadratureConfig(), grid: int = 256,
                       ladder: LadderConfig = LadderConfig()) -> UniquenessReport:
    """Compare the coefficients of f1 and f2; if they agree, rebuild g = f1 - f2.

    When all K coefficients agree within ``cfg.tol``, the difference
    sequence is reconstructed on the grid and its largest magnitude is
    reported (it should vanish).
    """
    kind = _kind_for(f1)
    if _kind_for(f2) != kind:
        raise ParityError("parity error: f1 and f2 have opposite parities")
    c1 = fourier_coefficients(f1, kind, K, cfg)
    c2 = fourier_coefficients(f2, kind, K, cfg)
    gap = np.abs(c1.values - c2.values)
    agree = bool(gap.max() <= cfg.tol)
    max_g = math.nan
    if agree:
        diff = c1.with_values(c1.values - c2.values, "computed-from-function", "difference")
        r = reconstruct(diff, theta_grid(grid), ladder, force=True)
        max_g = float(np.max(np.abs(r.values)))
    return UniquenessReport(kind, float(gap.max()), float(gap[0]), agree, max_g, agree)
