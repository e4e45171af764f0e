"""End-to-end verification suite run by ``innerfourier verify``.

Each check compares a pipeline result against an independent oracle
(closed forms, brute-force scans) at a pinned tolerance.  Output holds no
timings or other run-dependent data, so two runs serialise identically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import factorial

from .coeffs import CoefficientSequence, catalog_series, fourier_coefficients, synthetic
from .core import catalog, sample_table
from .disk import DiskPoint, compare_to_oracle, evaluate_series, reconstruct, theta_grid
from .growth import classify, log_linear_threshold
from .kernels import delta_kernel, evaluate_kernel, kernel_grid, kernel_series_consistency, reproducing_test, uniqueness_harness
from .quadrature import integrate

PI = math.pi
K_MAX = 64
GRID = 256
EXCLUSION = 0.2

TOL_SMOOTH_COEFF = 1e-10
TOL_LOG_COEFF = 1e-8
TOL_CONVERGENT = 1e-6
TOL_JUMP = 1e-3
TOL_SPOT = 1e-10
TOL_NORMALISATION = 1e-8
TOL_PEAK = 1e-12
# rounding allowance on top of the geometric tail bound
SERIES_SLACK = 1e-13
RHO_REPRODUCE = 0.999
TOL_GAP = 1e-10
TOL_DIFFERENCE = 1e-8
THRESHOLD_SCAN = 10**6


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        items = ", ".join(f"{k}={_fmt(v)}" for k, v in self.details.items())
        return f"criterion {self.number} [{status}] {self.name}: {items}"

    def to_dict(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "details": {k: _plain(v) for k, v in self.details.items()}}


def _fmt(v):
    return f"{v:.3e}" if isinstance(v, float) else str(v)


def _plain(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    v = float(v)
    return v if math.isfinite(v) else None


def coefficient_accuracy() -> CriterionResult:
    k = np.arange(1, K_MAX + 1, dtype=float)
    saw = fourier_coefficients(catalog("sawtooth"), "sine", K_MAX).values
    sq = fourier_coefficients(catalog("squarewave"), "sine", K_MAX).values
    log = fourier_coefficients(catalog("logkernel"), "cosine", K_MAX).values
    e_saw = float(np.max(np.abs(saw - 2 * (-1) ** (k + 1) / k)))
    e_sq = float(np.max(np.abs(sq - (2 / (PI * k)) * (1 - np.cos(k * PI)))))
    e_log = float(np.max(np.abs(log - 1 / k)))
    ok = e_saw <= TOL_SMOOTH_COEFF and e_sq <= TOL_SMOOTH_COEFF and e_log <= TOL_LOG_COEFF
    return CriterionResult(1, "coefficient accuracy", ok,
                           {"sawtooth_err": e_saw, "squarewave_err": e_sq, "logkernel_err": e_log})


def growth_classification() -> CriterionResult:
    k = np.arange(1, K_MAX + 1, dtype=float)
    seq = lambda v: CoefficientSequence("cosine", v)  # noqa: E731
    passing = {
        "const_1/pi": seq(np.full(K_MAX, 1 / PI)),
        "k^3": seq(k**3),
        "1/k": seq(1 / k),
        "squarewave": fourier_coefficients(catalog("squarewave"), "sine", K_MAX),
        "logkernel": fourier_coefficients(catalog("logkernel"), "cosine", K_MAX),
    }
    failing = {"2^k": seq(2.0**k), "k!": seq(factorial(k)), "e^0.1k": seq(np.exp(0.1 * k))}
    integrable = {
        "sawtooth": ("sine", catalog("sawtooth")),
        "parabola": ("cosine", catalog("parabola")),
        "cos": ("cosine", catalog("cos")),
        "sin3": ("sine", catalog("sin", 3)),
        "const": ("cosine", catalog("const", 1)),
    }
    details, ok = {}, True
    for name, s in passing.items():
        verdict = classify(s).subexp_condition
        details[name] = verdict
        ok &= verdict == "pass"
    for name, s in failing.items():
        verdict = classify(s).subexp_condition
        details[name] = verdict
        ok &= verdict == "fail"
    for name, (kind, f) in integrable.items():
        verdict = classify(fourier_coefficients(f, kind, K_MAX)).subexp_condition
        details["computed_" + name] = verdict
        ok &= verdict == "pass"
    return CriterionResult(2, "growth classification", bool(ok), details)


def threshold_scan() -> CriterionResult:
    ks = np.arange(1, THRESHOLD_SCAN + 1, dtype=float)
    logs = np.log(ks)
    details, ok = {}, True
    for label, A in (("0.01", 0.01), ("0.05", 0.05), ("0.1", 0.1), ("1/e", math.exp(-1)),
                     ("0.5", 0.5), ("2", 2.0)):
        failing = np.nonzero(A * ks <= logs)[0]
        brute = int(ks[failing[-1]]) + 1 if failing.size else 1
        got = log_linear_threshold(A).k_m
        details[f"k_m(A={label})"] = got
        ok &= got == brute
    ok &= details["k_m(A=0.1)"] == 36
    return CriterionResult(3, "logarithm threshold", bool(ok), details)


def convergent_reconstruction() -> CriterionResult:
    grid = theta_grid(GRID)
    cos_seq = fourier_coefficients(catalog("cos"), "cosine", K_MAX)
    e_cos = compare_to_oracle(reconstruct(cos_seq, grid), catalog("cos"), EXCLUSION).max_error
    log_seq = catalog_series("logkernel")
    e_log = compare_to_oracle(reconstruct(log_seq, grid), catalog("logkernel"), EXCLUSION).max_error
    ok = e_cos < TOL_CONVERGENT and e_log < TOL_CONVERGENT
    return CriterionResult(4, "reconstruction, convergent series", ok,
                           {"cos_max_err": e_cos, "logkernel_max_err": e_log})


def jump_reconstruction() -> CriterionResult:
    grid = theta_grid(GRID)
    sq = catalog("squarewave")
    err = compare_to_oracle(reconstruct(catalog_series("squarewave"), grid), sq, EXCLUSION).max_error
    computed = fourier_coefficients(sq, "sine", 256)
    spot = evaluate_series(computed, DiskPoint(0.9, PI / 2)).imag_part
    spot_err = abs(spot - (2 / PI) * math.atan(2 * 0.9 / (1 - 0.81)))
    ok = err < TOL_JUMP and spot_err <= TOL_SPOT
    return CriterionResult(5, "reconstruction, jump case", ok,
                           {"squarewave_max_err": err, "spot_rho0.9_err": spot_err})


def delta_kernel_checks() -> CriterionResult:
    details, ok = {}, True
    w0 = delta_kernel(0.0)
    for rho in (0.5, 0.9, 0.99, 0.999):
        norm = integrate(lambda t: kernel_grid(w0, rho, t)[0], singular=[0.0])
        peak = evaluate_kernel(w0, DiskPoint(rho, 0.0)).real_part
        e_norm = abs(norm - 1)
        e_peak = abs(peak - (1 + rho) / (2 * PI * (1 - rho)))
        details[f"norm_err(rho={rho})"] = e_norm
        details[f"peak_err(rho={rho})"] = e_peak
        ok &= e_norm <= TOL_NORMALISATION and e_peak <= TOL_PEAK
    worst = -math.inf
    for theta1 in (0.0, PI / 2, -2.0):
        w = delta_kernel(theta1)
        for rho in (0.0, 0.5, 0.9, 0.95):
            for K in (1, 10, 100, 512):
                for theta in (0.0, 1.0, -PI / 3):
                    diff = kernel_series_consistency(w, K, DiskPoint(rho, theta))
                    bound = rho ** (K + 1) / (PI * (1 - rho))
                    worst = max(worst, diff - bound)
    details["series_excess_over_bound"] = worst
    ok &= worst <= SERIES_SLACK
    return CriterionResult(6, "delta kernel", bool(ok), details)


def reproducing_property() -> CriterionResult:
    limit = 2 * (1 - RHO_REPRODUCE) * 2
    worst = 0.0
    for g in (catalog("cos"), catalog("sin"), catalog("cos", 2)):
        for theta1 in (0.0, PI / 4, PI / 2):
            err = abs(reproducing_test(g, theta1, RHO_REPRODUCE) - float(g(theta1)))
            worst = max(worst, err)
    return CriterionResult(7, "reproducing property", worst <= limit,
                           {"max_err": worst, "limit": limit})


def uniqueness() -> CriterionResult:
    nodes = np.union1d(np.linspace(-PI, PI, 65), [-1.0, 1.0])
    table = sample_table(nodes, np.sin(nodes), declared_parity="odd")
    sq = catalog("squarewave")
    details, ok = {}, True
    for name, f in (("table", table), ("squarewave", sq)):
        rep = uniqueness_harness(f, f.with_point_value(1.0, float(f(1.0)) + 3.0))
        details[f"{name}_gap"] = rep.max_coefficient_gap
        details[f"{name}_max_g"] = rep.max_reconstructed
        ok &= rep.max_coefficient_gap < TOL_GAP and rep.max_reconstructed < TOL_DIFFERENCE
    return CriterionResult(8, "uniqueness harness", bool(ok), details)


CHECKS = (
    coefficient_accuracy,
    growth_classification,
    threshold_scan,
    convergent_reconstruction,
    jump_reconstruction,
    delta_kernel_checks,
    reproducing_property,
    uniqueness,
)


def run_checks():
    return [check() for check in CHECKS]


def serialise(results) -> str:
    return json.dumps([r.to_dict() for r in results], indent=1, sort_keys=True) + "\n"


def run_all():
    """All checks, plus an in-process determinism check (criterion 9)."""
    first = run_checks()
    second = run_checks()
    same = serialise(first) == serialise(second)
    return first + [CriterionResult(9, "determinism", same, {"identical_reruns": same})]
