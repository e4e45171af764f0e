"""Real functions on [-pi, pi]: catalog entries, sample tables, parity split."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .errors import DomainError, SingularPointError
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "CatalogSource",
    "SampleTable",
    "Combination",
    "PeriodicFunctionSpec",
    "ParityPair",
    "catalog",
    "parse_function",
    "sample_table",
    "evaluate_spec",
    "split_parity",
    "remove_mean",
    "mean_value",
    "combine",
    "CATALOG",
]

PI = math.pi
PARITIES = ("even", "odd", "none")


def _square(t):
    return np.sign(t)


def _sawtooth(t):
    # midpoint of the jump at the period ends
    return np.where(np.abs(t) == PI, 0.0, t)


def _logkernel(t):
    return -np.log(2.0 * np.abs(np.sin(0.5 * t)))


@dataclass(frozen=True)
class _Entry:
    func: Callable[..., np.ndarray]
    parity: str
    singular: tuple = ()
    jumps: tuple = ()
    nparams: int = 0
    defaults: tuple = ()


CATALOG = {
    "squarewave": _Entry(_square, "odd", jumps=(-PI, 0.0, PI)),
    "sawtooth": _Entry(_sawtooth, "odd", jumps=(-PI, PI)),
    "cos": _Entry(lambda t, n: np.cos(n * t), "even", nparams=1, defaults=(1.0,)),
    "sin": _Entry(lambda t, n: np.sin(n * t), "odd", nparams=1, defaults=(1.0,)),
    "logkernel": _Entry(_logkernel, "even", singular=(0.0,)),
    "const": _Entry(lambda t, c: np.full_like(t, c, dtype=float), "even", nparams=1, defaults=(1.0,)),
    "parabola": _Entry(lambda t: t * t, "even"),
}


@dataclass(frozen=True)
class CatalogSource:
    name: str
    params: tuple = ()


@dataclass(frozen=True)
class SampleTable:
    theta: tuple
    values: tuple


@dataclass(frozen=True)
class Combination:
    """``constant + sum(c * f(+-theta))`` over ``terms = ((c, f, reflect), ...)``."""

    terms: tuple
    constant: float = 0.0


Source = Union[CatalogSource, SampleTable, Combination]


@dataclass(frozen=True)
class PeriodicFunctionSpec:
    """A real function on [-pi, pi].

    ``singular_points`` are angles where the function is declared unbounded;
    ``jumps`` are finite discontinuities.  Both are used as quadrature
    breakpoints and as exclusion centres when comparing reconstructions.
    ``point_values`` overrides the value at isolated angles (a measure-zero
    change).
    """

    source: Source
    singular_points: tuple = ()
    declared_parity: str = "none"
    jumps: tuple = ()
    point_values: tuple = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        for s in self.singular_points:
            if not -PI <= s <= PI:
                raise DomainError(f"singular point {s} outside [-pi, pi]")
        if len(set(self.singular_points)) != len(self.singular_points):
            raise ValueError("singular points must be pairwise distinct")
        if self.declared_parity not in PARITIES:
            raise ValueError(f"parity must be one of {PARITIES}")

    def __call__(self, theta):
        """Vectorised evaluation without domain or singularity checks."""
        theta = np.asarray(theta, dtype=float)
        out = _eval_source(self.source, theta)
        for t0, v in self.point_values:
            out = np.where(theta == t0, v, out)
        return out

    @property
    def breakpoints(self) -> tuple:
        pts = set(self.jumps) | set(self.singular_points)
        if isinstance(self.source, SampleTable):
            pts.update(self.source.theta)
        if isinstance(self.source, Combination):
            for _, f, reflect in self.source.terms:
                pts.update(-p if reflect else p for p in f.breakpoints)
        return tuple(sorted(pts))

    def with_point_value(self, theta: float, value: float) -> "PeriodicFunctionSpec":
        pv = tuple((t, v) for t, v in self.point_values if t != theta) + ((float(theta), float(value)),)
        return PeriodicFunctionSpec(self.source, self.singular_points, self.declared_parity,
                                    self.jumps, pv, self.label)


def _eval_source(src, theta):
    if isinstance(src, CatalogSource):
        return np.asarray(CATALOG[src.name].func(theta, *src.params), dtype=float)
    if isinstance(src, SampleTable):
        return np.interp(theta, src.theta, src.values)
    out = np.full(theta.shape, src.constant, dtype=float)
    for c, f, reflect in src.terms:
        out = out + c * f(-theta if reflect else theta)
    return out


def catalog(name: str, *params: float) -> PeriodicFunctionSpec:
    try:
        entry = CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown catalog function {name!r}; known: {sorted(CATALOG)}") from None
    if len(params) > entry.nparams:
        raise ValueError(f"{name} takes at most {entry.nparams} parameter(s)")
    params = tuple(float(p) for p in params) + entry.defaults[len(params):]
    label = name if not params else name + ":" + ":".join(f"{p:g}" for p in params)
    return PeriodicFunctionSpec(CatalogSource(name, params), entry.singular, entry.parity,
                                entry.jumps, label=label)


def parse_function(text: str) -> PeriodicFunctionSpec:
    """Parse ``name`` or ``name:param`` into a catalog spec (e.g. ``const:1``)."""
    name, *params = text.strip().split(":")
    return catalog(name, *(float(p) for p in params))


def sample_table(theta, values, singular_points=(), declared_parity="none") -> PeriodicFunctionSpec:
    theta = np.asarray(theta, dtype=float)
    values = np.asarray(values, dtype=float)
    if theta.ndim != 1 or theta.shape != values.shape or theta.size < 2:
        raise ValueError("sample table needs matching 1-d theta and value arrays")
    if np.any(np.diff(theta) <= 0):
        raise ValueError("sample table theta must be strictly increasing")
    if theta[0] > -PI or theta[-1] < PI:
        raise ValueError("sample table must cover [-pi, pi]")
    if not np.all(np.isfinite(values)):
        raise ValueError("sample table values must be finite")
    return PeriodicFunctionSpec(SampleTable(tuple(theta.tolist()), tuple(values.tolist())),
                                tuple(singular_points), declared_parity, label="table")


def evaluate_spec(f: PeriodicFunctionSpec, theta: float) -> float:
    theta = float(theta)
    if not -PI <= theta <= PI:
        raise DomainError(f"domain error: theta={theta} outside [-pi, pi]")
    if theta in f.singular_points or (abs(theta) == PI and PI in map(abs, f.singular_points)):
        raise SingularPointError(f"singular-point evaluation at theta={theta}")
    return float(f(np.array([theta]))[0])


def mean_value(f: PeriodicFunctionSpec, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Average value (1/2pi) * integral of f over the period."""
    return integrate(f, breakpoints=f.breakpoints, singular=f.singular_points, cfg=cfg) / (2 * PI)


def _reflected(points):
    return tuple(sorted(set(points) | {-p for p in points}))


@dataclass(frozen=True)
class ParityPair:
    even_part: PeriodicFunctionSpec
    odd_part: PeriodicFunctionSpec
    mean: float


def split_parity(f: PeriodicFunctionSpec, cfg: QuadratureConfig = QuadratureConfig()) -> ParityPair:
    """Split f into a zero-average even part, an odd part and the mean."""
    mean = mean_value(f, cfg)
    sing = _reflected(f.singular_points)
    jumps = _reflected(f.jumps)
    even = PeriodicFunctionSpec(Combination(((0.5, f, False), (0.5, f, True)), -mean),
                                sing, "even", jumps, label=f"even({f.label})")
    odd = PeriodicFunctionSpec(Combination(((0.5, f, False), (-0.5, f, True))),
                               sing, "odd", jumps, label=f"odd({f.label})")
    return ParityPair(even, odd, mean)


def remove_mean(f: PeriodicFunctionSpec, cfg: QuadratureConfig = QuadratureConfig()) -> PeriodicFunctionSpec:
    mean = mean_value(f, cfg)
    return PeriodicFunctionSpec(Combination(((1.0, f, False),), -mean), f.singular_points,
                                f.declared_parity, f.jumps, label=f"{f.label}-mean")


def combine(*terms, constant: float = 0.0) -> PeriodicFunctionSpec:
    """Linear combination ``constant + sum(c * f)`` of ``(c, f)`` pairs."""
    parities = {f.declared_parity for _, f in terms}
    if constant != 0:
        parities.add("even")
    parity = parities.pop() if len(parities) == 1 else "none"
    sing = tuple(sorted({s for _, f in terms for s in f.singular_points}))
    jumps = tuple(sorted({j for _, f in terms for j in f.jumps}))
    return PeriodicFunctionSpec(Combination(tuple((float(c), f, False) for c, f in terms), constant),
                                sing, parity, jumps, label="combination")
