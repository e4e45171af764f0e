"""Fourier coefficient sequences and their computation by quadrature."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .core import CATALOG, PeriodicFunctionSpec
from .quadrature import QuadratureConfig, integrate, integrate_batch

__all__ = [
    "CoefficientSequence",
    "fourier_coefficients",
    "verify_zero_average",
    "absolute_mean",
    "synthetic",
    "catalog_series",
    "parse_sequence",
    "DEFAULT_K",
]

PI = math.pi
KINDS = ("cosine", "sine")
PROVENANCES = ("computed-from-function", "synthetic", "kernel-expansion", "file")
DEFAULT_K = 64
# at most this many coefficients go through one trig matrix
_BLOCK = 32


@dataclass(frozen=True, eq=False)
class CoefficientSequence:
    """Prefix a_1..a_K of a coefficient sequence.

    ``finite`` marks a trigonometric polynomial: every coefficient past K
    is zero.  ``generator`` maps an integer index array (1-based) to
    coefficient values and lets consumers extend the prefix on demand.
    ``tolerance`` is the absolute accuracy of each value (0 if exact);
    magnitudes below it are indistinguishable from zero.
    """

    kind: str
    values: np.ndarray
    provenance: str = "synthetic"
    finite: bool = False
    generator: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)
    label: str = ""
    tolerance: float = 0.0

    def __post_init__(self):
        if not self.tolerance >= 0:
            raise ValueError("tolerance must be non-negative")
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        vals = np.array(self.values, dtype=float).ravel()
        if vals.size < 1:
            raise ValueError("a coefficient sequence needs K >= 1 entries")
        if not np.all(np.isfinite(vals)):
            raise ValueError("coefficient values must all be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def K(self) -> int:
        return self.values.size

    @property
    def extendable(self) -> bool:
        return self.finite or self.generator is not None

    def extended(self, n: int) -> np.ndarray:
        """First ``n`` coefficients, generated or zero-padded past K if allowed."""
        if n <= self.K:
            return self.values[:n]
        if self.generator is not None:
            extra = np.asarray(self.generator(np.arange(self.K + 1, n + 1)), dtype=float)
            return np.concatenate([self.values, extra])
        if self.finite:
            return np.concatenate([self.values, np.zeros(n - self.K)])
        raise ValueError(f"sequence has only K={self.K} terms and no generator")

    def with_values(self, values, provenance=None, label=None) -> "CoefficientSequence":
        return CoefficientSequence(self.kind, values, provenance or self.provenance,
                                   self.finite, None, label if label is not None else self.label,
                                   self.tolerance)

    def scaled(self, c: float) -> "CoefficientSequence":
        gen = None
        if self.generator is not None:
            g = self.generator
            gen = lambda k: c * g(k)  # noqa: E731
        return CoefficientSequence(self.kind, c * self.values, self.provenance, self.finite,
                                   gen, self.label, abs(c) * self.tolerance)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "values": [float(v) for v in self.values],
             "provenance": self.provenance}
        if self.finite:
            d["finite"] = True
        if self.tolerance:
            d["tolerance"] = self.tolerance
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "CoefficientSequence":
        missing = {"kind", "values"} - set(d)
        if missing:
            raise ValueError(f"coefficient JSON missing keys: {sorted(missing)}")
        return cls(d["kind"], d["values"], d.get("provenance", "file"), bool(d.get("finite", False)),
                   tolerance=float(d.get("tolerance", 0.0)))

    @classmethod
    def from_json(cls, text: str) -> "CoefficientSequence":
        return cls.from_dict(json.loads(text))


def _block_coefficients(f, kind, ks, cfg):
    trig = np.cos if kind == "cosine" else np.sin

    def modulate(x):
        return trig(np.outer(ks, x))

    # start with panels two periods of the highest harmonic wide; the
    # doubling check in integrate_batch refines from there
    raw = integrate_batch(f, modulate, breakpoints=f.breakpoints, singular=f.singular_points,
                          cfg=cfg, n_panels=math.ceil(ks[-1] / 2))
    return raw / PI


def fourier_coefficients(
    f: PeriodicFunctionSpec,
    kind: str,
    K: int = DEFAULT_K,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> CoefficientSequence:
    """a_k = (1/pi) * integral of f(t) cos(kt) (or sin(kt)) dt for k = 1..K."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if K < 1:
        raise ValueError("K must be at least 1")
    out = np.empty(K)
    for start in range(1, K + 1, _BLOCK):
        ks = np.arange(start, min(start + _BLOCK, K + 1))
        out[start - 1:start - 1 + ks.size] = _block_coefficients(f, kind, ks, cfg)
    return CoefficientSequence(kind, out, "computed-from-function", label=f.label, tolerance=cfg.tol)


def verify_zero_average(f: PeriodicFunctionSpec, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """(1/pi) * integral of f over the period; ~0 for a zero-average function."""
    return integrate(f, breakpoints=f.breakpoints, singular=f.singular_points, cfg=cfg) / PI


def _sign_changes(f, n=4096):
    """Zeros of f located from sign changes on a cell-centred scan grid."""
    t = -PI + (np.arange(n) + 0.5) * (2 * PI / n)
    y = f(t)
    roots = []
    for i in np.nonzero(np.sign(y[:-1]) * np.sign(y[1:]) < 0)[0]:
        try:
            roots.append(brentq(lambda x: float(f(np.array([x]))[0]), t[i], t[i + 1], xtol=1e-15))
        except ValueError:  # a jump rather than a zero
            pass
    return tuple(roots)


def absolute_mean(f: PeriodicFunctionSpec, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """F = (1/pi) * integral of |f|, the bound on every |a_k| of an integrable f.

    |f| has kinks at the zeros of f; they are located and used as panel
    breakpoints so the quadrature stays at full order.
    """
    cuts = tuple(f.breakpoints) + _sign_changes(f)
    return integrate(lambda t: np.abs(f(t)), breakpoints=cuts,
                     singular=f.singular_points, cfg=cfg) / PI


# -- synthetic and closed-form sequences -------------------------------------------

def _const(c):
    return lambda k: np.full(np.shape(k), float(c))


def _power(p):
    return lambda k: np.asarray(k, dtype=float) ** p


def _geometric(r):
    def gen(k):
        with np.errstate(over="ignore"):  # r > 1 overflows for large k; inf is the honest value
            return float(r) ** np.asarray(k, dtype=float)
    return gen


_SYNTHETIC = {
    "const": lambda c: _const(c),
    "power": lambda p: _power(p),
    "inv-power": lambda p: _power(-p),
    "geometric": lambda r: _geometric(r),
    "delta-taylor": lambda: _const(1.0 / PI),
}


def synthetic(name: str, *params: float, K: int = DEFAULT_K, kind: str = "cosine") -> CoefficientSequence:
    """Generator-backed sequence from the ``--seq`` grammar (without ``file:``)."""
    try:
        make = _SYNTHETIC[name]
    except KeyError:
        raise ValueError(f"unknown synthetic sequence {name!r}; known: {sorted(_SYNTHETIC)}") from None
    gen = make(*params)
    label = name + "".join(f":{p:g}" for p in params)
    return CoefficientSequence(kind, gen(np.arange(1, K + 1)), "synthetic", False, gen, label)


def _odd_only(k, num):
    k = np.asarray(k, dtype=float)
    return np.where(k % 2 == 1, num / k, 0.0)


# closed-form coefficients of the catalog entries: (kind, generator or None, finite terms)
def _closed_form(name, params):
    if name == "squarewave":
        return "sine", lambda k: _odd_only(k, 4.0 / PI)
    if name == "sawtooth":
        return "sine", lambda k: 2.0 * (-1.0) ** (np.asarray(k) + 1) / np.asarray(k, dtype=float)
    if name == "logkernel":
        return "cosine", lambda k: 1.0 / np.asarray(k, dtype=float)
    if name == "parabola":
        return "cosine", lambda k: 4.0 * (-1.0) ** np.asarray(k) / np.asarray(k, dtype=float) ** 2
    if name in ("cos", "sin"):
        n = params[0] if params else 1.0
        if n != int(n) or n < 1:
            raise ValueError(f"{name}:{n:g} has no finite coefficient sequence")
        return ("cosine" if name == "cos" else "sine"), int(n)
    if name == "const":
        return "cosine", 0
    raise ValueError(f"no closed-form series for {name!r}")


def catalog_series(name: str, *params: float, K: int = DEFAULT_K) -> CoefficientSequence:
    """Exact coefficient sequence of a catalog function (zero-average part)."""
    if name not in CATALOG:
        raise ValueError(f"unknown catalog function {name!r}")
    kind, spec = _closed_form(name, params)
    label = "series:" + name + "".join(f":{p:g}" for p in params)
    if isinstance(spec, int):
        vals = np.zeros(max(K, spec, 1))
        if spec:
            vals[spec - 1] = 1.0
        return CoefficientSequence(kind, vals, "synthetic", True, None, label)
    return CoefficientSequence(kind, spec(np.arange(1, K + 1)), "synthetic", False, spec, label)


def parse_sequence(text: str, K: int = DEFAULT_K, kind: str = "cosine") -> CoefficientSequence:
    """Parse the ``--seq`` grammar.

    ``const:c``, ``power:p``, ``inv-power:p``, ``geometric:r``,
    ``delta-taylor``, ``series:<catalog id>`` and ``file:<path>``.
    """
    text = text.strip()
    if text.startswith("file:"):
        return CoefficientSequence.from_json(Path(text[5:]).read_text())
    name, *rest = text.split(":")
    if name == "series":
        if not rest:
            raise ValueError("series: needs a catalog id")
        return catalog_series(rest[0], *(float(p) for p in rest[1:]), K=K)
    return synthetic(name, *(float(p) for p in rest), K=K, kind=kind)
