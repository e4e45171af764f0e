"""Batch command-line interface.

Every subcommand reads its parameters from flags or from a JSON config
file (``--config``; flags win), writes its results into the ``--out``
directory and prints a short summary.  Exit codes: 0 success, 1 error,
2 refusal by the growth gate in ``reconstruct``/``conjugate``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

import numpy as np

from .coeffs import CoefficientSequence, DEFAULT_K, fourier_coefficients, parse_sequence
from .core import PeriodicFunctionSpec, parse_function, sample_table, split_parity
from .disk import LadderConfig, compare_to_oracle, conjugate_reconstruct, reconstruct, theta_grid
from .errors import GrowthGateError, InnerFourierError
from .growth import classify, log_linear_threshold
from .kernels import delta_kernel, kernel_grid
from .quadrature import QuadratureConfig

SUBCOMMANDS = ("decompose", "coeffs", "classify", "threshold", "reconstruct", "conjugate",
               "kernel", "verify")


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one CLI run, merged from the config file and flags."""

    command: str
    fn: Optional[str] = None
    table: Optional[str] = None
    seq: Optional[str] = None
    kind: Optional[str] = None
    K: int = DEFAULT_K
    grid: int = 256
    ladder_depth: int = 10
    tol: float = 1e-6
    quad_tol: float = 1e-10
    exclude_radius: float = 0.2
    out: str = "."
    force: bool = False
    theta: Optional[str] = None
    rho: float = 0.9
    theta1: float = 0.0
    A: Optional[float] = None
    window: Optional[int] = None

    def __post_init__(self):
        if self.command not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.command!r}")
        if self.grid < 16:
            raise ValueError(f"grid size must be >= 16 (got {self.grid})")
        if self.K < 1:
            raise ValueError("K must be at least 1")
        if not (self.tol > 0 and self.quad_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.exclude_radius < 0:
            raise ValueError("exclusion radius must be non-negative")
        if self.kind not in (None, "cosine", "sine"):
            raise ValueError("kind must be cosine or sine")
        if self.fn and self.table:
            raise ValueError("give either --fn or --table, not both")

    @property
    def ladder(self) -> LadderConfig:
        return LadderConfig(depth=self.ladder_depth, tol=self.tol)

    @property
    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(tol=self.quad_tol)

    def thetas(self) -> np.ndarray:
        if self.theta is None:
            return theta_grid(self.grid)
        return np.array([float(t) for t in str(self.theta).split(",")])


# -- helpers ---------------------------------------------------------------------

def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _write_csv(path: Path, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    path.write_text(buf.getvalue(), encoding="utf-8")


def _write_json(path: Path, obj):
    path.write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n", encoding="utf-8")


def _out_dir(cfg) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def load_table(path) -> PeriodicFunctionSpec:
    """Sample table from JSON: {"theta": [...], "values": [...]} or {"points": [[t, v], ...]}.

    Optional keys: "singular_points" and "parity" ("even", "odd", "none").
    """
    data = json.loads(Path(path).read_text())
    if "points" in data:
        pts = np.asarray(data["points"], dtype=float)
        theta, values = pts[:, 0], pts[:, 1]
    else:
        theta, values = data["theta"], data["values"]
    return sample_table(theta, values, tuple(data.get("singular_points", ())),
                        data.get("parity", "none"))


def _function(cfg) -> PeriodicFunctionSpec:
    if cfg.table:
        return load_table(cfg.table)
    if cfg.fn:
        return parse_function(cfg.fn)
    raise ValueError(f"{cfg.command} needs --fn or --table")


def _kind_for(cfg, f) -> str:
    if cfg.kind:
        return cfg.kind
    if f.declared_parity == "even":
        return "cosine"
    if f.declared_parity == "odd":
        return "sine"
    raise ValueError(f"{f.label} has no definite parity; pass --kind (or decompose it first)")


def _sequence(cfg) -> CoefficientSequence:
    if cfg.seq:
        return parse_sequence(cfg.seq, cfg.K, cfg.kind or "cosine")
    f = _function(cfg)
    return fourier_coefficients(f, _kind_for(cfg, f), cfg.K, cfg.quadrature)


# -- subcommands -----------------------------------------------------------------

def cmd_decompose(cfg) -> int:
    f = _function(cfg)
    pair = split_parity(f, cfg.quadrature)
    t = cfg.thetas()
    out = _out_dir(cfg)
    _write_csv(out / "decompose.csv", ["theta", "f", "even", "odd"],
               zip(t, f(t), pair.even_part(t), pair.odd_part(t)))
    _write_json(out / "decompose.json", {"function": f.label, "mean": pair.mean, "grid": int(t.size)})
    print(f"mean {pair.mean:.17g}")
    return 0


def cmd_coeffs(cfg) -> int:
    seq = _sequence(cfg)
    (_out_dir(cfg) / "coeffs.json").write_text(seq.to_json(), encoding="utf-8")
    print(f"{seq.kind} coefficients a_1..a_{seq.K} ({seq.provenance})")
    return 0


def cmd_classify(cfg) -> int:
    seq = _sequence(cfg)
    report = classify(seq, cfg.window)
    _write_json(_out_dir(cfg) / "classify.json", report.to_dict())
    print(f"ratio {report.ratio_condition}, subexp {report.subexp_condition}, "
          f"rate {report.exp_rate_estimate:.4g}")
    return 0


def cmd_threshold(cfg) -> int:
    if cfg.A is None:
        raise ValueError("threshold needs --A")
    res = log_linear_threshold(cfg.A)
    _write_json(_out_dir(cfg) / "threshold.json", res.to_dict())
    print(f"k_m {res.k_m}")
    return 0


def _reconstruct_cmd(cfg, conjugate: bool) -> int:
    seq = _sequence(cfg)
    run = conjugate_reconstruct if conjugate else reconstruct
    result = run(seq, cfg.thetas(), cfg.ladder, force=cfg.force)
    name = "conjugate" if conjugate else "reconstruct"
    out = _out_dir(cfg)
    (out / f"{name}.csv").write_text(result.to_csv(), encoding="utf-8")
    summary = result.to_dict()
    oracle = cfg.fn or cfg.table
    if oracle and not conjugate:
        stats = compare_to_oracle(result, _function(cfg), cfg.exclude_radius)
        summary["oracle"] = {"max_error": stats.max_error, "mean_error": stats.mean_error,
                             "n_points": stats.n_points}
        print(f"max error {stats.max_error:.3e} over {stats.n_points} points")
    _write_json(out / f"{name}.json", summary)
    print(f"{int(np.count_nonzero(result.converged))}/{result.theta.size} points converged")
    return 0


def cmd_reconstruct(cfg) -> int:
    return _reconstruct_cmd(cfg, conjugate=False)


def cmd_conjugate(cfg) -> int:
    return _reconstruct_cmd(cfg, conjugate=True)


def cmd_kernel(cfg) -> int:
    t = cfg.thetas()
    re, im = kernel_grid(delta_kernel(cfg.theta1), cfg.rho, t)
    _write_csv(_out_dir(cfg) / "kernel.csv", ["theta", "re", "im"], zip(t, re, im))
    print(f"kernel grid of {t.size} points at rho={cfg.rho:g}")
    return 0


def cmd_verify(cfg) -> int:
    from .verify import run_all, serialise

    results = run_all()
    (_out_dir(cfg) / "verify.json").write_text(serialise(results), encoding="utf-8")
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {name: globals()[f"cmd_{name}"] for name in SUBCOMMANDS}


# -- argument handling -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="innerfourier",
                                     description="Recover functions from Fourier coefficients "
                                                 "through inner analytic functions.")
    parser.add_argument("command", choices=SUBCOMMANDS)
    parser.add_argument("--config", help="JSON file with parameters (flag names, '-' as '_')")
    parser.add_argument("--fn", help="catalog function, e.g. squarewave or cos:2")
    parser.add_argument("--table", help="JSON sample table")
    parser.add_argument("--seq", help="sequence: const:c, power:p, inv-power:p, geometric:r, "
                                      "delta-taylor, series:<id>, file:<path>")
    parser.add_argument("--kind", choices=("cosine", "sine"))
    parser.add_argument("--K", type=int)
    parser.add_argument("--grid", type=int)
    parser.add_argument("--ladder-depth", type=int)
    parser.add_argument("--rho-max", help="ladder depth as j=N (alias of --ladder-depth)")
    parser.add_argument("--tol", type=float, help="extrapolation convergence tolerance")
    parser.add_argument("--quad-tol", type=float, help="quadrature tolerance")
    parser.add_argument("--exclude-radius", type=float)
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--force", action="store_true", default=None,
                        help="reconstruct even if the growth gate refuses")
    parser.add_argument("--theta", help="comma-separated angles instead of the grid")
    parser.add_argument("--rho", type=float)
    parser.add_argument("--theta1", type=float)
    parser.add_argument("--A", type=float)
    parser.add_argument("--window", type=int)
    return parser


def _depth_from_rho_max(text: str) -> int:
    text = text.strip()
    if text.startswith("j="):
        return int(text[2:])
    return int(text)


def make_config(args: argparse.Namespace) -> RunConfig:
    params = {}
    if args.config:
        params.update({k.replace("-", "_"): v for k, v in json.loads(Path(args.config).read_text()).items()})
    flags = vars(args)
    if flags.get("rho_max") is not None:
        flags["ladder_depth"] = _depth_from_rho_max(flags["rho_max"])
    for f in fields(RunConfig):
        if flags.get(f.name) is not None:
            params[f.name] = flags[f.name]
    params["command"] = args.command
    unknown = set(params) - {f.name for f in fields(RunConfig)}
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return RunConfig(**params)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        return COMMANDS[cfg.command](cfg)
    except GrowthGateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InnerFourierError, ValueError, KeyError, OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
