"""Command-line entry point.

Subcommands: norm, stft, apply, bounds, sweep, wexler-raz, counterexample,
selftest.  Configs are JSON with a top-level {"schema": "v1"}; bulk numbers
go to CSV (17 significant digits), scalar summaries to JSON.  Exit codes:
0 success, 1 validation error, 2 numerical-contract violation; failures
write a machine-readable JSON object to stderr.  Outputs are deterministic
for a fixed config and seed; timestamps live in a sidecar .meta.json next to
--out files, never in the data itself.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
import time

import numpy as np

from . import __version__
from .amalgam import ExponentPair, amalgam_norm
from .errors import ConfigError
from .experiments import (
    SweepSchedule,
    convergence_sweep,
    counterexample_run,
    opnorm_sweep,
)
from .grid import Grid, GridFunction, l2_norm, write_csv
from .janssen import janssen_apply, janssen_coefficients, wexler_raz_check
from .operators import GaborSystem, apply_frame_direct, gabor_coefficients
from .walnut import diagonal_correlation, operator_norm_upper_bound, tail_sum, walnut_apply
from .windows import WindowSpec, sample_window

SCHEMA = "v1"


class ContractViolation(RuntimeError):
    """A numerical contract failed (trend, bound, or selftest check)."""


# ---------------------------------------------------------------------------
# config plumbing


def _load_json(path: str) -> dict:
    try:
        with open(path) as fp:
            obj = json.load(fp)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ConfigError(f"config {path!r} must be a JSON object")
    return obj


def _require_schema(cfg: dict, path: str) -> None:
    if cfg.get("schema") != SCHEMA:
        raise ConfigError(f"config {path!r} must declare \"schema\": \"{SCHEMA}\"")


def _grid_from(cfg: dict) -> Grid:
    g = cfg.get("grid")
    if not isinstance(g, dict):
        raise ConfigError("config needs a \"grid\" object with half_extent and spacing")
    try:
        return Grid(float(g["half_extent"]), float(g["spacing"]), int(g.get("dim", 1)))
    except KeyError as exc:
        raise ConfigError(f"grid config is missing {exc}") from exc


def _window_from(cfg: dict, key: str) -> WindowSpec:
    if key not in cfg:
        raise ConfigError(f"config is missing the {key!r} window spec")
    try:
        return WindowSpec.from_json(cfg[key])
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad {key!r} window spec: {exc}") from exc


def _system_from(cfg: dict) -> GaborSystem:
    grid = _grid_from(cfg)
    g = sample_window(_window_from(cfg, "g"), grid)
    gamma_spec = cfg.get("gamma")
    gamma = sample_window(WindowSpec.from_json(gamma_spec), grid) if gamma_spec else g
    for key in ("a", "b"):
        if key not in cfg:
            raise ConfigError(f"config is missing lattice parameter {key!r}")
    kw = {}
    if cfg.get("freq_radius") is not None:
        kw["freq_radius"] = int(cfg["freq_radius"])
    return GaborSystem(g, gamma, float(cfg["a"]), float(cfg["b"]), **kw)


def _f_from(cfg: dict, grid: Grid) -> GridFunction:
    from .grid import translate

    f = sample_window(_window_from(cfg, "f"), grid)
    shift = cfg.get("f_shift")
    if shift is not None:
        shift = [shift] * grid.dim if np.isscalar(shift) else shift
        f = translate(f, shift)
    return f


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fp:
            fp.write(text)
        with open(out_path + ".meta.json", "w") as fp:
            json.dump({"tool": f"gabframes {__version__}", "written_at": time.time()}, fp)
            fp.write("\n")
    else:
        sys.stdout.write(text)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_norm(args) -> int:
    spec = WindowSpec.from_json(_load_json(args.window))
    grid = Grid(args.half_extent, args.spacing, args.dim)
    f = sample_window(spec, grid)
    value = amalgam_norm(f, ExponentPair.of(args.p, args.q))
    _emit(json.dumps({"norm": value}) + "\n", args.out)
    return 0


def _cmd_stft(args) -> int:
    cfg = _load_json(args.config)
    _require_schema(cfg, args.config)
    sys_ = _system_from(cfg)
    f = _f_from(cfg, sys_.grid)
    lat = gabor_coefficients(f, sys_)
    buf = io.StringIO()
    d = sys_.grid.dim
    if d == 1:
        buf.write("n,m,re,im\n")
    else:
        buf.write(",".join([f"n_{j+1}" for j in range(d)] + [f"m_{j+1}" for j in range(d)])
                  + ",re,im\n")
    for pos in np.ndindex(lat.entries.shape):
        labels = [str(lat.time_indices[i]) for i in pos[:d]]
        labels += [str(lat.freq_indices[i]) for i in pos[d:]]
        v = lat.entries[pos]
        buf.write(",".join(labels) + f",{_fmt(v.real)},{_fmt(v.imag)}\n")
    _emit(buf.getvalue(), args.out)
    return 0


def _cmd_apply(args) -> int:
    cfg = _load_json(args.config)
    _require_schema(cfg, args.config)
    sys_ = _system_from(cfg)
    f = _f_from(cfg, sys_.grid)
    if args.method == "direct":
        out = apply_frame_direct(f, sys_)
    elif args.method == "walnut":
        out = walnut_apply(f, sys_)
    else:
        lat = janssen_coefficients(sys_, args.L, args.N)
        out = janssen_apply(f, lat)
    buf = io.StringIO()
    write_csv(out, buf)
    _emit(buf.getvalue(), args.out)
    return 0


def _cmd_bounds(args) -> int:
    cfg = _load_json(args.config)
    _require_schema(cfg, args.config)
    sys_ = _system_from(cfg)
    ts = tail_sum(sys_)
    dev = float(np.abs(diagonal_correlation(sys_) - 1.0).max())
    payload = {
        "a": sys_.a,
        "b": sys_.b,
        "norm_bound": operator_norm_upper_bound(sys_),
        "tail_sum": ts.tail,
        "diag_dev": dev,
        "sup_sum": ts.sup_sum,
        "sup_sum_bound": ts.bound,
        "within_bound": ts.within_bound,
    }
    _emit(json.dumps(payload) + "\n", args.out)
    if not ts.within_bound:
        raise ContractViolation(
            f"correlation sup-sum {ts.sup_sum!r} exceeds its bound {ts.bound!r}")
    return 0


def _sweep_csv(report) -> str:
    cols = ["a", "b", "err_f", "diag_dev", "tail", "norm_bound", "weakstar",
            "proxy_upper", "proxy_lower", "residue", "wall_time"]
    buf = io.StringIO()
    buf.write(",".join(cols) + "\n")
    for r in report.records:
        row = []
        for c in cols:
            v = getattr(r, c)
            row.append("" if v is None else _fmt(v))
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def _cmd_sweep(args) -> int:
    cfg = _load_json(args.config)
    _require_schema(cfg, args.config)
    grid = _grid_from(cfg)
    kind = cfg.get("kind", "convergence")
    if kind not in ("convergence", "opnorm"):
        raise ConfigError(f"sweep kind must be 'convergence' or 'opnorm', got {kind!r}")
    pairs = cfg.get("pairs")
    if not isinstance(pairs, list):
        raise ConfigError("sweep config needs a \"pairs\" list of [a, b]")
    f_spec = WindowSpec.from_json(cfg["f"]) if "f" in cfg else None
    shift = cfg.get("f_shift")
    if shift is not None and np.isscalar(shift):
        shift = (float(shift),) * grid.dim
    schedule = SweepSchedule(
        grid=grid,
        g_spec=_window_from(cfg, "g"),
        gamma_spec=_window_from(cfg, "gamma") if "gamma" in cfg else _window_from(cfg, "g"),
        pairs=tuple((float(a), float(b)) for a, b in pairs),
        pq=ExponentPair.of(cfg.get("p", 2), cfg.get("q", 2)),
        f_spec=f_spec,
        f_shift=tuple(float(s) for s in shift) if shift is not None else None,
    )
    report = (convergence_sweep if kind == "convergence" else opnorm_sweep)(
        schedule, threads=args.threads)
    _emit(_sweep_csv(report), args.out)
    summary = {"passed": report.passed, "trend_ratio": report.trend_ratio,
               "monotone": report.monotone}
    sys.stdout.write(json.dumps(summary) + "\n")
    if not report.passed:
        raise ContractViolation(f"trend ratio {report.trend_ratio!r} did not fall "
                                f"below the acceptance limit")
    return 0


def _cmd_wexler_raz(args) -> int:
    cfg = _load_json(args.system)
    _require_schema(cfg, args.system)
    sys_ = _system_from(cfg)
    res = wexler_raz_check(sys_, args.L, args.N, args.tol)
    payload = {
        "is_biorthogonal": res.is_biorthogonal,
        "max_offdiag": res.max_offdiag,
        "diag": {"re": res.diag.real, "im": res.diag.imag},
    }
    _emit(json.dumps(payload) + "\n", args.out)
    return 0


def _cmd_counterexample(args) -> int:
    depths = [int(tok) for tok in args.depths.split(",") if tok.strip()]
    if not depths:
        raise ConfigError("--depths must list at least one depth, e.g. 1,2,3")
    report = counterexample_run(depths, q=args.q, threads=args.threads)
    buf = io.StringIO()
    buf.write("depth,spacing,witness_a,witness_norm,contrast_a,contrast_norm\n")
    for r in report.records:
        buf.write(",".join([str(r.depth), _fmt(r.spacing), _fmt(r.witness_a),
                            _fmt(r.witness_norm), _fmt(r.contrast_a),
                            _fmt(r.contrast_norm)]) + "\n")
    _emit(buf.getvalue(), args.out)
    sys.stdout.write(json.dumps({"passed": report.passed}) + "\n")
    if not report.passed:
        raise ContractViolation("counterexample curves failed to separate")
    return 0


def _cmd_selftest(args) -> int:
    rng = np.random.default_rng(args.seed)
    checks = []

    grid = Grid(4.0, 1 / 32)
    chi = sample_window(WindowSpec.indicator_cube(1.0), grid)
    env = sample_window(WindowSpec.gaussian(1.0, 2.0), grid)
    f = GridFunction(grid, env.values * (rng.standard_normal(grid.shape)
                                         + 1j * rng.standard_normal(grid.shape)))

    # identity regime: indicator pair, a = 1/4, b = 1/2
    sys_ = GaborSystem(chi, chi, 0.25, 0.5)
    err = l2_norm(walnut_apply(f, sys_) - f) / l2_norm(f)
    checks.append(("exact_identity_regime", err, err <= 1e-12))

    # integer lattice biorthogonality
    res = wexler_raz_check(GaborSystem(chi, chi, 1.0, 1.0), 16, 4, tol=1e-10)
    checks.append(("wexler_raz_delta_lattice", res.max_offdiag, res.is_biorthogonal))

    # closed-form operator bound at the unit lattice
    bound = operator_norm_upper_bound(GaborSystem(chi, chi, 1.0, 1.0))
    checks.append(("walnut_bound_constant", bound, bound == 8.0))

    ok = True
    for name, value, passed in checks:
        ok &= passed
        sys.stdout.write(json.dumps({"check": name, "value": value, "passed": passed}) + "\n")
    if not ok:
        raise ContractViolation("selftest failed")
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gabframes",
        description="Gabor frame operators on discretized Wiener amalgam spaces.")
    parser.add_argument("--version", action="version", version=f"gabframes {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write the result to this file")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for independent schedule points")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized procedures")

    p = sub.add_parser("norm", parents=[common], help="amalgam norm of a window")
    p.add_argument("--window", required=True, help="window spec JSON file")
    p.add_argument("--p", default="2")
    p.add_argument("--q", default="2")
    p.add_argument("--half-extent", dest="half_extent", type=float, default=4.0)
    p.add_argument("--spacing", type=float, default=1 / 32)
    p.add_argument("--dim", type=int, default=1)
    p.set_defaults(fn=_cmd_norm)

    p = sub.add_parser("stft", parents=[common], help="Gabor coefficient lattice CSV")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=_cmd_stft)

    p = sub.add_parser("apply", parents=[common], help="apply the frame operator")
    p.add_argument("--config", required=True)
    p.add_argument("--method", choices=("direct", "walnut", "janssen"), default="walnut")
    p.add_argument("--L", type=int, default=8, help="janssen modulation radius")
    p.add_argument("--N", type=int, default=8, help="janssen shift radius")
    p.set_defaults(fn=_cmd_apply)

    p = sub.add_parser("bounds", parents=[common], help="operator-norm bound diagnostics")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("sweep", parents=[common], help="densification sweep")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("wexler-raz", parents=[common], help="biorthogonality check")
    p.add_argument("--system", required=True)
    p.add_argument("--L", type=int, default=16)
    p.add_argument("--N", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(fn=_cmd_wexler_raz)

    p = sub.add_parser("counterexample", parents=[common],
                       help="sup-norm failure witness table")
    p.add_argument("--depths", required=True, help="comma-separated depths, e.g. 1,2,3")
    p.add_argument("--q", default="inf")
    p.set_defaults(fn=_cmd_counterexample)

    p = sub.add_parser("selftest", parents=[common], help="run the built-in sanity checks")
    p.set_defaults(fn=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage; normalize its error code to 1
        return 0 if exc.code in (0, None) else 1
    try:
        return args.fn(args)
    except ContractViolation as exc:
        sys.stderr.write(json.dumps({"error": "contract", "message": str(exc)}) + "\n")
        return 2
    except (ValueError, OSError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
