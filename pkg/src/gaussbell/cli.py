"""Command-line interface: reproduce each figure/table pipeline as CSV/JSON.

Every CSV starts with a ``#``-prefixed JSON metadata line (schema version,
command, sampler law) followed by a header row; floats are written with 17
significant digits.  Each output CSV gets a JSON manifest sidecar
(``<out>.manifest.json``) recording the full configuration, seed, code
version, wall time and any constants needed to overlay analytic bound
curves.  Outputs are byte-identical for identical flags and seeds, in
particular across ``--threads`` values.

Exit codes: 0 success, 2 parse/config error, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.optimize import brentq

from . import __version__, bell, entanglement, sampling, states, svetlichny
from .errors import ConsistencyError, GaussBellError
from .optimize import OptimizerOptions

SCHEMA_VERSION = "gaussbell-csv/1"
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONSISTENCY = 3


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _write_csv(path, columns, rows, meta: dict) -> None:
    header = dict(meta)
    header["schema"] = SCHEMA_VERSION
    header["columns"] = list(columns)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# " + json.dumps(header, sort_keys=True) + "\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_manifest(out_path, args, outputs, wall_time, constants=None) -> None:
    config = {k: v for k, v in vars(args).items() if k != "func"}
    manifest = {
        "schema": SCHEMA_VERSION,
        "command": args.command,
        "config": config,
        "seed": getattr(args, "seed", None),
        "code_version": __version__,
        "wall_time_s": wall_time,
        "outputs": [str(p) for p in outputs],
        "constants": constants or {},
    }
    with open(f"{out_path}.manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _parallel_map(fn, items, threads: int):
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _optimizer_options(args) -> OptimizerOptions:
    return OptimizerOptions(starts=args.starts, seed=getattr(args, "seed", 0) or 0)


def _parse_grid(spec: str) -> list[float]:
    try:
        lo, hi, step = (float(tok) for tok in spec.split(":"))
    except ValueError:
        raise GaussBellError(f"bad grid spec {spec!r}, expected min:max:step") from None
    if step <= 0 or hi < lo:
        raise GaussBellError(f"bad grid spec {spec!r}")
    n = int(round((hi - lo) / step))
    values = [lo + i * step for i in range(n + 1)]
    return [v for v in values if v <= hi + step * 1e-9]


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# commands


def cmd_svet_sym(args) -> int:
    a = args.a
    p_star = svetlichny.symmetric_pstar(a)
    analytic = svetlichny.symmetric_max_analytic(a)
    numeric = svetlichny.maximize_restricted(
        states.symmetric_pure(a), _optimizer_options(args)
    ).value
    delta = abs(analytic - numeric)
    _print_json(
        {
            "a": a,
            "p_star": p_star,
            "s_max_analytic": analytic,
            "s_max_numeric": numeric,
            "delta": delta,
        }
    )
    if delta > 1e-5:
        print(f"analytic-numeric mismatch {delta:.3e} exceeds 1e-5", file=sys.stderr)
        return EXIT_CONSISTENCY
    return EXIT_OK


def cmd_fig1ab(args) -> int:
    start = time.perf_counter()
    opts = _optimizer_options(args)
    grid = _parse_grid(f"{args.grid_min}:{args.grid_max}:{args.step}")
    cells = [(a2, a3) for a2 in grid for a3 in grid]

    def cell(pair):
        a2, a3 = pair
        margins = states.triangle_margins(args.a1, a2, a3)
        if min(margins) < 0 or min(args.a1, a2, a3) < 1.0:
            return (a2, a3, None, None)
        sigma = states.build_pure_standard_form((args.a1, a2, a3))
        s_max = svetlichny.maximize_restricted(sigma, opts).value
        ent = entanglement.tripartite_renyi2_pure((args.a1, a2, a3))
        return (a2, a3, s_max, ent)

    rows = _parallel_map(cell, cells, args.threads)
    meta = {"command": args.command, "a1": args.a1, "seed": args.seed}
    _write_csv(args.out, ("a2", "a3", "s_max", "entanglement"), rows, meta)
    constants = {"classical_bound": 4.0, "s_infinity": svetlichny.S_INFINITY, "a1": args.a1}
    _write_manifest(args.out, args, [args.out], time.perf_counter() - start, constants)
    return EXIT_OK


def _lower_bound_curve(e_max: float, n: int = 200) -> list[list[float]]:
    """Sampled (entanglement, s_max) polyline of the symmetric lower bound."""
    curve = []
    for e in np.linspace(0.0, max(e_max, 1e-6), n):
        a = entanglement.symmetric_a_for_entanglement(float(e))
        curve.append([float(e), svetlichny.symmetric_max_analytic(a)])
    return curve


def cmd_scatter_pure(args) -> int:
    start = time.perf_counter()
    cfg = sampling.SamplerConfig(
        seed=args.seed,
        count=args.n,
        a_max=args.a_max,
        low_range_bias=args.low_range_bias,
    )
    opts = _optimizer_options(args)

    def row(index):
        params = sampling.pure_params_at(cfg, index)
        sigma = states.build_pure_standard_form(params)
        ent = entanglement.tripartite_renyi2_pure(params)
        s_max = svetlichny.maximize_restricted(sigma, opts).value
        return (*params, ent, s_max)

    rows = _parallel_map(row, range(cfg.count), args.threads)
    meta = {"command": args.command, "sampler": sampling.pure_metadata(cfg)}
    _write_csv(args.out, ("a1", "a2", "a3", "entanglement", "s_max"), rows, meta)
    e_max = max((r[3] for r in rows), default=0.0)
    constants = {
        "classical_bound": 4.0,
        "s_infinity": svetlichny.S_INFINITY,
        "entanglement_threshold": entanglement.ENTANGLEMENT_THRESHOLD,
        "lower_bound_curve": _lower_bound_curve(e_max),
    }
    _write_manifest(args.out, args, [args.out], time.perf_counter() - start, constants)
    return EXIT_OK


def cmd_scatter_mixed(args) -> int:
    start = time.perf_counter()
    cfg = sampling.SamplerConfig(
        seed=args.seed, count=args.n, nu_max=args.nu_max, r_max=args.r_max
    )
    opts = _optimizer_options(args)
    maximize = (
        svetlichny.maximize_full if args.mode == "full" else svetlichny.maximize_restricted
    )

    def row(index):
        sigma = sampling.mixed_cm_at(cfg, index)
        return (states.purity(sigma), maximize(sigma, opts).value)

    rows = _parallel_map(row, range(cfg.count), args.threads)
    meta = {"command": args.command, "sampler": sampling.mixed_metadata(cfg), "mode": args.mode}
    _write_csv(args.out, ("purity", "s_max"), rows, meta)
    constants = {
        "classical_bound": 4.0,
        "lower_slope": 4.0,
        "upper_slope": svetlichny.S_INFINITY,
        "purity_cutoff": svetlichny.PURITY_CUTOFF,
    }
    _write_manifest(args.out, args, [args.out], time.perf_counter() - start, constants)
    return EXIT_OK


def _a_for_z(z: float) -> float:
    if not 0.0 < z <= 1.0:
        raise GaussBellError(f"z must lie in (0, 1], got {z!r}")
    hi = 2.0
    while states.z_parameter(hi) > z:
        hi *= 2.0
        if hi > 1e9:
            raise GaussBellError(f"z {z!r} out of invertible range")
    return float(brentq(lambda a: states.z_parameter(a) - z, 1.0, hi, xtol=1e-13))


def cmd_classify(args) -> int:
    start = time.perf_counter()
    opts = _optimizer_options(args)
    if (args.a_grid is None) == (args.z_grid is None):
        raise GaussBellError("exactly one of --a-grid / --z-grid is required")
    if args.a_grid is not None:
        a_values = _parse_grid(args.a_grid)
        if min(a_values) < 1.0:
            raise GaussBellError("--a-grid values must be >= 1")
    else:
        a_values = [_a_for_z(z) for z in _parse_grid(args.z_grid)]
    mu_values = _parse_grid(args.mu_grid)
    if min(mu_values) <= 0.0 or max(mu_values) > 1.0:
        raise GaussBellError("--mu-grid values must lie in (0, 1]")
    cells = [(a, mu) for a in a_values for mu in mu_values]

    def cell(pair):
        a, mu = pair
        c = entanglement.classify_symmetric_mixed(a, mu, opts)
        return (
            a,
            states.z_parameter(a),
            mu,
            c.fully_inseparable,
            c.promiscuous,
            c.svetlichny_nonlocal,
            c.s_max,
        )

    rows = _parallel_map(cell, cells, args.threads)
    columns = ("a", "z", "mu", "fully_inseparable", "promiscuous", "svetlichny_nonlocal", "s_max")
    meta = {"command": args.command, "seed": args.seed}
    _write_csv(args.out, columns, rows, meta)
    constants = {
        "classical_bound": 4.0,
        "s_infinity": svetlichny.S_INFINITY,
        "purity_cutoff": svetlichny.PURITY_CUTOFF,
    }
    _write_manifest(args.out, args, [args.out], time.perf_counter() - start, constants)
    return EXIT_OK


def _load_state(args) -> np.ndarray:
    if args.state_file is not None:
        return states.load_state_file(args.state_file)
    if args.sym_a is None:
        raise GaussBellError("either --state-file or --sym-a is required")
    return states.scaled_symmetric_mixed(args.sym_a, args.mu)


def cmd_state(args) -> int:
    if args.pure is not None:
        sigma = states.build_pure_standard_form(args.pure)
    elif args.sym_a is not None:
        sigma = states.scaled_symmetric_mixed(args.sym_a, args.mu)
    else:
        raise GaussBellError("either --pure or --sym-a is required")
    states.save_state_file(args.out, sigma)
    return EXIT_OK


def cmd_bell(args) -> int:
    expr = bell.load_expression(args.ineq)
    sigma = _load_state(args)
    payload = {"expression": expr.name, "bound": expr.bound}
    if args.mode == "eval":
        if args.settings_file is not None:
            with open(args.settings_file, "r", encoding="utf-8") as fh:
                settings = svetlichny.MeasurementSettings.from_dict(json.load(fh))
        else:
            settings = svetlichny.MeasurementSettings.origin()
        value = bell.evaluate(expr, sigma, settings)
    else:
        result = bell.maximize_expression(expr, sigma, _optimizer_options(args))
        value = result.value
        settings = result.settings
        payload["evaluations"] = result.evaluations
        payload["converged"] = result.converged
    payload["value"] = value
    payload["violated"] = abs(value) > expr.bound + 1e-9
    payload["settings"] = settings.to_dict()
    _print_json(payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_common(sub, threads=True):
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--starts", type=int, default=16, help="random multistarts per maximization")
    if threads:
        sub.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussbell",
        description="Tripartite nonlocality and entanglement of three-mode Gaussian states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("svet-sym", help="analytic vs numeric symmetric-state maximum")
    p.add_argument("--a", type=float, required=True)
    _add_common(p, threads=False)
    p.set_defaults(func=cmd_svet_sym)

    p = subs.add_parser("fig1ab", help="s_max and entanglement over an (a2, a3) grid")
    p.add_argument("--a1", type=float, required=True)
    p.add_argument("--grid-min", type=float, default=1.0)
    p.add_argument("--grid-max", type=float, default=3.0)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_fig1ab)

    p = subs.add_parser("scatter-pure", help="random pure states: entanglement vs s_max")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a-max", type=float, default=4.0)
    p.add_argument("--low-range-bias", action="store_true")
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_scatter_pure)

    p = subs.add_parser("scatter-mixed", help="random mixed states: purity vs s_max")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nu-max", type=float, default=2.0)
    p.add_argument("--r-max", type=float, default=float(np.log(3.0)))
    p.add_argument("--mode", choices=("restricted", "full"), default="restricted")
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_scatter_mixed)

    p = subs.add_parser("classify", help="separability/nonlocality region diagram")
    p.add_argument("--a-grid", help="min:max:step over the local invariant")
    p.add_argument("--z-grid", help="min:max:step over the inverse squeezing parameter")
    p.add_argument("--mu-grid", required=True, help="min:max:step over the purity")
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("state", help="write a covariance-matrix JSON file")
    p.add_argument("--pure", type=float, nargs=3, metavar=("A1", "A2", "A3"))
    p.add_argument("--sym-a", type=float)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_state)

    p = subs.add_parser("bell", help="evaluate or maximize a Bell expression")
    p.add_argument("mode", choices=("eval", "maximize"))
    p.add_argument("--ineq", required=True, help="expression file or 'svetlichny'")
    p.add_argument("--state-file")
    p.add_argument("--sym-a", type=float)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--settings-file")
    _add_common(p, threads=False)
    p.set_defaults(func=cmd_bell)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (GaussBellError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
