"""Command-line front end: evaluate kernels on grids, run the identity
check suites, and drive the MC experiments.

Exit status: 0 all requested work passed, 1 at least one check failed,
2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from relkernel.harness import (
    CheckGrid,
    EVAL_KERNELS,
    MC_EXPERIMENTS,
    SUITE_NAMES,
    run_check,
    run_eval,
    run_mc,
)
from relkernel.kernels import ProcessParams
from relkernel.mc import PathConfig
from relkernel.subordinator import RngStream

__all__ = ["main"]


def _fmt_cell(v) -> str:
    """One CSV cell: floats at 17 significant digits, points ;-joined."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.17g" % v
    if isinstance(v, (list, tuple)):
        return ";".join(_fmt_cell(c) for c in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _write_rows(header: list[str], rows: list[dict], fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt_cell(r.get(k)) for k in header])
    else:
        out.write(json.dumps([{k: r.get(k) for k in header} for r in rows],
                             indent=2))
        out.write("\n")


def _emit(header, rows, args) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            _write_rows(header, rows, args.format, fh)
    else:
        _write_rows(header, rows, args.format, sys.stdout)


def _parse_point(text: str) -> list[float]:
    try:
        return [float(c) for c in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated coordinates, got {text!r}")


def _load_flat_config(path: str) -> dict[str, str]:
    conf: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, "
                                 f"got {line!r}")
            key, _, val = line.partition("=")
            conf[key.strip()] = val.strip()
    return conf


def _load_grid(path: str) -> CheckGrid:
    conf = _load_flat_config(path)
    kwargs = {}
    for key in ("alphas", "ms", "coords"):
        if key in conf:
            kwargs[key] = tuple(float(v) for v in conf.pop(key).split(","))
    if "ds" in conf:
        kwargs["ds"] = tuple(int(v) for v in conf.pop("ds").split(","))
    if conf:
        raise ValueError(f"unknown grid key(s) {sorted(conf)}; "
                         "expected alphas, ms, ds, coords")
    return CheckGrid(**kwargs)


def _apply_config_file(parser: argparse.ArgumentParser, args: argparse.Namespace,
                       argv: list[str]) -> argparse.Namespace:
    """Fill namespace values from the flat config file for every flag the
    command line did not set explicitly (flags override the file)."""
    conf = _load_flat_config(args.config)
    actions = {}
    for a in parser._actions:
        if isinstance(a, argparse._SubParsersAction):
            actions.update(
                (s.dest, s) for s in a.choices[args.command]._actions)
    explicit = {tok[2:].partition("=")[0].replace("-", "_")
                for tok in argv if tok.startswith("--")}
    for key, val in conf.items():
        if key not in actions or key in {"command", "config", "help"}:
            raise ValueError(f"unknown config key {key!r}")
        if key in explicit:
            continue
        action = actions[key]
        convert = action.type or str
        if isinstance(action, argparse._AppendAction):
            items = [v for v in val.replace(";", " ").split() if v]
            value = [convert(v) for v in items]
        else:
            value = convert(val)
            if action.choices and value not in action.choices:
                raise ValueError(f"config key {key!r}: {value!r} is not one "
                                 f"of {list(action.choices)}")
        setattr(args, key, value)
    return args


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relkernel",
        description="Half-space kernels of the relativistic stable process: "
                    "grid evaluation, identity checks, Monte Carlo.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", default=None, help="write output to FILE")
        sp.add_argument("--config", default=None,
                        help="flat key=value file supplying flag defaults")

    pe = sub.add_parser("eval", help="evaluate one kernel on a point grid")
    pe.add_argument("kernel", choices=EVAL_KERNELS)
    pe.add_argument("--alpha", type=float, default=1.0)
    pe.add_argument("--m", type=float, default=1.0)
    pe.add_argument("--d", type=int, default=1)
    pe.add_argument("--x", action="append", type=_parse_point, default=None,
                    help="interior point, comma-separated; repeatable")
    pe.add_argument("--u", action="append", type=_parse_point, default=None,
                    help="exterior point; repeatable")
    pe.add_argument("--y", action="append", type=_parse_point, default=None,
                    help="second interior point; repeatable")
    pe.add_argument("--t", action="append", type=float, default=None,
                    help="time for density evaluation; repeatable")
    pe.add_argument("--z", action="append", type=float, default=None,
                    help="boundary-distance argument for exit-discount; repeatable")
    common(pe)

    pc = sub.add_parser("check", help="run identity check suites")
    pc.add_argument("--suite", default=",".join(SUITE_NAMES),
                    help=f"comma-separated subset of {','.join(SUITE_NAMES)}")
    pc.add_argument("--grid", default="default",
                    help="'default' or path to a flat key=value grid file")
    common(pc)

    pm = sub.add_parser("mc", help="run one Monte Carlo experiment")
    pm.add_argument("experiment", choices=MC_EXPERIMENTS)
    pm.add_argument("--alpha", type=float, default=1.0)
    pm.add_argument("--m", type=float, default=1.0)
    pm.add_argument("--d", type=int, default=1)
    pm.add_argument("--x", type=_parse_point, default=None,
                    help="start point, comma-separated coordinates")
    pm.add_argument("--t", type=float, default=None,
                    help="time horizon argument for the survival experiment")
    pm.add_argument("--center", type=_parse_point, default=None,
                    help="ball center for the green experiments")
    pm.add_argument("--radius", type=float, default=None)
    pm.add_argument("--paths", type=int, default=10000)
    pm.add_argument("--dt", type=float, default=1e-3)
    pm.add_argument("--horizon", type=float, default=50.0)
    pm.add_argument("--seed", type=int, default=0)
    pm.add_argument("--stream", type=int, default=0)
    pm.add_argument("--workers", type=int, default=1)
    common(pm)
    return parser


def _cmd_eval(args) -> int:
    header, rows = run_eval(args.kernel, args.alpha, args.m, args.d,
                            xs=args.x or (), us=args.u or (),
                            ys=args.y or (), ts=args.t or (),
                            zs=args.z or ())
    _emit(header, rows, args)
    return 0


_CHECK_HEADER = ["check_name", "inputs", "lhs", "rhs", "tolerance",
                 "passed", "elapsed_s"]


def _cmd_check(args) -> int:
    suites = [s.strip() for s in args.suite.split(",") if s.strip()]
    grid = None if args.grid == "default" else _load_grid(args.grid)
    reports = run_check(suites=suites, grid=grid)
    rows = [{"check_name": r.check_name, "inputs": r.inputs, "lhs": r.lhs,
             "rhs": r.rhs, "tolerance": r.tolerance, "passed": r.passed,
             "elapsed_s": r.elapsed_s} for r in reports]
    _emit(_CHECK_HEADER, rows, args)
    n_fail = sum(not r.passed for r in reports)
    print(f"{len(reports) - n_fail}/{len(reports)} checks passed",
          file=sys.stderr)
    return 1 if n_fail else 0


def _cmd_mc(args) -> int:
    p = ProcessParams(alpha=args.alpha, m=args.m, d=args.d)
    cfg = PathConfig(n_paths=args.paths, dt=args.dt, horizon=args.horizon,
                     rng=RngStream(args.seed, args.stream),
                     workers=args.workers)
    header, rows = run_mc(args.experiment, p, cfg, x=args.x, t=args.t,
                          center=args.center, radius=args.radius)
    _emit(header, rows, args)
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "config", None):
            args = _apply_config_file(parser, args, argv)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "check":
            return _cmd_check(args)
        return _cmd_mc(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
