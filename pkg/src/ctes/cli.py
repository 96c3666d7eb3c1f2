"""Command-line front end.

Exit status is 0 on success, 1 on invalid arguments or domain errors and 2
on I/O errors.
"""
from __future__ import annotations

import argparse
import sys

from .curlicue import CurlicueParams, curlicue_curve
from .errors import DomainError
from .export import dump_json, write_curve_csv, write_interferogram_csv, write_views_csv
from .extractor import factor
from .interferogram import SamplingConfig, SpectralWindow, build_grid, record, rescale
from .planner import Method, sequence_plan_range, sequence_plan_single_N

# options whose values may legitimately start with "-"
_SIGNED_VALUE_OPTS = {"--zeta-range"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _triple(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected a:b:step, got {text!r}")
    return tuple(float(p) for p in parts)


def _int_pair(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    return int(parts[0]), int(parts[1])


def _add_params(p, required=True):
    p.add_argument("--M", type=int, required=required, default=3, help="number of interfering terms")
    p.add_argument("--j", type=int, required=required, default=2, help="phase order")


def _add_window(p):
    p.add_argument("--o-min", type=float, default=1.0)
    p.add_argument("--o-max", type=float, required=True)


def _add_sampling(p):
    p.add_argument("--samples-per-unit", type=int, default=32)
    p.add_argument("--no-snap", action="store_true", help="do not insert grid points at integer xi_N")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ctes", description="CTES factoring interferogram simulator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("curlicue", help="dump |s(zeta)|^2 over a zeta range as CSV")
    _add_params(p)
    p.add_argument("--zeta-range", type=_triple, default=(-0.5, 0.5, 1e-3), metavar="A:B:STEP")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--plot", help="SVG path")

    p = sub.add_parser("interferogram", help="record one interferogram as CSV")
    _add_params(p)
    p.add_argument("--x", type=float, required=True)
    _add_window(p)
    p.add_argument("--N", type=int, help="bind N to fill the xi_N column")
    p.add_argument("--s", type=int, default=1)
    _add_sampling(p)
    p.add_argument("--out")
    p.add_argument("--plot")

    p = sub.add_parser("plan", help="print an interferogram plan as JSON")
    p.add_argument("--method", required=True)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--N", type=int)
    target.add_argument("--N-range", type=_int_pair, metavar="LO:HI")
    _add_window(p)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--x0", type=float)
    p.add_argument("--x-max", type=float)
    p.add_argument("--out")

    p = sub.add_parser("factor", help="run the factoring pipeline and print the report JSON")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--method", default="1")
    _add_window(p)
    p.add_argument("--s", type=int, default=1)
    _add_params(p, required=False)
    _add_sampling(p)
    p.add_argument("--mode", choices=["direct", "sampled"], default="direct")
    p.add_argument("--threshold", type=float)
    p.add_argument("--N-range", type=_int_pair, metavar="LO:HI",
                   help="plan for a whole range instead of the single N")
    p.add_argument("--x-max", type=float)
    p.add_argument("--recursive", action="store_true", help="also report the full prime factorization")
    p.add_argument("--out")
    p.add_argument("--plot", help="SVG path; one panel per interferogram")
    return parser


def _normalize(argv: list[str]) -> list[str]:
    out, k = [], 0
    while k < len(argv):
        tok = argv[k]
        if tok in _SIGNED_VALUE_OPTS and k + 1 < len(argv):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
            continue
        out.append(tok)
        k += 1
    return out


class _Output:
    def __init__(self, path):
        self.path = path

    def __enter__(self):
        self.fh = open(self.path, "w", newline="") if self.path else sys.stdout
        return self.fh

    def __exit__(self, *exc):
        if self.path:
            self.fh.close()


def _window(args) -> SpectralWindow:
    return SpectralWindow(args.o_min, args.o_max)


def _sampling(args, mode="direct") -> SamplingConfig:
    return SamplingConfig(args.samples_per_unit, not args.no_snap, mode)


def _cmd_curlicue(args):
    from .plotting import emit_plot

    params = CurlicueParams(args.M, args.j)
    a, b, step = args.zeta_range
    curve = curlicue_curve(params, a, b, step)
    with _Output(args.out) as fh:
        write_curve_csv(fh, curve)
    if args.plot:
        emit_plot(curve, args.plot)


def _cmd_interferogram(args):
    from .plotting import emit_plot

    params = CurlicueParams(args.M, args.j)
    window = _window(args)
    cfg = _sampling(args)
    if args.N is not None and args.N < 1:
        raise DomainError(f"N must be >= 1, got {args.N}")
    ig = record(params, window, args.x, build_grid(window, args.x, args.N or 1, cfg, args.s))
    data = rescale(ig, args.N, args.s) if args.N is not None else ig
    with _Output(args.out) as fh:
        write_interferogram_csv(fh, data)
    if args.plot:
        emit_plot(data, args.plot)


def _cmd_plan(args):
    window = _window(args)
    method = Method.parse(args.method)
    if args.N is not None:
        plan = sequence_plan_single_N(args.N, window, method, args.s, args.x0, args.x_max)
    else:
        plan = sequence_plan_range(*args.N_range, window, method, args.s, args.x0, args.x_max)
    with _Output(args.out) as fh:
        dump_json(plan.to_dict(), fh)


def _cmd_factor(args):
    from .plotting import emit_plot

    params = CurlicueParams(args.M, args.j)
    window = _window(args)
    method = Method.parse(args.method)
    cfg = _sampling(args, args.mode)
    plan = None
    if args.N_range is not None:
        plan = sequence_plan_range(*args.N_range, window, method, args.s, x_max=args.x_max)
    report = factor(args.N, window, method, args.s, params, cfg, plan=plan,
                    threshold=args.threshold, x_max=args.x_max, recursive=args.recursive)
    with _Output(args.out) as fh:
        dump_json(report.to_dict(), fh)
    if args.plot and report.views:
        emit_plot(report.views, args.plot)


_COMMANDS = {
    "curlicue": _cmd_curlicue,
    "interferogram": _cmd_interferogram,
    "plan": _cmd_plan,
    "factor": _cmd_factor,
}


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize(argv))
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        _COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"ctes: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ctes: I/O error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())
