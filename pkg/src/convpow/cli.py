"""Command-line front end.

Subcommands: analyze, power, attractor, verify {strong|weak|supnorm|packet},
example.  Reports are CSV (RFC 4180) or JSON (UTF-8, no NaN/Inf); outputs
are byte-identical across runs for identical flags.  Exit codes: 0 success
or verification pass, 1 verification failure, 2 usage error, 3 numerical
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from .attractor import AttractorSpec, attractor_eval
from .catalog import EXAMPLE_NAMES, builtin_example
from .engine import power_dft, power_direct
from .errors import ConvpowError, FunctionFileError
from .funcfile import emit_function_file, parse_function_file
from .lattice import LatticeFunction
from .limits import (packet_check, residual_report, supnorm_scaling,
                     weak_approx, strong_approx)
from .symbol import analyze, strong_hypothesis_holds

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


def _load_function(args) -> LatticeFunction:
    if getattr(args, "example", None):
        name, _, params = args.example.partition(":")
        plist = [float(p) for p in params.split(",")] if params else []
        return builtin_example(name, *plist)
    if getattr(args, "file", None):
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                return parse_function_file(fh.read())
        except OSError as e:
            raise UsageError(f"cannot read {args.file}: {e}") from e
    raise UsageError("one of --example or --file is required")


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _gnuplot_script(csv_path: str, columns: str, title: str) -> str:
    return (
        "set datafile separator ','\n"
        f"set title '{title}'\n"
        "set key autotitle columnhead\n"
        f"plot '{csv_path}' using {columns} with lines\n"
    )


def _analysis_json(f: LatticeFunction, **tols) -> str:
    sa = analyze(f, **tols)
    points = []
    for p in sa.omega:
        entry = {
            "xi": p.xi,
            "value": [p.value.real, p.value.imag],
            "type": p.point_type,
            "order": p.order,
            "drift": p.drift,
            "beta": [p.beta.real, p.beta.imag],
        }
        if p.point_type == "type2":
            entry["k"] = p.k
            entry["gamma"] = p.gamma
        points.append(entry)
    doc = {
        "A": sa.A,
        "m_phi": sa.m_phi,
        "points": points,
        "max_order_indices": list(sa.max_order_indices),
        "drift_groups": [list(g) for g in sa.drift_groups],
        "strong_hypothesis": strong_hypothesis_holds(sa),
    }
    return json.dumps(doc, sort_keys=True, allow_nan=False, indent=2) + "\n"


def _cmd_analyze(args) -> int:
    f = _load_function(args)
    text = _analysis_json(f, tol=args.max_tol, drift_tol=args.drift_tol,
                          coeff_rtol=args.coeff_rtol)
    if args.json or args.output:
        _write_text(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_power(args) -> int:
    f = _load_function(args)
    if args.normalize:
        A = analyze(f).A
        f = f.scaled(1.0 / A)
    pr = power_direct(f, args.n) if args.method == "direct" else power_dft(f, args.n)
    g = pr.result
    rows = [(int(x), repr(float(v.real)), repr(float(v.imag)), repr(float(abs(v))))
            for x, v in zip(g.support_points(), g.values)]
    text = _csv_text(["x", "re", "im", "abs"], rows)
    _write_text(args.csv, text)
    if args.gnuplot and args.csv not in (None, "-"):
        _write_text(args.gnuplot, _gnuplot_script(args.csv, "1:4", f"|f^({args.n})|"))
    return EXIT_OK


def _cmd_attractor(args) -> int:
    re_part, _, im_part = args.beta.partition(",")
    beta = complex(float(re_part), float(im_part or "0"))
    spec = AttractorSpec(args.m, beta)
    lo, hi, step = args.grid
    xs = np.arange(lo, hi + 0.5 * step, step)
    vals, cert = attractor_eval(spec, xs, args.eps)
    rows = [(repr(float(x)), repr(float(v.real)), repr(float(v.imag)),
             repr(float(abs(v))))
            for x, v in zip(xs, vals)]
    text = _csv_text(["x", "re", "im", "abs"], rows)
    _write_text(args.csv, text)
    if args.gnuplot and args.csv not in (None, "-"):
        _write_text(args.gnuplot,
                    _gnuplot_script(args.csv, "1:2", f"Re H_{args.m}^{beta}"))
    sys.stderr.write(f"# scheme={cert.scheme} truncation={cert.truncation:g} "
                     f"tail_bound={cert.tail_bound:g}\n")
    return EXIT_OK


def _cmd_example(args) -> int:
    name, _, params = args.name.partition(":")
    plist = [float(p) for p in params.split(",")] if params else []
    f = builtin_example(name, *plist)
    _write_text(args.output, emit_function_file(f, name=args.name))
    return EXIT_OK


def _parse_n_list(text: str):
    return sorted(int(t) for t in text.split(","))


def _verify_supnorm(args, f) -> tuple[bool, str, str]:
    rep = supnorm_scaling(f, _parse_n_list(args.n))
    s = [r[2] for r in rep.rows]
    ratio = max(s) / min(s)
    ok = ratio < args.max_ratio
    if args.band:
        ok = ok and all(args.band[0] <= v <= args.band[1] for v in s)
    lines = [f"supnorm n={r[0]} scaled_norm={r[1]!r} s_n={r[2]!r}" for r in rep.rows]
    lines.append(f"s_n ratio max/min = {ratio:.6g} (limit {args.max_ratio})")
    csv_text = _csv_text(["n", "scaled_sup_norm", "s_n"],
                         [(r[0], repr(float(r[1])), repr(float(r[2]))) for r in rep.rows])
    return ok, "\n".join(lines) + "\n", csv_text


def _verify_residual(args, f, mode: str) -> tuple[bool, str, str]:
    n_list = _parse_n_list(args.n)
    rep = residual_report(f, n_list, mode, q=args.group,
                          z_window=(args.window[0], args.window[1])
                          if mode == "weak" else DEFAULT_WEAK_WINDOW,
                          z_step=args.step)
    resid = [r[1] for r in rep.rows]
    decreasing = all(b <= a * (1.0 + args.slack) for a, b in zip(resid, resid[1:]))
    ok = decreasing and resid[-1] < args.threshold
    lines = [f"{mode} n={r[0]} scaled_residual={r[1]!r}" for r in rep.rows]
    lines.append(f"decreasing={decreasing} final={resid[-1]:.6g} "
                 f"(threshold {args.threshold})")
    csv_text = _csv_text(["n", "scaled_residual"],
                         [(r[0], repr(float(r[1]))) for r in rep.rows])
    return ok, "\n".join(lines) + "\n", csv_text


DEFAULT_WEAK_WINDOW = (-3.0, 3.0)


def _verify_packet(args, f) -> tuple[bool, str, str]:
    rows = []
    all_ok = True
    for n in _parse_n_list(args.n):
        ok, argmax, packets = packet_check(f, n, args.K)
        all_ok = all_ok and ok
        rows.append((n, ok, json.dumps(argmax), json.dumps([list(p) for p in packets])))
    lines = [f"packet n={r[0]} ok={r[1]} argmax={r[2]} packets={r[3]}" for r in rows]
    csv_text = _csv_text(["n", "ok", "argmax", "packets"], rows)
    return all_ok, "\n".join(lines) + "\n", csv_text


def _cmd_verify(args) -> int:
    f = _load_function(args)
    if args.mode == "supnorm":
        ok, text, csv_text = _verify_supnorm(args, f)
    elif args.mode == "packet":
        ok, text, csv_text = _verify_packet(args, f)
    else:
        ok, text, csv_text = _verify_residual(args, f, args.mode)
    sys.stdout.write(text)
    if args.csv:
        _write_text(args.csv, csv_text)
    sys.stdout.write("PASS\n" if ok else "FAIL\n")
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def _cmd_window(args) -> int:
    """Emit empirical vs approximant values over an x window (figure data)."""
    f = _load_function(args)
    sa = analyze(f).normalized()
    n = args.n
    pw = power_dft(sa.function, n).result
    lo = pw.support_min if args.window is None else int(args.window[0])
    hi = pw.support_max if args.window is None else int(args.window[1])
    xs = np.arange(lo, hi + 1)
    emp = np.array([pw.value_at(int(x)) for x in xs])
    if strong_hypothesis_holds(sa):
        ap = strong_approx(sa, n, xs.astype(float))
    else:
        m = sa.m_phi
        drift = sa.omega[sa.drift_groups[args.group][0]].drift
        zs = (xs - drift * n) * float(n) ** (-1.0 / m)
        _, ap = weak_approx(sa, n, args.group, zs)
    rows = [(int(x), repr(float(e.real)), repr(float(e.imag)), repr(float(a.real)),
             repr(float(a.imag)), repr(float(abs(e - a))))
            for x, e, a in zip(xs, emp, ap)]
    text = _csv_text(["x", "emp_re", "emp_im", "approx_re", "approx_im", "abs_err"],
                     rows)
    _write_text(args.csv, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="convpow",
        description="Convolution powers on the integer lattice: symbol "
                    "classification, attractor kernels, local limit checks.")
    ap.add_argument("--version", action="version", version=f"convpow {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--example",
                       help=f"built-in input, one of {', '.join(EXAMPLE_NAMES)}; "
                            "threepoint takes parameters as threepoint:a0,a+,a-")
        p.add_argument("--file", help="function file (lines 'x re im' or JSON)")

    p = sub.add_parser("analyze", help="classify the symbol's maximum set")
    add_input(p)
    p.add_argument("--json", action="store_true", help="write JSON to stdout (default)")
    p.add_argument("--output", help="write JSON to a file")
    p.add_argument("--max-tol", type=float, default=1e-10,
                   help="relative band below A that counts as maximal "
                        "(default 1e-10)")
    p.add_argument("--drift-tol", type=float, default=1e-8,
                   help="absolute clustering tolerance for drifts (default 1e-8)")
    p.add_argument("--coeff-rtol", type=float, default=1e-9,
                   help="noise-floor prefactor for Taylor coefficients "
                        "(default 1e-9)")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("power", help="n-th convolution power as CSV (x, re, im, abs)")
    add_input(p)
    p.add_argument("-n", type=int, required=True, help="power index (n >= 1)")
    p.add_argument("--method", choices=("dft", "direct"), default="dft",
                   help="dft (default) or the direct square-and-multiply oracle")
    p.add_argument("--normalize", action="store_true",
                   help="divide the input by A = sup|symbol| before powering")
    p.add_argument("--csv", help="output path ('-' or omitted: stdout)")
    p.add_argument("--gnuplot", help="also write a gnuplot script to this path")
    p.set_defaults(func=_cmd_power)

    p = sub.add_parser("attractor", help="kernel H_m^beta on a grid as CSV")
    p.add_argument("--m", type=int, required=True, help="exponent m >= 2")
    p.add_argument("--beta", required=True, help="beta as 're,im'")
    p.add_argument("--grid", type=float, nargs=3, required=True,
                   metavar=("LO", "HI", "STEP"), help="evaluation grid")
    p.add_argument("--eps", type=float, default=1e-10, help="absolute accuracy "
                   "(default 1e-10)")
    p.add_argument("--csv", help="output path ('-' or omitted: stdout)")
    p.add_argument("--gnuplot", help="also write a gnuplot script to this path")
    p.set_defaults(func=_cmd_attractor)

    p = sub.add_parser("verify", help="run an empirical check; exit 0 iff it passes")
    p.add_argument("mode", choices=("strong", "weak", "supnorm", "packet"))
    add_input(p)
    p.add_argument("-n", default="100,1000,10000",
                   help="comma-separated n list (default 100,1000,10000)")
    p.add_argument("--threshold", type=float, default=0.05,
                   help="bound on the final scaled residual (strong/weak; default 0.05)")
    p.add_argument("--slack", type=float, default=0.05,
                   help="non-monotonicity slack between rows (default 0.05)")
    p.add_argument("--window", type=float, nargs=2, default=list(DEFAULT_WEAK_WINDOW),
                   metavar=("ZLO", "ZHI"), help="weak-mode z window (default -3 3)")
    p.add_argument("--step", type=float, default=0.25,
                   help="weak-mode z step (default 0.25)")
    p.add_argument("--group", type=int, default=0,
                   help="drift-group index for weak mode (default 0)")
    p.add_argument("--K", type=float, default=10.0,
                   help="packet half-width factor (default 10)")
    p.add_argument("--max-ratio", type=float, default=5.0,
                   help="supnorm: bound on max/min of s_n (default 5)")
    p.add_argument("--band", type=float, nargs=2, default=None,
                   metavar=("LO", "HI"), help="supnorm: require s_n within the band")
    p.add_argument("--csv", help="write the report rows as CSV")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("window", help="empirical vs approximant over an x window (CSV)")
    add_input(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--window", type=float, nargs=2, default=None,
                   metavar=("XLO", "XHI"), help="x range (default: full support)")
    p.add_argument("--group", type=int, default=0,
                   help="drift group for the weak approximant when the strong "
                        "hypothesis fails (default 0)")
    p.add_argument("--csv", help="output path ('-' or omitted: stdout)")
    p.set_defaults(func=_cmd_window)

    p = sub.add_parser("example", help="print a built-in function as a function file")
    p.add_argument("name", help=f"one of {', '.join(EXAMPLE_NAMES)} "
                                "(threepoint:a0,a+,a-)")
    p.add_argument("--output", help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_example)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (UsageError, FunctionFileError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except (ConvpowError, ArithmeticError) as e:
        sys.stderr.write(f"numerical error: {e}\n")
        return EXIT_NUMERICAL
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
