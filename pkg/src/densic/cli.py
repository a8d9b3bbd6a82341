"""Command-line interface: analyze, construct, simulate, verify.

Exit codes: 0 success, 2 unreadable or malformed automaton, 3 enumeration cap
exceeded, 4 inadmissible density target, 5 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction

from densic.asymptotics import census_constants
from densic.automaton import AutomaticSet, ParseError, format_dfao, format_word, kernel_system, load_dfao, minimize, normalize
from densic.constructor import DensityTarget, InadmissibleTarget, construct, construction_parameters
from densic.density import (
    DEFAULT_MAX_CANDIDATES,
    InfeasibleInstance,
    densities,
    dichotomy,
    liminf_from_table,
    limsup_from_table,
)
from densic.exact import as_rational, format_rational
from densic.oracle import decimal12, simulate

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_INADMISSIBLE = 4
EXIT_VERIFY = 5

VERIFY_TOLERANCE = Fraction(2, 100)


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("DENSIC_THREADS", "1")))
    except ValueError:
        return 1


def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _witness_fields(w, k):
    if w is None:
        return None
    return {"A": format_word(w.A, k), "B": format_word(w.B, k), "j": str(w.j)}


def analysis_records(dfao, *, mean: bool, strategy: str, max_candidates: int, threads: int,
                     do_minimize: bool = False) -> list[tuple[str, str]]:
    """Run the full pipeline and return the report as ordered (key, value) pairs."""
    d = minimize(dfao) if do_minimize else normalize(dfao)
    opts = dict(strategy=strategy, max_candidates=max_candidates, threads=threads)
    ks = kernel_system(d)
    if mean:
        table = census_constants(ks)
        hi, w_hi = limsup_from_table(ks, table, **opts)
        lo, w_lo = liminf_from_table(ks, table, **opts)
        names = ("limsup", "liminf")
    else:
        rep = densities(AutomaticSet(d), **opts)
        table = rep.table
        hi, w_hi, lo, w_lo = rep.upper, rep.witness_upper, rep.lower, rep.witness_lower
        names = ("upper", "lower")
    recs = [("mode", "mean" if mean else "set"), ("base", str(ks.k)), ("d", str(ks.d)), ("a", str(table.a))]
    for i, row in enumerate(table.c):
        for j, c in enumerate(row):
            recs.append((f"c[{i}][{j}]", format_rational(c)))
    if not mean:
        recs.append(("dichotomy", dichotomy(AutomaticSet(d), table).value))
    for name, val, w in ((names[1], lo, w_lo), (names[0], hi, w_hi)):
        recs.append((name, format_rational(val)))
        recs.append((f"{name}.decimal", decimal12(val)))
        wf = _witness_fields(w, ks.k)
        if wf is None:
            recs.append((f"{name}.witness", "none"))
        else:
            for key in ("A", "B", "j"):
                recs.append((f"{name}.witness.{key}", wf[key]))
    return recs


def render_text(recs: list[tuple[str, str]]) -> str:
    r = dict(recs)
    mean = r["mode"] == "mean"
    names = ("liminf", "limsup") if mean else ("lower", "upper")
    lines = [
        f"mode      {r['mode']}",
        f"base      {r['base']}",
        f"states    {r['d']}",
        f"period    a={r['a']}",
        "census constants c[state][j]:",
    ]
    d, a = int(r["d"]), int(r["a"])
    for i in range(d):
        lines.append(f"  {i}: " + " ".join(r[f"c[{i}][{j}]"] for j in range(a)))
    if "dichotomy" in r:
        lines.append(f"dichotomy {r['dichotomy']}")
    for name in names:
        lines.append(f"{name:<9} {r[name]} ({r[name + '.decimal']})")
    for name in reversed(names):
        if r.get(f"{name}.witness") == "none":
            lines.append(f"witness   {name}: none")
        else:
            lines.append(
                f"witness   {name}: A={r[f'{name}.witness.A']} B={r[f'{name}.witness.B']} j={r[f'{name}.witness.j']}"
            )
    extra = [(k, v) for k, v in recs if k.startswith("time.")]
    for k, v in extra:
        lines.append(f"{k:<9} {v}")
    return "\n".join(lines) + "\n"


def render_records(recs) -> str:
    return "".join(f"{k}={v}\n" for k, v in recs)


def cmd_analyze(args) -> int:
    try:
        dfao = load_dfao(args.file)
    except OSError as exc:
        print(f"analyze: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ParseError, ValueError) as exc:
        print(f"analyze: parse error in {args.file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if not args.mean and not dfao.is_zero_one():
        print("analyze: set mode needs outputs in {0, 1}; use --mean for general outputs", file=sys.stderr)
        return EXIT_PARSE
    started = time.perf_counter()
    try:
        recs = analysis_records(dfao, mean=args.mean, strategy=args.strategy,
                                max_candidates=args.max_candidates, threads=args.threads,
                                do_minimize=args.minimize)
    except InfeasibleInstance as exc:
        print(f"analyze: density stage infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.timing:
        recs.append(("time.seconds", f"{time.perf_counter() - started:.3f}"))
    out = render_records(recs) if args.format == "records" else render_text(recs)
    sys.stdout.write(out)
    return EXIT_OK


def _target(args) -> DensityTarget:
    return DensityTarget(args.alpha, args.beta, args.k)


def cmd_construct(args) -> int:
    try:
        t = _target(args)
    except InadmissibleTarget as exc:
        print(f"construct: inadmissible target: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    s = construct(t)
    if t.trivial:
        summary = f"trivial target ({format_rational(t.alpha)}, {format_rational(t.beta)}): {'full' if t.alpha == 1 else 'empty'} set, K={t.k}"
    else:
        p = construction_parameters(t)
        summary = (f"K={p.K} m={p.m} C={p.C} A={p.A} B={p.B} "
                   f"alpha'={format_rational(p.alpha_prime)} beta'={format_rational(p.beta_prime)}")
    header = (f"# lower density {format_rational(t.alpha)}, upper density {format_rational(t.beta)}\n"
              f"# {summary}\n")
    text = header + format_dfao(s.dfao)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(summary)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        dfao = load_dfao(args.file)
    except (OSError, ParseError, ValueError) as exc:
        print(f"simulate: cannot load {args.file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    trace = simulate(normalize(dfao), args.N, args.stride)
    summary = (f"window n>={trace.window_start}: sup {decimal12(trace.running_sup)} "
               f"inf {decimal12(trace.running_inf)}")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(trace.to_csv())
        print(summary)
    else:
        sys.stdout.write(trace.to_csv())
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        t = _target(args)
    except InadmissibleTarget as exc:
        print(f"verify: inadmissible target: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    s = construct(t)
    checks = []
    rep = densities(s)
    checks.append(("exact lower density", rep.lower == t.alpha, f"{format_rational(rep.lower)} vs {format_rational(t.alpha)}"))
    checks.append(("exact upper density", rep.upper == t.beta, f"{format_rational(rep.upper)} vs {format_rational(t.beta)}"))
    trace = simulate(s.dfao, args.N, stride=max(1, args.N // 100))
    checks.append(("empirical sup", abs(trace.running_sup - t.beta) <= VERIFY_TOLERANCE,
                   f"{decimal12(trace.running_sup)} vs {format_rational(t.beta)} (tol 0.02)"))
    checks.append(("empirical inf", abs(trace.running_inf - t.alpha) <= VERIFY_TOLERANCE,
                   f"{decimal12(trace.running_inf)} vs {format_rational(t.alpha)} (tol 0.02)"))
    failed = None
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        if not ok and failed is None:
            failed = name
    if failed:
        print(f"verify: first failed assertion: {failed}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="densic", description="Exact densities of automatic sets and sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="exact upper/lower density (or limsup/liminf of the mean)")
    a.add_argument("file")
    a.add_argument("--mean", action="store_true", help="treat outputs as a rational sequence, not a set")
    a.add_argument("--threads", type=int, default=_default_threads())
    a.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES)
    a.add_argument("--format", choices=("text", "records"), default="text")
    a.add_argument("--strategy", choices=("policy", "enumerate"), default="policy")
    a.add_argument("--minimize", action="store_true", help="Moore-minimize before analysis")
    a.add_argument("--timing", action="store_true", help="append wall-clock time (breaks byte-identical output)")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", help="automatic set with given lower/upper density")
    c.add_argument("alpha", type=_rational_arg)
    c.add_argument("beta", type=_rational_arg)
    c.add_argument("k", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("simulate", help="brute-force trace of s(n)/n as CSV")
    s.add_argument("file")
    s.add_argument("N", type=int)
    s.add_argument("--stride", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify", help="construct, analyze and simulate a density target")
    v.add_argument("alpha", type=_rational_arg)
    v.add_argument("beta", type=_rational_arg)
    v.add_argument("k", type=int)
    v.add_argument("N", type=int)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
