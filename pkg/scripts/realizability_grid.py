"""Construct a set for every (alpha, beta) on a rational grid and re-analyze it.

Writes one CSV row per target: the construction parameters, the analyzed
densities and the wall time. Exits nonzero if any target is missed.

    python scripts/realizability_grid.py --max-den 6 --bases 2 3 -o grid.csv
"""

import argparse
import csv
import sys
import time
from fractions import Fraction

from densic.constructor import DensityTarget, construct, construction_parameters
from densic.density import densities


def grid(max_den):
    vals = sorted({Fraction(p, q) for q in range(2, max_den + 1) for p in range(1, q)})
    yield Fraction(0), Fraction(0)
    yield from ((a, b) for a in vals for b in vals if a <= b)
    yield Fraction(1), Fraction(1)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-den", type=int, default=6)
    ap.add_argument("--bases", type=int, nargs="+", default=[2, 3])
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args()

    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    w = csv.writer(out)
    w.writerow(["alpha", "beta", "k", "K", "C", "states", "lower", "upper", "exact", "seconds"])
    misses = 0
    for k in args.bases:
        for a, b in grid(args.max_den):
            t = DensityTarget(a, b, k)
            t0 = time.perf_counter()
            s = construct(t)
            rep = densities(s)
            dt = time.perf_counter() - t0
            K, C = (k, "") if t.trivial else (construction_parameters(t).K, construction_parameters(t).C)
            exact = (rep.lower, rep.upper) == (a, b)
            misses += not exact
            w.writerow([a, b, k, K, C, s.dfao.state_count, rep.lower, rep.upper, int(exact), f"{dt:.3f}"])
    if out is not sys.stdout:
        out.close()
    print(f"{misses} targets missed", file=sys.stderr)
    return 1 if misses else 0


if __name__ == "__main__":
    sys.exit(main())
