"""Sample s(n)/n on a log-spaced grid next to the exact limsup and liminf.

Output columns: n, ratio, limsup, liminf. Good input for any plotting tool;
the ratio should oscillate between the two bounds with shrinking overshoot.

    python scripts/trace_plot_data.py automata/even_length_base2.dfao --max-exp 7
"""

import argparse
import csv
import sys

import numpy as np

from densic.asymptotics import census_constants, partial_sum_exact
from densic.automaton import kernel_system, load_dfao, normalize
from densic.density import liminf_from_table, limsup_from_table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("file")
    ap.add_argument("--max-exp", type=float, default=6.0, help="largest n is 10^max-exp")
    ap.add_argument("--points", type=int, default=400)
    args = ap.parse_args()

    d = normalize(load_dfao(args.file))
    ks = kernel_system(d)
    table = census_constants(ks)
    hi, _ = limsup_from_table(ks, table)
    lo, _ = liminf_from_table(ks, table)
    ns = sorted({int(n) for n in np.logspace(1, args.max_exp, args.points)})
    w = csv.writer(sys.stdout)
    w.writerow(["n", "ratio", "limsup", "liminf"])
    for n in ns:
        r = partial_sum_exact(d, n, ks) / n
        w.writerow([n, f"{float(r):.9f}", f"{float(hi):.9f}", f"{float(lo):.9f}"])


if __name__ == "__main__":
    main()
