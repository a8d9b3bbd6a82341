"""Analyze a seeded random corpus and compare the two limsup strategies.

For each automaton prints base, states, period, limsup, liminf, the witness,
the candidate count the enumerator would need, and both wall times.

    python scripts/corpus_report.py --seed 1 --size 30 --max-states 4
"""

import argparse
import time

from densic.asymptotics import census_constants
from densic.automaton import format_word, kernel_system
from densic.density import InfeasibleInstance, candidate_count, liminf_from_table, limsup_from_table
from densic.oracle import random_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--size", type=int, default=30)
    ap.add_argument("--max-states", type=int, default=4)
    ap.add_argument("--cap", type=int, default=10**6, help="enumeration cap")
    args = ap.parse_args()

    print(f"{'#':>3} {'k':>2} {'d':>2} {'a':>2} {'limsup':>10} {'liminf':>10} {'witness':<20} "
          f"{'cands':>9} {'policy_s':>9} {'enum_s':>9}")
    disagree = 0
    for i, d in enumerate(random_corpus(args.seed, args.size, max_states=args.max_states)):
        ks = kernel_system(d)
        t = census_constants(ks)
        t0 = time.perf_counter()
        hi, w = limsup_from_table(ks, t)
        t_pol = time.perf_counter() - t0
        lo, _ = liminf_from_table(ks, t)
        count = candidate_count(ks.k, ks.d, t.a)
        t0 = time.perf_counter()
        try:
            enum_hi, _ = limsup_from_table(ks, t, strategy="enumerate", max_candidates=args.cap)
            t_enum = f"{time.perf_counter() - t0:9.3f}"
            disagree += enum_hi != hi
        except InfeasibleInstance:
            t_enum = f"{'capped':>9}"
        wit = "-" if w is None else f"{format_word(w.A, ks.k)},{format_word(w.B, ks.k)},{w.j}"
        print(f"{i:>3} {ks.k:>2} {ks.d:>2} {t.a:>2} {str(hi):>10} {str(lo):>10} {wit:<20} "
              f"{count:>9} {t_pol:9.3f} {t_enum}")
    print(f"strategy disagreements: {disagree}")


if __name__ == "__main__":
    main()
