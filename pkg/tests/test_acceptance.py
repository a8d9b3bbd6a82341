"""Acceptance criteria, one PASS/FAIL line each.

Run directly (``python tests/test_acceptance.py``) to print the lines, or via
pytest, where the lines are repeated in the terminal summary.
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import CORPUS_SEED, rational_dfao  # noqa: E402

from densic.asymptotics import census_constants, partial_sum_exact  # noqa: E402
from densic.automaton import AutomaticSet, format_dfao, kernel_system, word_value  # noqa: E402
from densic.constructor import (  # noqa: E402
    DensityTarget,
    construct,
    even_length_set,
    leading_digit_set,
    powers_of_base_set,
)
from densic.density import (  # noqa: E402
    InfeasibleInstance,
    candidate_count,
    densities,
    kappa,
    kappa_prime,
    liminf_from_table,
    liminf_mean,
    limsup_from_table,
    limsup_mean,
)
from densic.oracle import naive_kappa, naive_kappa_prime, partial_sums, random_corpus, simulate  # noqa: E402

RESULTS: list[str] = []
ROOT = Path(__file__).resolve().parent.parent
F = Fraction


def _corpus():
    return random_corpus(CORPUS_SEED, 50, max_states=4, bases=(2, 3))


def _record(num, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def criterion_1():
    t0 = time.perf_counter()
    rep = densities(even_length_set(2))
    dt = time.perf_counter() - t0
    rep3 = densities(even_length_set(3))
    ok = (
        (rep.lower, rep.upper) == (F(1, 3), F(2, 3))
        and rep.table.a == 2
        and rep.table.c[0] == (F(2, 3), F(1, 3))
        and (rep3.lower, rep3.upper) == (F(1, 4), F(3, 4))
        and dt < 1
    )
    return _record(1, ok, f"even-length base 2 -> ({rep.lower}, {rep.upper}), a={rep.table.a}, "
                          f"c0={[str(c) for c in rep.table.c[0]]}, base 3 -> ({rep3.lower}, {rep3.upper}), {dt:.3f}s")


def criterion_2():
    d = leading_digit_set(3, 1).dfao
    t0 = time.perf_counter()
    hi, w = limsup_mean(d)
    lo, _ = liminf_mean(d)
    dt = time.perf_counter() - t0
    tr = simulate(d, 3**10)
    sim_ok = abs(tr.running_inf - lo) <= F(2, 100) and abs(tr.running_sup - hi) <= F(2, 100)
    ok = hi == F(3, 4) and (w.A, w.B, w.j) == ((1,), (2,), 0) and lo == F(1, 2) and sim_ok and dt < 5
    return _record(2, ok, f"limsup {hi} witness A={w.A} B={w.B} j={w.j}, liminf {lo}, "
                          f"simulated to 3^10: sup {float(tr.running_sup):.4f} inf {float(tr.running_inf):.4f}, {dt:.3f}s")


def realizability_grid():
    vals = sorted({F(p, q) for q in range(2, 7) for p in range(1, q)})
    pairs = [(a, b) for a in vals for b in vals if a <= b] + [(F(0), F(0)), (F(1), F(1))]
    return [(a, b, k) for k in (2, 3) for a, b in pairs]


def criterion_3():
    t0 = time.perf_counter()
    bad = []
    grid = realizability_grid()
    for a, b, k in grid:
        rep = densities(construct(DensityTarget(a, b, k)))
        if (rep.lower, rep.upper) != (a, b):
            bad.append((a, b, k, rep.lower, rep.upper))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 600
    return _record(3, ok, f"{len(grid) - len(bad)}/{len(grid)} targets realized exactly, {dt:.1f}s"
                          + (f", mismatches {bad[:3]}" if bad else ""))


def criterion_4():
    golden = {
        "even2": even_length_set(2).dfao,
        "even3": even_length_set(3).dfao,
        "lead31": leading_digit_set(3, 1).dfao,
        "pow2": powers_of_base_set(2).dfao,
        "rational": rational_dfao(),
    }
    worst = F(0)
    checked = 0
    for d in golden.values():
        ks = kernel_system(d)
        t = census_constants(ks)
        k, a = ks.k, t.a
        n = 0
        while k ** (a * n) <= 10**6:
            n += 1
        for m in range(n, n + 40):
            for j in range(a):
                N = k ** (a * m + j)
                err = abs(partial_sum_exact(d, N, ks) / N - t.c[0][j])
                worst = max(worst, err)
                checked += 1
    ok = worst < F(1, 1000)
    return _record(4, ok, f"{checked} checkpoints past k^(an) > 10^6 on {len(golden)} automata, "
                          f"max error {float(worst):.2e}")


def criterion_5():
    t0 = time.perf_counter()
    sums_ok = kap_ok = True
    for d in _corpus():
        ks = kernel_system(d)
        t = census_constants(ks)
        s = F(0)
        for n in range(3001):
            if partial_sum_exact(d, n, ks) != s:
                sums_ok = False
            s += d.eval(n)
        for L in range(1, 5):
            for idx in range(ks.k**L):
                w = tuple(int(c) for c in np.base_repr(idx, ks.k).zfill(L))
                for j in range(t.a):
                    if w[0] and kappa(ks, t, w, j) != naive_kappa(ks, t, w, j):
                        kap_ok = False
                    for ell in range(ks.d):
                        if kappa_prime(ks, t, ell, w, j) != naive_kappa_prime(ks, t, ell, w, j):
                            kap_ok = False
    dt = time.perf_counter() - t0
    ok = sums_ok and kap_ok and dt < 120
    return _record(5, ok, f"partial sums n<=3000 {'exact' if sums_ok else 'MISMATCH'}, "
                          f"kappa/kappa' length<=4 {'exact' if kap_ok else 'MISMATCH'}, 50 automata, {dt:.1f}s")


def _simulated_window(d, lo=10**3, hi=10**6):
    sums, denom = partial_sums(d, hi)
    ns = np.arange(lo, hi + 1)
    r = np.asarray(sums[lo:hi + 1], dtype=np.float64) / denom / ns
    return float(r.max()), float(r.min())


def criterion_6():
    """Literal check on [10^3, 10^6] plus the enumeration-cap behaviour."""
    over = reach = 0
    infeasible_ok = True
    small_cap = 10**4
    for d in _corpus():
        ks = kernel_system(d)
        t = census_constants(ks)
        hi, _ = limsup_from_table(ks, t)
        lo, _ = liminf_from_table(ks, t)
        smax, smin = _simulated_window(d)
        if smax > hi + 1e-3 or smin < lo - 1e-3:
            over += 1
        if abs(smax - float(hi)) > 0.02 or abs(smin - float(lo)) > 0.02:
            reach += 1
        count = candidate_count(ks.k, ks.d, t.a)
        if all(c == 0 for c in t.c[0]):
            continue  # settled exactly before any enumeration
        try:
            val = limsup_from_table(ks, t, strategy="enumerate", max_candidates=small_cap)
            infeasible_ok &= count <= small_cap and val[0] == hi
        except InfeasibleInstance:
            infeasible_ok &= count > small_cap
    ok = over == 0 and reach == 0 and infeasible_ok
    return _record(6, ok, f"{over}/50 automata have a simulated ratio on [1e3, 1e6] beyond the exact "
                          f"bound by > 1e-3, {reach}/50 miss the exact extreme by > 0.02; "
                          f"cap {small_cap}: over-cap instances {'refused' if infeasible_ok else 'ANSWERED'}")


def criterion_6_asymptotic():
    """Soundness where the transient has died out: exact sums at n ~ k^100."""
    rng = random.Random(6)
    worst_over = F(0)
    worst_gap = F(0)
    for d in _corpus():
        ks = kernel_system(d)
        t = census_constants(ks)
        hi, w_hi = limsup_from_table(ks, t)
        lo, w_lo = liminf_from_table(ks, t)
        k = ks.k
        for _ in range(60):
            n = rng.randrange(k**100, k**103)
            r = partial_sum_exact(d, n, ks) / n
            worst_over = max(worst_over, r - hi, lo - r)
        # the extremes are reached along the witness paths
        for w, target in ((w_hi, hi), (w_lo, lo)):
            if w is None:
                continue
            n = word_value(w.A + w.B * (300 // len(w.B)) + (0,) * w.j, k)
            worst_gap = max(worst_gap, abs(partial_sum_exact(d, n, ks) / n - target))
    ok = worst_over < F(1, 10**6) and worst_gap < F(1, 10**6)
    return _record("6 (supplementary, exact sums at n ~ k^100..k^300)", ok,
                   f"max excess beyond [liminf, limsup] {float(worst_over):.1e}, "
                   f"max gap to limsup/liminf along witnesses {float(worst_gap):.1e}")


def criterion_7():
    bad = 0
    for d in _corpus():
        rep = densities(AutomaticSet(d))
        if (rep.lower == 0) != (rep.upper == 0) or (rep.upper == 1) != (rep.lower == 1):
            bad += 1
    pw = densities(powers_of_base_set(2))
    ok = bad == 0 and (pw.lower, pw.upper) == (0, 0)
    return _record(7, ok, f"{bad} dichotomy violations in 50 reports, powers of 2 -> ({pw.lower}, {pw.upper})")


def _cli(*args, threads=None):
    env = dict(os.environ)
    if threads is not None:
        env["DENSIC_THREADS"] = str(threads)
    res = subprocess.run([sys.executable, "-m", "densic", *args], capture_output=True, env=env, check=True)
    return res.stdout


def criterion_8(tmp_dir: Path):
    files = [ROOT / "automata" / name for name in ("even_length_base2.dfao", "leading_one_base3.dfao")]
    built = tmp_dir / "constructed.dfao"
    built.write_text(format_dfao(construct(DensityTarget(F(1, 3), F(1, 2), 2)).dfao))
    mean = tmp_dir / "mean.dfao"
    mean.write_text(format_dfao(rational_dfao()))
    runs = [[str(f)] for f in (*files, built)] + [
        [str(mean), "--mean"],
        [str(files[0]), "--strategy", "enumerate"],
        [str(files[1]), "--mean", "--strategy", "enumerate"],
    ]
    same = True
    for args in runs:
        text = {_cli("analyze", *args, threads=th) for th in (1, 1, 4, 4)}
        rec = {_cli("analyze", *args, "--format", "records", "--threads", th) for th in ("1", "1", "4")}
        same &= len(text) == 1 and len(rec) == 1
    return _record(8, same, f"{len(runs)} analyze invocations byte-identical across repeats and threads 1 vs 4")


# --- pytest wrappers -------------------------------------------------------------

def test_criterion_1_even_length():
    assert criterion_1()


def test_criterion_2_leading_digit_mean():
    assert criterion_2()


@pytest.mark.slow
def test_criterion_3_realizability_grid():
    assert criterion_3()


def test_criterion_4_census_convergence():
    assert criterion_4()


def test_criterion_5_oracle_equivalence():
    assert criterion_5()


def test_criterion_6_simulation_window():
    assert criterion_6()


def test_criterion_6_exact_asymptotic_soundness():
    assert criterion_6_asymptotic()


def test_criterion_7_dichotomy():
    assert criterion_7()


def test_criterion_8_determinism(tmp_path):
    assert criterion_8(tmp_path)


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                   criterion_6, criterion_6_asymptotic, criterion_7):
            fn()
        criterion_8(Path(tmp))
