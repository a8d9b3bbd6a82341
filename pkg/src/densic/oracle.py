"""Brute-force counterparts of the symbolic routines, for cross-checking."""

from __future__ import annotations

import csv
import io
import itertools
import math
import random
from decimal import Decimal, localcontext
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from densic.asymptotics import AsymptoticTable
from densic.automaton import DFAO, KernelSystem, normalize
from densic.exact import format_rational

NAIVE_SUM_LIMIT = 10**6
NAIVE_KAPPA_MAX_LEN = 6
SIMULATE_LIMIT = 10**8


class CostGuardError(ValueError):
    pass


def decimal12(q) -> str:
    """Decimal rendering to 12 significant digits, correctly rounded."""
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = 12
        return format(Decimal(q.numerator) / Decimal(q.denominator), "g")


@dataclass
class Trace:
    samples: list[tuple[int, Fraction, Fraction]] = field(default_factory=list)
    running_sup: Fraction | None = None
    running_inf: Fraction | None = None
    window_start: int = 1
    N: int = 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "s", "ratio"])
        for n, s, ratio in self.samples:
            w.writerow([n, format_rational(s), decimal12(ratio)])
        return buf.getvalue()


def state_array(d: DFAO, N: int) -> np.ndarray:
    """State reached on the canonical expansion of every n in [0, N)."""
    k = d.base
    table = np.asarray(d.transitions, dtype=np.int64)
    states = np.empty(N, dtype=np.int64)
    states[0] = d.initial
    lo = 1
    while lo < N:
        hi = min(lo * k, N)
        ns = np.arange(lo, hi, dtype=np.int64)
        states[lo:hi] = table[states[ns // k], ns % k]
        lo = hi
    return states


def partial_sums(d: DFAO, N: int) -> tuple[np.ndarray, int]:
    """Scaled integer partial sums: s(n) = sums[n] / denom for n = 0..N."""
    denom = math.lcm(*(o.denominator for o in d.outputs))
    scaled = np.asarray([int(o * denom) for o in d.outputs], dtype=object)
    if max(scaled) * N < 2**62:
        scaled = scaled.astype(np.int64)
    values = scaled[state_array(d, N)]
    sums = np.zeros(N + 1, dtype=values.dtype)
    np.cumsum(values, out=sums[1:])
    return sums, denom


def simulate(d: DFAO, N: int, stride: int = 1, burn_in: int | None = None) -> Trace:
    """Stream s(n)/n for n = 1..N.

    Every ``stride``-th point is recorded; the running sup and inf are taken
    over n >= N / k^2 unless ``burn_in`` overrides the window start.
    """
    if N < 1 or stride < 1:
        raise ValueError("N and stride must be positive")
    if N > SIMULATE_LIMIT:
        raise CostGuardError(f"simulation capped at {SIMULATE_LIMIT} steps")
    k = d.base
    sums, denom = partial_sums(d, N)
    start = max(1, N // (k * k)) if burn_in is None else max(1, burn_in)
    trace = Trace(window_start=start, N=N)
    for n in range(stride, N + 1, stride):
        s = Fraction(int(sums[n]), denom)
        trace.samples.append((n, s, s / n))
    trace.running_sup, trace.running_inf = window_extremes(sums, denom, start, N)
    return trace


def window_extremes(sums, denom, lo: int, hi: int) -> tuple[Fraction, Fraction]:
    """Exact max and min of s(n)/n over lo <= n <= hi."""
    ns = np.arange(lo, hi + 1)
    ratios = np.asarray(sums[lo:hi + 1], dtype=np.float64) / ns
    top, bot = ratios.max(), ratios.min()
    near_top = np.nonzero(ratios >= top - 1e-9 * max(1.0, abs(top)))[0]
    near_bot = np.nonzero(ratios <= bot + 1e-9 * max(1.0, abs(bot)))[0]
    sup = max(Fraction(int(sums[lo + i]), denom * (lo + int(i))) for i in near_top)
    inf = min(Fraction(int(sums[lo + i]), denom * (lo + int(i))) for i in near_bot)
    return sup, inf


def naive_partial_sum(d: DFAO, n: int) -> Fraction:
    if n > NAIVE_SUM_LIMIT:
        raise CostGuardError(f"naive partial sums are capped at n <= {NAIVE_SUM_LIMIT}")
    return sum((d.eval(j) for j in range(n)), Fraction(0))


def _words_below(word: Sequence[int], k: int):
    L = len(word)
    target = tuple(word)
    for v in itertools.product(range(k), repeat=L):
        if v < target:
            yield v


def naive_kappa(ks: KernelSystem, table: AsymptoticTable, A: Sequence[int], j: int) -> Fraction:
    """Literal sum of c[delta(0, v)][j] over all v < A with |v| = |A|."""
    return naive_kappa_prime(ks, table, 0, A, j)


def naive_kappa_prime(ks: KernelSystem, table: AsymptoticTable, ell: int, Bword: Sequence[int], j: int) -> Fraction:
    if len(Bword) > NAIVE_KAPPA_MAX_LEN:
        raise CostGuardError(f"literal kappa sums are capped at length {NAIVE_KAPPA_MAX_LEN}")
    col = table.column(j)
    return sum((col[ks.run(ell, v)] for v in _words_below(Bword, ks.k)), Fraction(0))


def naive_census(ks: KernelSystem, i: int, length: int) -> Fraction:
    """Sum of f_i(w) over all words of the given length, by enumeration."""
    return sum((ks.kernel_value(i, w) for w in itertools.product(range(ks.k), repeat=length)), Fraction(0))


def random_dfao(rng: random.Random, *, max_states: int = 4, bases: Sequence[int] = (2, 3),
                outputs: Sequence = (0, 1)) -> DFAO:
    """A random normalized automaton with at most ``max_states`` reachable states."""
    while True:
        k = rng.choice(bases)
        m = rng.randint(1, max_states)
        trans = tuple(tuple(rng.randrange(m) for _ in range(k)) for _ in range(m))
        outs = tuple(Fraction(rng.choice(outputs)) for _ in range(m))
        d = normalize(DFAO(k, trans, outs, 0))
        if d.state_count <= max_states:
            return d


def random_corpus(seed: int, size: int = 50, **kw) -> list[DFAO]:
    rng = random.Random(seed)
    return [random_dfao(rng, **kw) for _ in range(size)]
