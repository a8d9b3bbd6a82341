"""Exact limsup / liminf of s(n)/n for automatic sequences and sets.

Two interchangeable strategies compute the limsup:

``policy`` (default)
    Treats the limit of s(n)/n along an infinite digit path as a ratio of two
    discounted path sums and maximizes it exactly with Dinkelbach iteration
    over policy iteration on the (state, length-residue) graph. The optimum
    is attained on an eventually periodic path; the reported witness is the
    least (j, |A|+|B|, A, B) among bounded candidates reaching it.

``enumerate``
    Evaluates the closed-form candidate value for every admissible
    (A, B, j) with |A| + |B| <= (2d+1)a and returns the maximum. Exponential,
    guarded by ``max_candidates``; optionally fanned out over processes.

Both use the same tie-break, so they return identical results.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from densic.asymptotics import AsymptoticTable, census_constants
from densic.automaton import DFAO, AutomaticSet, KernelSystem, Word, kernel_system, normalize, word_value

DEFAULT_MAX_CANDIDATES = 10**8


class InfeasibleInstance(RuntimeError):
    """The candidate enumeration would exceed the configured cap."""


class InvalidWitness(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    A: Word
    B: Word
    j: int
    value: Fraction

    @property
    def length(self) -> int:
        return len(self.A) + len(self.B)

    def sort_key(self):
        return (self.j, self.length, self.A, self.B)


class TrivialCase(enum.Enum):
    NONE = "none"
    ZERO = "zero"
    ONE = "one"


class Dichotomy(enum.Enum):
    ZERO = "zero"
    ONE = "one"
    INTERIOR = "interior"


@dataclass(frozen=True)
class DensityReport:
    upper: Fraction
    lower: Fraction
    witness_upper: Witness | None
    witness_lower: Witness | None
    table: AsymptoticTable
    trivial_case: TrivialCase = TrivialCase.NONE


def with_outputs(ks: KernelSystem, v0) -> KernelSystem:
    return KernelSystem(ks.k, ks.delta, tuple(Fraction(x) for x in v0), ks.B)


# --- kappa, kappa' and the candidate formula ---------------------------------

def _prefix_weight(ks: KernelSystem, col: Sequence, start: int, word: Sequence[int]) -> Fraction:
    # sum over v < word (same length) of col[delta(start, v)], position by position
    L = len(word)
    powers = [list(col)]
    for _ in range(L - 1):
        powers.append(ks.B.apply(powers[-1]))
    total = Fraction(0)
    q = start
    for t, x in enumerate(word):
        tail = powers[L - t - 1]
        row = ks.delta[q]
        for y in range(x):
            total += tail[row[y]]
        q = row[x]
    return total


def kappa(ks: KernelSystem, table: AsymptoticTable, A: Sequence[int], j: int) -> Fraction:
    if not A or A[0] == 0:
        raise InvalidWitness("A must be nonempty without a leading zero")
    return _prefix_weight(ks, table.column(j), 0, A)


def kappa_prime(ks: KernelSystem, table: AsymptoticTable, ell: int, Bword: Sequence[int], j: int) -> Fraction:
    if not Bword:
        raise InvalidWitness("B must be nonempty")
    return _prefix_weight(ks, table.column(j), ell, Bword)


def check_witness(ks: KernelSystem, table: AsymptoticTable, A: Sequence[int], Bword: Sequence[int], j: int):
    a = table.a
    if not A or A[0] == 0:
        raise InvalidWitness("A must be nonempty without a leading zero")
    if not Bword:
        raise InvalidWitness("B must be nonempty")
    if len(A) % a or len(Bword) % a:
        raise InvalidWitness(f"word lengths must be multiples of the period {a}")
    if not 0 <= j < a:
        raise InvalidWitness(f"residue j={j} outside 0..{a - 1}")
    ell = ks.run(0, A)
    if ks.run(ell, Bword) != ell:
        raise InvalidWitness("B does not return the state reached after A to itself")
    return ell


def candidate_value(ks: KernelSystem, table: AsymptoticTable, A: Sequence[int], Bword: Sequence[int], j: int) -> Fraction:
    """Limit of s(n)/n along n = [A B^m w]_k, m -> oo, |w| = j mod a."""
    ell = check_witness(ks, table, A, Bword, j)
    k = ks.k
    K1 = k ** len(Bword) - 1
    num = kappa(ks, table, A, j) + kappa_prime(ks, table, ell, Bword, j) / K1
    den = word_value(A, k) + Fraction(word_value(Bword, k), K1)
    return num / den


# --- policy strategy ----------------------------------------------------------

class _PathGraph:
    """Infinite digit paths on (state, residue) nodes with discount 1/k.

    The digit at position t of a length-L expansion (L = j mod a) pairs with
    the census column (L - t - 1) mod a, so the residue drops by one per digit.
    """

    def __init__(self, ks: KernelSystem, table: AsymptoticTable):
        self.k = ks.k
        self.a = a = table.a
        self.d = ks.d
        self.n = self.d * a
        self.inv_k = Fraction(1, self.k)
        k = self.k
        self.succ = []
        self.gain = []
        for q in range(self.d):
            row = ks.delta[q]
            for r in range(a):
                self.succ.append([row[x] * a + (r - 1) % a for x in range(k)])
                acc, pref = Fraction(0), []
                for x in range(k):
                    pref.append(acc)
                    acc += table.c[row[x]][r]
                self.gain.append(pref)

    def start(self, j: int) -> int:
        return (j - 1) % self.a

    def evaluate(self, policy, reward) -> list:
        """Exact discounted value of following ``policy`` forever from each node."""
        n, inv_k = self.n, self.inv_k
        value: list = [None] * n
        on_path = [-1] * n
        for root in range(n):
            if value[root] is not None:
                continue
            path = []
            u = root
            while value[u] is None and on_path[u] < 0:
                on_path[u] = len(path)
                path.append(u)
                u = self.succ[u][policy[u]]
            if value[u] is None:
                cyc = path[on_path[u]:]
                rs = [reward(v, policy[v]) for v in cyc]
                acc, w = Fraction(0), Fraction(1)
                for r in rs:
                    acc += w * r
                    w *= inv_k
                value[cyc[0]] = acc / (1 - w)
                for v, r in zip(reversed(cyc[1:]), reversed(rs[1:])):
                    nxt = self.succ[v][policy[v]]
                    value[v] = r + inv_k * value[nxt]
                path = path[:on_path[u]]
            for v in reversed(path):
                value[v] = reward(v, policy[v]) + inv_k * value[self.succ[v][policy[v]]]
            for v in path:
                on_path[v] = -1
        for v in range(n):
            on_path[v] = -1
        return value

    def solve(self, gamma, policy=None):
        """Optimal values of gain - gamma * digit by policy iteration."""
        k, inv_k = self.k, self.inv_k

        def reward(v, x):
            return self.gain[v][x] - gamma * x

        if policy is None:
            policy = [max(range(k), key=lambda x, v=v: (reward(v, x), -x)) for v in range(self.n)]
        while True:
            value = self.evaluate(policy, reward)
            changed = False
            for v in range(self.n):
                succ = self.succ[v]
                cur = policy[v]
                best_x, best = cur, value[v]
                for x in range(k):
                    q = reward(v, x) + inv_k * value[succ[x]]
                    if q > best:
                        best_x, best = x, q
                if best_x != cur:
                    policy[v] = best_x
                    changed = True
            if not changed:
                return policy, value, reward


def _limsup_policy(ks: KernelSystem, table: AsymptoticTable) -> tuple[Fraction, Witness]:
    g = _PathGraph(ks, table)
    k, a, inv_k = g.k, g.a, g.inv_k
    gamma = Fraction(0)
    policy = None
    while True:
        policy, value, reward = g.solve(gamma, policy)
        best = None
        for j in range(a):
            s = g.start(j)
            for x in range(1, k):
                h = reward(s, x) + inv_k * value[g.succ[s][x]]
                if best is None or h > best[0]:
                    best = (h, j, x)
        h, j, x = best
        if h == 0:
            break
        assert h > 0
        s = g.start(j)
        nxt = g.succ[s][x]
        F = g.gain[s][x] + inv_k * g.evaluate(policy, lambda v, y: g.gain[v][y])[nxt]
        V = x + inv_k * g.evaluate(policy, lambda v, y: y)[nxt]
        new_gamma = F / V
        assert new_gamma > gamma
        gamma = new_gamma

    def opt_edges(v):
        return [x for x in range(k) if reward(v, x) + inv_k * value[g.succ[v][x]] == value[v]]

    edges = [opt_edges(v) for v in range(g.n)]
    witness = _least_witness(ks, table, g, edges, reward, value, gamma)
    return gamma, witness


def _least_witness(ks, table, g: _PathGraph, edges, reward, value, gamma) -> Witness:
    """Least (j, |A|+|B|, A, B) whose path A B^w stays on optimal edges."""
    k, a, inv_k = g.k, g.a, g.inv_k
    succ = g.succ
    pred: list[set] = [set() for _ in range(g.n)]
    for v in range(g.n):
        for x in edges[v]:
            pred[succ[v][x]].add(v)

    def backward(targets, steps):
        layers = [set(targets)]
        for _ in range(steps):
            layers.append({p for u in layers[-1] for p in pred[u]})
        return layers

    def forward(src, steps, first=None):
        cur = {src}
        for t in range(steps):
            cur = {succ[u][x] for u in cur for x in (first if t == 0 and first is not None else edges[u])}
        return cur

    def least_path(src, first, layers, steps):
        word, u = [], src
        for t in range(steps):
            allowed = first if t == 0 and first is not None else edges[u]
            goal = layers[steps - t - 1]
            x = next(x for x in allowed if succ[u][x] in goal)
            word.append(x)
            u = succ[u][x]
        return tuple(word), u

    max_total = (2 * g.d + 1) * a
    for j in range(a):
        s = g.start(j)
        first = [x for x in range(1, k) if reward(s, x) + inv_k * value[succ[s][x]] == 0]
        if not first:
            continue
        for total in range(2 * a, max_total + 1, a):
            best = None
            for la in range(a, total, a):
                lb = total - la
                ends = [u for u in forward(s, la, first) if u in forward(u, lb)]
                if not ends:
                    continue
                A, end = least_path(s, first, backward(ends, la), la)
                Bw, back = least_path(end, None, backward([end], lb), lb)
                assert back == end
                cand = (A, Bw)
                if best is None or cand < best:
                    best = cand
            if best is not None:
                A, Bw = best
                w = Witness(A, Bw, j, gamma)
                if candidate_value(ks, table, A, Bw, j) != gamma:
                    raise AssertionError("witness value disagrees with the optimum")
                return w
    raise AssertionError(f"no witness with |A|+|B| <= {max_total}")


# --- enumerate strategy ------------------------------------------------------------

def candidate_count(k: int, d: int, a: int) -> int:
    """Number of (A, B, j) triples before the state-return filter."""
    top = (2 * d + 1) * a
    total = 0
    for la in range(a, top, a):
        for lb in range(a, top - la + 1, a):
            total += (k - 1) * k ** (la - 1) * k**lb
    return a * total


def _extend(delta, d, k, frontier):
    # frontier items: (word, counts, state, value); counts[r] = #{v < word : run(v) = r}
    out = []
    for word, counts, q, val in frontier:
        carried = [0] * d
        for p, cnt in enumerate(counts):
            if cnt:
                for t in delta[p]:
                    carried[t] += cnt
        row = delta[q]
        for x in range(k):
            nxt = carried[:]
            for y in range(x):
                nxt[row[y]] += 1
            out.append((word + (x,), nxt, row[x], val * k + x))
    return out


def _words_by_length(delta, k, start, lengths, nonzero_first):
    d = len(delta)
    want = set(lengths)
    frontier = [((), [0] * d, start, 0)]
    found = {}
    for L in range(1, max(lengths) + 1):
        frontier = _extend(delta, d, k, frontier)
        if L == 1 and nonzero_first:
            frontier = [f for f in frontier if f[0][0] != 0]
        if L in want:
            found[L] = frontier
    return found


def _enumerate_task(args):
    delta, k, a, col, j, la, top = args
    d = len(delta)
    best = None
    lbs = list(range(a, top - la + 1, a))
    if not lbs:
        return None
    a_words = _words_by_length(delta, k, 0, [la], True)[la]
    loops: dict = {}
    for A, na, ell, va in a_words:
        if ell not in loops:
            found = _words_by_length(delta, k, ell, lbs, False)
            loops[ell] = {lb: [w for w in found[lb] if w[2] == ell] for lb in lbs}
        kap = sum(c * x for c, x in zip(col, na) if c)
        for lb in lbs:
            K1 = k**lb - 1
            for Bw, nb, _, vb in loops[ell][lb]:
                kp = sum(c * x for c, x in zip(col, nb) if c)
                val = (kap + Fraction(kp) / K1) / (va + Fraction(vb, K1))
                key = (j, la + lb, A, Bw)
                if best is None or val > best[0] or (val == best[0] and key < best[1]):
                    best = (val, key)
    return best


def _limsup_enumerate(ks, table, max_candidates, threads) -> tuple[Fraction, Witness | None]:
    k, d, a = ks.k, ks.d, table.a
    count = candidate_count(k, d, a)
    if count > max_candidates:
        raise InfeasibleInstance(
            f"enumeration needs {count} candidates (k={k}, d={d}, a={a}), cap is {max_candidates}"
        )
    top = (2 * d + 1) * a
    tasks = [(ks.delta, k, a, table.column(j), j, la, top) for j in range(a) for la in range(a, top, a)]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_enumerate_task, tasks))
    else:
        results = [_enumerate_task(t) for t in tasks]
    best = None
    for r in results:
        if r is None:
            continue
        if best is None or r[0] > best[0] or (r[0] == best[0] and r[1] < best[1]):
            best = r
    if best is None:
        return Fraction(0), None
    val, (j, _, A, Bw) = best
    return val, Witness(A, Bw, j, val)


# --- public entry points --------------------------------------------------------

def _prepare(d: DFAO):
    ks = kernel_system(normalize(d))
    return ks, census_constants(ks)


def limsup_from_table(ks: KernelSystem, table: AsymptoticTable, *, strategy: str = "policy",
                      max_candidates: int = DEFAULT_MAX_CANDIDATES, threads: int = 1):
    if all(x == 0 for x in table.c[0]):
        return Fraction(0), None
    if strategy == "policy":
        return _limsup_policy(ks, table)
    if strategy == "enumerate":
        val, w = _limsup_enumerate(ks, table, max_candidates, threads)
        if w is None:
            raise AssertionError("positive census constants but no admissible candidate")
        return val, w
    raise ValueError(f"unknown strategy {strategy!r}")


def limsup_mean(d: DFAO, **opts) -> tuple[Fraction, Witness | None]:
    """limsup of s(n)/n with s(n) = h(0) + ... + h(n-1)."""
    ks, table = _prepare(d)
    return limsup_from_table(ks, table, **opts)


def liminf_from_table(ks: KernelSystem, table: AsymptoticTable, **opts):
    top = max(ks.v0)
    if top == 0:
        return Fraction(0), None
    flipped = with_outputs(ks, [top - x for x in ks.v0])
    val, w = limsup_from_table(flipped, table.reflected(top), **opts)
    return top - val, w


def liminf_mean(d: DFAO, **opts) -> tuple[Fraction, Witness | None]:
    """liminf of s(n)/n, via limsup of the outputs reflected about their maximum."""
    ks, table = _prepare(d)
    return liminf_from_table(ks, table, **opts)


def dichotomy(s: AutomaticSet, table: AsymptoticTable | None = None) -> Dichotomy:
    if table is None:
        table = _prepare(s.dfao)[1]
    head = table.c[0]
    if all(x == 0 for x in head):
        return Dichotomy.ZERO
    if all(x == 1 for x in head):
        return Dichotomy.ONE
    return Dichotomy.INTERIOR


def densities(s: AutomaticSet, **opts) -> DensityReport:
    ks, table = _prepare(s.dfao)
    kind = dichotomy(s, table)
    if kind is Dichotomy.ZERO:
        return DensityReport(Fraction(0), Fraction(0), None, None, table, TrivialCase.ZERO)
    if kind is Dichotomy.ONE:
        return DensityReport(Fraction(1), Fraction(1), None, None, table, TrivialCase.ONE)
    upper, wu = limsup_from_table(ks, table, **opts)
    comp = with_outputs(ks, [1 - x for x in ks.v0])
    comp_upper, wl = limsup_from_table(comp, table.reflected(1), **opts)
    lower = 1 - comp_upper
    if not 0 < lower <= upper < 1:
        raise AssertionError(f"zero/one dichotomy violated: lower={lower}, upper={upper}")
    return DensityReport(upper, lower, wu, wl, table, TrivialCase.NONE)
