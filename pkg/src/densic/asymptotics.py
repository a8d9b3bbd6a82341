"""Growth constants of automatic partial sums.

For a kernel system with digit-sum matrix B and output vector v0, the sums
``e_i^T B^n v0`` (total output over all length-n words read from state i)
behave like ``c[i][n mod a] * k^n``. This module finds the period ``a`` and
the exact constants ``c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce

from densic.automaton import DFAO, KernelSystem, NotNormalizedError, digits, kernel_system, normalize
from densic.exact import (
    Matrix,
    Polynomial,
    as_rational,
    cyclotomic,
    divide_linear,
    eval_poly_at_matrix,
    eval_poly_on_vector,
    mat_pow,
    minimal_polynomial,
    poly_divides,
)


class SpectralAssertionError(AssertionError):
    """A structural fact about row-sum-k nonnegative matrices failed to hold."""


def _totients(limit: int) -> list[int]:
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:
            for m in range(p, limit + 1, p):
                phi[m] -= phi[m] // p
    return phi


def period_bound(d: int) -> int:
    """prod over primes p <= d of p^floor(log_p d), i.e. lcm(1, ..., d)."""
    return math.lcm(*range(1, d + 1)) if d > 1 else 1


def peripheral_orders(ks: KernelSystem) -> list[int]:
    """Orders n of the roots of unity w such that k*w is an eigenvalue of B."""
    k, d = ks.k, ks.d
    m = minimal_polynomial(ks.B)
    if m(k) != 0:
        raise SpectralAssertionError(f"{k} is not an eigenvalue of the digit-sum matrix")
    g = m.scale_argument(k)
    # phi(n) >= sqrt(n/2), so phi(n) <= top forces n <= 2*top^2
    top = min(d, g.degree)
    phi = _totients(2 * top * top)
    return [n for n in range(1, len(phi)) if phi[n] <= top and poly_divides(cyclotomic(n), g)]


def period(ks: KernelSystem) -> int:
    orders = peripheral_orders(ks)
    a = reduce(math.lcm, orders, 1)
    if period_bound(ks.d) % a:
        raise SpectralAssertionError(f"period {a} does not divide lcm(1..{ks.d})")
    return a


@dataclass(frozen=True)
class AsymptoticTable:
    """Period ``a`` and constants ``c[i][j]`` with e_i^T B^(an+j) v0 ~ c[i][j] k^(an+j)."""

    k: int
    a: int
    c: tuple[tuple[Fraction, ...], ...]
    power: Matrix = field(repr=False, compare=False)
    q0: Polynomial = field(repr=False, compare=False)
    lam: Fraction = field(repr=False, compare=False)

    @property
    def d(self) -> int:
        return len(self.c)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j % self.a] for row in self.c)

    @cached_property
    def projector(self) -> Matrix:
        """Spectral projector of B^a onto its k^a eigenspace."""
        return eval_poly_at_matrix(self.q0, self.power).scale(1 / self.lam)

    def reflected(self, top) -> AsymptoticTable:
        """Table for the outputs ``top - v0`` (the projector fixes the all-ones vector)."""
        top = as_rational(top)
        c = tuple(tuple(top - x for x in row) for row in self.c)
        return AsymptoticTable(self.k, self.a, c, self.power, self.q0, self.lam)

    def scaled(self, r) -> AsymptoticTable:
        r = as_rational(r)
        c = tuple(tuple(r * x for x in row) for row in self.c)
        return AsymptoticTable(self.k, self.a, c, self.power, self.q0, self.lam)


def census_constants(ks: KernelSystem, a: int | None = None) -> AsymptoticTable:
    k = ks.k
    if a is None:
        a = period(ks)
    Ba = mat_pow(ks.B, a)
    ka = k**a
    q = minimal_polynomial(Ba)
    q0, rem = divide_linear(q, ka)
    if rem != 0:
        raise SpectralAssertionError(f"k^a = {ka} is not an eigenvalue of B^a")
    lam = q0(ka)
    if lam == 0:
        raise SpectralAssertionError("peripheral eigenvalue not semisimple")
    lam = Fraction(lam)
    cols = []
    w = list(ks.v0)
    for j in range(a):
        if j:
            w = ks.B.apply(w)
        proj = eval_poly_on_vector(q0, Ba, w)
        scale = lam * k**j
        cols.append([Fraction(x) / scale for x in proj])
    c = tuple(tuple(cols[j][i] for j in range(a)) for i in range(ks.d))
    top = max(ks.v0)
    if any(not 0 <= x <= top for row in c for x in row):
        raise SpectralAssertionError("census constant outside [0, max output]")
    return AsymptoticTable(k, a, c, Ba, q0, lam)


def analyze_growth(d: DFAO) -> tuple[KernelSystem, AsymptoticTable]:
    ks = kernel_system(normalize(d))
    return ks, census_constants(ks)


def _require_normalized(d: DFAO):
    if not d.is_normalized():
        raise NotNormalizedError("partial sums need δ(initial, 0) = initial; call normalize() first")


def partial_sum_exact(d: DFAO, n: int, ks: KernelSystem | None = None) -> Fraction:
    """s(n) = sum of h(j) over j < n, in O(log n) matrix-vector steps."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if ks is None:
        _require_normalized(d)
        ks = kernel_system(d)
    word = digits(n, ks.k)
    L = len(word)
    sums = [list(ks.v0)]
    for _ in range(L - 1):
        sums.append(ks.B.apply(sums[-1]))
    total = Fraction(0)
    q = 0
    for t, x in enumerate(word):
        tail = sums[L - t - 1]
        row = ks.delta[q]
        for y in range(x):
            total += tail[row[y]]
        q = row[x]
    return total


def census_sum(ks: KernelSystem, i: int, length: int) -> Fraction:
    """Sum of f_i over all words of the given length, e_i^T B^length v0."""
    vec = list(ks.v0)
    for _ in range(length):
        vec = ks.B.apply(vec)
    return Fraction(vec[i])
