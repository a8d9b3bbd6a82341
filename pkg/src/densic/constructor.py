"""Automatic sets with prescribed lower and upper density, plus named examples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from densic.automaton import DFAO, AutomaticSet
from densic.exact import as_rational


class InadmissibleTarget(ValueError):
    pass


@dataclass(frozen=True)
class DensityTarget:
    alpha: Fraction
    beta: Fraction
    k: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        object.__setattr__(self, "beta", as_rational(self.beta))
        a, b = self.alpha, self.beta
        if self.k < 2:
            raise InadmissibleTarget(f"base must be >= 2, got {self.k}")
        if (a, b) in ((0, 0), (1, 1)):
            return
        if a > b:
            raise InadmissibleTarget(f"alpha <= beta violated: {a} > {b}")
        if a <= 0:
            raise InadmissibleTarget(f"0 < alpha violated (alpha = {a}); only (0, 0) may have alpha = 0")
        if b >= 1:
            raise InadmissibleTarget(f"beta < 1 violated (beta = {b}); only (1, 1) may have beta = 1")

    @property
    def trivial(self) -> bool:
        return (self.alpha, self.beta) in ((0, 0), (1, 1))


@dataclass(frozen=True)
class Construction:
    """Parameters of the residue/length-parity construction in base K = k^m."""

    m: int
    K: int
    alpha_prime: Fraction
    beta_prime: Fraction
    C: int
    A: int
    B: int


def construction_parameters(t: DensityTarget) -> Construction:
    alpha, beta = t.alpha, t.beta
    m = 1
    while True:
        K = t.k**m
        if K * alpha >= beta and K * beta < K - 1:
            break
        m += 1
    ap = (K * alpha - beta) / (K - 1)
    bp = (K * beta - alpha) / (K - 1)
    C = math.lcm(ap.denominator, bp.denominator)
    return Construction(m, K, ap, bp, C, int(ap * C), int(bp * C))


def _constant_set(k: int, bit: int) -> AutomaticSet:
    return AutomaticSet(DFAO(k, ((0,) * k,), (bit,), 0))


def construct(t: DensityTarget) -> AutomaticSet:
    """A K-automatic set (K a power of k) with lower density alpha, upper density beta.

    n is in the set iff its base-K expansion has even length and n mod C < A,
    or odd length and n mod C < B.
    """
    if t.trivial:
        return _constant_set(t.k, int(t.alpha))
    p = construction_parameters(t)
    K, C = p.K, p.C

    def idx(parity, r):
        return 1 + parity * C + r

    trans = [None] * (1 + 2 * C)
    outs = [0] * (1 + 2 * C)
    trans[0] = tuple(0 if x == 0 else idx(1, x % C) for x in range(K))
    outs[0] = int(0 < p.A)
    for parity in (0, 1):
        for r in range(C):
            trans[idx(parity, r)] = tuple(idx(1 - parity, (K * r + x) % C) for x in range(K))
            outs[idx(parity, r)] = int(r < (p.A if parity == 0 else p.B))
    return AutomaticSet(DFAO(K, tuple(trans), tuple(outs), 0))


def in_constructed_set(t: DensityTarget, n: int) -> bool:
    """Direct membership test for construct(t), without running the automaton."""
    if t.trivial:
        return t.alpha == 1
    p = construction_parameters(t)
    length, x = 0, n
    while x:
        x //= p.K
        length += 1
    bound = p.A if length % 2 == 0 else p.B
    return n % p.C < bound


def even_length_set(k: int) -> AutomaticSet:
    """Numbers whose base-k expansion has even length (0 counts: empty expansion)."""
    if k < 2:
        raise ValueError("base must be >= 2")
    trans = ((0,) + (1,) * (k - 1), (2,) * k, (1,) * k)
    return AutomaticSet(DFAO(k, trans, (1, 0, 1), 0))


def leading_digit_set(k: int, digit: int) -> AutomaticSet:
    """Numbers whose most significant base-k digit equals ``digit``.

    States: 0 waits for the first nonzero digit, 1 rejects, 2 accepts.
    """
    if not 1 <= digit <= k - 1:
        raise ValueError(f"digit must be in 1..{k - 1}")
    first = tuple(0 if x == 0 else (2 if x == digit else 1) for x in range(k))
    trans = (first, (1,) * k, (2,) * k)
    return AutomaticSet(DFAO(k, trans, (0, 0, 1), 0))


def powers_of_base_set(k: int) -> AutomaticSet:
    """{k^n : n >= 0}, the expansions 1 0*."""
    trans = ((0, 1) + (2,) * (k - 2), (1,) + (2,) * (k - 1), (2,) * k)
    return AutomaticSet(DFAO(k, trans, (0, 1, 0), 0))
