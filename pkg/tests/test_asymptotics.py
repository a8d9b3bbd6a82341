import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from densic.asymptotics import (
    analyze_growth,
    census_constants,
    census_sum,
    partial_sum_exact,
    period,
    period_bound,
    peripheral_orders,
)
from densic.automaton import DFAO, kernel_system, normalize
from densic.constructor import even_length_set, leading_digit_set
from densic.exact import Matrix, mat_pow
from densic.oracle import naive_partial_sum, random_dfao


def test_period_bound():
    assert [period_bound(d) for d in range(1, 7)] == [1, 2, 6, 12, 60, 60]


def test_even_length_table():
    ks, t = analyze_growth(even_length_set(2).dfao)
    assert t.a == 2
    assert t.c[0] == (Fraction(2, 3), Fraction(1, 3))
    assert t.c[1] == (0, 1) and t.c[2] == (1, 0)
    assert peripheral_orders(ks) == [1, 2]


def test_leading_digit_table():
    _, t = analyze_growth(leading_digit_set(3, 1).dfao)
    assert t.a == 1
    assert t.c == ((Fraction(1, 2),), (0,), (1,))


def test_period_three_cycle():
    # lengths counted mod 3: peripheral eigenvalues 2, 2w, 2w^2
    d = DFAO(2, ((0, 1), (2, 2), (3, 3), (1, 1)), (0, 1, 0, 0), 0)
    ks = kernel_system(d)
    assert period(ks) == 3
    t = census_constants(ks)
    # ends in the output state iff the digits after the leading 1 number 0 mod 3
    assert t.c[0] == (Fraction(1, 7), Fraction(4, 7), Fraction(2, 7))


@pytest.fixture(scope="module")
def tables():
    rng = random.Random(5)
    out = []
    for _ in range(30):
        d = random_dfao(rng, max_states=4, outputs=(0, 1, Fraction(1, 3)))
        ks = kernel_system(d)
        out.append((d, ks, census_constants(ks)))
    return out


def test_projector_is_idempotent_eigenprojector(tables):
    for _, ks, t in tables:
        P = t.projector
        assert P @ P == P
        assert mat_pow(ks.B, t.a) @ P == P.scale(ks.k**t.a)


def test_constants_bounded(tables):
    for _, ks, t in tables:
        assert all(0 <= c <= max(ks.v0) for row in t.c for c in row)


def test_double_period_gives_same_table(tables):
    for _, ks, t in tables:
        t2 = census_constants(ks, 2 * t.a)
        assert t2.c == tuple(row + row for row in t.c)


def test_constants_are_limits(tables):
    # e_i B^(an+j) v0 / k^(an+j) approaches c[i][j]
    for _, ks, t in tables:
        n = 12 // t.a * t.a + t.a
        for j in range(t.a):
            vec = list(ks.v0)
            for _ in range(n * 1 + j):
                vec = ks.B.apply(vec)
            scale = ks.k ** (n + j)
            for i in range(ks.d):
                assert abs(Fraction(vec[i]) / scale - t.c[i][j]) < Fraction(1, 20)


def test_partial_sum_matches_loop(tables):
    for d, ks, _ in tables:
        running = Fraction(0)
        for n in range(400):
            assert partial_sum_exact(d, n, ks) == running
            running += d.eval(n)
        assert partial_sum_exact(d, 5000) == naive_partial_sum(d, 5000)


def test_census_sum(tables):
    for _, ks, t in tables[:5]:
        for i in range(ks.d):
            assert census_sum(ks, i, 0) == ks.v0[i]


def test_partial_sum_rejects_unnormalized():
    with pytest.raises(ValueError):
        partial_sum_exact(DFAO(2, ((1, 0), (1, 1)), (1, 0), 0), 5)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**12))
def test_partial_sum_even_length_closed_form(n):
    # count of m < n whose binary length is even
    d = normalize(even_length_set(2).dfao)
    L = n.bit_length()
    full = sum(2 ** (l - 1) for l in range(2, L, 2)) + 1
    partial = n - 2 ** (L - 1) if L and L % 2 == 0 else 0
    assert partial_sum_exact(d, n) == (full + partial if n else 0)


def test_table_reflection(tables):
    for d, ks, t in tables:
        top = max(ks.v0)
        flipped = census_constants(kernel_system(d.reflected(top)), t.a)
        assert flipped.c == t.reflected(top).c
