from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from densic.exact import (
    DimensionError,
    Matrix,
    Polynomial,
    as_rational,
    cyclotomic,
    divide_linear,
    eval_poly_at_matrix,
    eval_poly_on_vector,
    format_rational,
    mat_pow,
    minimal_polynomial,
    poly_divides,
)

X = Polynomial.x()

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def square_matrices(draw, max_dim=8, elements=st.integers(-3, 3)):
    n = draw(st.integers(1, max_dim))
    return Matrix.from_rows([[draw(elements) for _ in range(n)] for _ in range(n)])


def test_minpoly_even_length_digit_matrix():
    B = Matrix.from_rows([[1, 1, 0], [0, 0, 2], [0, 2, 0]])
    assert minimal_polynomial(B) == X**3 - X**2 - 4 * X + 4


def test_minpoly_leading_digit_matrix():
    B = Matrix.from_rows([[1, 1, 1], [0, 3, 0], [0, 0, 3]])
    assert minimal_polynomial(B) == X**2 - 4 * X + 3


def test_minpoly_identity_and_zero():
    assert minimal_polynomial(Matrix.identity(4)) == X - 1
    assert minimal_polynomial(Matrix.zeros(3, 3)) == X


def test_minpoly_rejects_rectangular():
    with pytest.raises(DimensionError):
        minimal_polynomial(Matrix.zeros(2, 3))


def test_polynomial_rendering():
    assert str(X**2 - 4 * X + 3) == "x^2 - 4*x + 3"
    assert str(Polynomial()) == "0"


def test_cyclotomic_small():
    assert cyclotomic(1) == X - 1
    assert cyclotomic(2) == X + 1
    assert cyclotomic(4) == X**2 + 1
    assert cyclotomic(6) == X**2 - X + 1
    assert cyclotomic(12) == X**4 - X**2 + 1


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_product(n):
    prod = Polynomial.constant(1)
    for d in range(1, n + 1):
        if n % d == 0:
            prod = prod * cyclotomic(d)
    assert prod == X**n - 1


def test_poly_divides():
    assert poly_divides(X + 1, X**2 - 1)
    assert not poly_divides(X + 2, X**2 - 1)


def test_rational_parsing():
    assert as_rational("2/3") == Fraction(2, 3)
    assert as_rational(" -7/21 ") == Fraction(-1, 3)
    with pytest.raises(ValueError):
        as_rational("0.25")
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(TypeError):
        as_rational(0.5)


@given(st.lists(small_rationals, min_size=1, max_size=6), small_rationals)
def test_divide_linear_reconstructs(coeffs, r):
    p = Polynomial(coeffs)
    q, rem = divide_linear(p, r)
    assert q * (X - r) + Polynomial.constant(rem) == p
    assert rem == p(r)


@settings(max_examples=60, deadline=None)
@given(square_matrices())
def test_minpoly_annihilates(M):
    m = minimal_polynomial(M)
    assert m.leading == 1
    assert eval_poly_at_matrix(m, M).is_zero()


@settings(max_examples=60, deadline=None)
@given(square_matrices(elements=small_rationals))
def test_minpoly_routes_agree(M):
    assert minimal_polynomial(M, method="krylov") == minimal_polynomial(M, method="flint")


@settings(max_examples=40, deadline=None)
@given(square_matrices(max_dim=5), st.integers(0, 5), st.integers(0, 5))
def test_mat_pow_additive(M, p, q):
    assert mat_pow(M, p + q) == mat_pow(M, p) @ mat_pow(M, q)


@settings(max_examples=40, deadline=None)
@given(square_matrices(max_dim=5), st.lists(small_rationals, min_size=1, max_size=5), st.data())
def test_poly_on_vector_matches_matrix(M, coeffs, data):
    vec = data.draw(st.lists(small_rationals, min_size=M.rows, max_size=M.rows))
    p = Polynomial(coeffs)
    assert eval_poly_on_vector(p, M, vec) == eval_poly_at_matrix(p, M).apply(vec)


@given(st.fractions())
def test_rational_round_trip(q):
    assert as_rational(format_rational(q)) == q
