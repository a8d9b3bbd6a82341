"""Exact rational polynomials and matrices.

Everything here works over :class:`fractions.Fraction` (plain ``int`` is
accepted wherever a rational is expected). Nothing is ever rounded.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction

# Above this dimension the Krylov search over the d^2 coefficient space
# gets slow; minimal polynomials are delegated to FLINT's integer minpoly.
KRYLOV_MAX_DIM = 12


class DimensionError(ValueError):
    pass


class DomainError(ValueError):
    pass


def as_rational(value) -> Fraction:
    """Parse ``value`` (int, Fraction or ``"p/q"`` text) as an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE_ "):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(text)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def _exact(value):
    # ints stay ints (much faster), everything else becomes a Fraction
    if isinstance(value, int):
        return value
    q = as_rational(value)
    return q.numerator if q.denominator == 1 else q


def format_rational(q) -> str:
    q = as_rational(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Polynomial:
    """Univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_exact(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots) -> Polynomial:
        p = cls((1,))
        for r in roots:
            p = p * cls((-_exact(r), 1))
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def monic(self) -> Polynomial:
        if self.is_zero():
            raise DomainError("the zero polynomial has no monic form")
        lead = Fraction(self.leading)
        return Polynomial(c / lead for c in self.coeffs)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def scale_argument(self, c) -> Polynomial:
        """Return p(c*x)."""
        c = _exact(c)
        return Polynomial(coef * c**i for i, coef in enumerate(self.coeffs))

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result, base = Polynomial((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        dq = other.degree
        lead = Fraction(other.leading)
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for shift in range(len(rem) - dq - 1, -1, -1):
            factor = rem[shift + dq] / lead
            if factor:
                quot[shift] = factor
                for i, c in enumerate(other.coeffs):
                    rem[shift + i] -= factor * c
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else ())

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial((other,))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = Fraction(self.coeffs[i])
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial((value,))


def divide_linear(p: Polynomial, r) -> tuple[Polynomial, Fraction]:
    """Synthetic division: p(x) = quotient(x)*(x - r) + remainder, remainder = p(r)."""
    if p.is_zero():
        return Polynomial(), Fraction(0)
    r = _exact(r)
    high_first = list(reversed(p.coeffs))
    acc = [high_first[0]]
    for c in high_first[1:]:
        acc.append(c + r * acc[-1])
    remainder = acc.pop()
    return Polynomial(reversed(acc)), Fraction(remainder)


def poly_divides(p: Polynomial, q: Polynomial) -> bool:
    if p.is_zero():
        raise DomainError("zero polynomial cannot be a divisor")
    return (q % p).is_zero()


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Polynomial:
    """The n-th cyclotomic polynomial, by exact division of x^n - 1."""
    if n < 1:
        raise DomainError("cyclotomic polynomials are indexed by n >= 1")
    p = Polynomial((-1,) + (0,) * (n - 1) + (1,))
    for d in range(1, n):
        if n % d == 0:
            p, rem = divmod(p, cyclotomic(d))
            assert rem.is_zero()
    return Polynomial(int(c) for c in p.coeffs)


class Matrix:
    """Dense rows-by-cols matrix of exact rationals."""

    __slots__ = ("rows", "cols", "_data", "_sparse")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if rows < 1 or cols < 1:
            raise DimensionError("matrix dimensions must be positive")
        entries = [_exact(e) for e in entries]
        if len(entries) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self._data = tuple(tuple(entries[i * cols:(i + 1) * cols]) for i in range(rows))
        self._sparse = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> Matrix:
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged or empty row list")
        return cls(len(rows), len(rows[0]), [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def _wrap(cls, data) -> Matrix:
        m = cls.__new__(cls)
        m.rows = len(data)
        m.cols = len(data[0])
        m._data = tuple(tuple(r) for r in data)
        m._sparse = None
        return m

    @property
    def entries(self) -> tuple:
        return tuple(e for r in self._data for e in r)

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def _sparse_rows(self):
        if self._sparse is None:
            self._sparse = tuple(
                tuple((j, v) for j, v in enumerate(r) if v != 0) for r in self._data
            )
        return self._sparse

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product M @ vec."""
        if len(vec) != self.cols:
            raise DimensionError("vector length does not match column count")
        return [sum(v * vec[j] for j, v in row) for row in self._sparse_rows()]

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        right = other._data
        out = []
        for row in self._sparse_rows():
            acc = [0] * other.cols
            for t, v in row:
                rt = right[t]
                if v == 1:
                    acc = [a + b for a, b in zip(acc, rt)]
                else:
                    acc = [a + v * b for a, b in zip(acc, rt)]
            out.append(acc)
        return Matrix._wrap(out)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        return Matrix._wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in subtraction")
        return Matrix._wrap([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def scale(self, c) -> Matrix:
        c = _exact(c)
        return Matrix._wrap([[c * a for a in r] for r in self._data])

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(e == 0 for r in self._data for e in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(e) for e in r) for r in self._data)
        return f"Matrix([{body}])"


def _require_square(M: Matrix):
    if not M.is_square:
        raise DimensionError(f"square matrix required, got {M.rows}x{M.cols}")


def mat_pow(M: Matrix, e: int) -> Matrix:
    _require_square(M)
    if e < 0:
        raise DomainError("negative matrix exponent")
    result = Matrix.identity(M.rows)
    base = M
    first = True
    while e:
        if e & 1:
            result = base if first else result @ base
            first = False
        e >>= 1
        if e:
            base = base @ base
    return result


def eval_poly_at_matrix(p: Polynomial, M: Matrix) -> Matrix:
    """Horner evaluation p(M)."""
    _require_square(M)
    n = M.rows
    acc = Matrix.zeros(n, n)
    eye = Matrix.identity(n)
    for c in reversed(p.coeffs):
        acc = acc @ M + eye.scale(c)
    return acc


def _horner_on_vector(coeffs, M: Matrix, vec) -> list:
    acc = [0] * M.rows
    for c in reversed(coeffs):
        acc = M.apply(acc)
        if c:
            acc = [a + c * v for a, v in zip(acc, vec)]
    return acc


def _common_denominator(values) -> int:
    return math.lcm(1, *(Fraction(x).denominator for x in values))


def eval_poly_on_vector(p: Polynomial, M: Matrix, vec: Sequence) -> list:
    """p(M) @ vec without forming p(M)."""
    _require_square(M)
    if _common_denominator(M.entries) != 1:
        return _horner_on_vector(p.coeffs, M, vec)
    # integer matrix: clear denominators so the loop runs on ints
    dc, dv = _common_denominator(p.coeffs), _common_denominator(vec)
    acc = _horner_on_vector([int(c * dc) for c in p.coeffs], M, [int(x * dv) for x in vec])
    return acc if dc * dv == 1 else [_exact(Fraction(a, dc * dv)) for a in acc]


def minimal_polynomial(M: Matrix, method: str = "auto") -> Polynomial:
    """Monic minimal polynomial of a square matrix.

    ``method`` is ``"krylov"`` (first linear dependency among I, M, M^2, ...),
    ``"flint"`` (FLINT's integer minpoly after clearing denominators) or
    ``"auto"``, which picks Krylov for small matrices.
    """
    _require_square(M)
    if method == "auto":
        method = "krylov" if M.rows <= KRYLOV_MAX_DIM else "flint"
    if method == "krylov":
        return _minpoly_krylov(M)
    if method == "flint":
        return _minpoly_flint(M)
    raise ValueError(f"unknown method {method!r}")


def _minpoly_krylov(M: Matrix) -> Polynomial:
    n = M.rows
    # echelon basis: (pivot, reduced vector, combination over powers of M)
    basis: list[tuple[int, list, list]] = []
    power = Matrix.identity(n)
    for i in range(n + 1):
        vec = [Fraction(e) for e in power.entries]
        combo = [Fraction(0)] * i + [Fraction(1)]
        for pivot, bvec, bcombo in basis:
            f = vec[pivot]
            if f:
                vec = [a - f * b for a, b in zip(vec, bvec)]
                combo = [a - f * b for a, b in zip(combo, bcombo + [0] * (len(combo) - len(bcombo)))]
        pivot = next((t for t, v in enumerate(vec) if v), None)
        if pivot is None:
            # combo annihilates M and has leading coefficient 1 in degree i
            return Polynomial(combo)
        inv = 1 / vec[pivot]
        vec = [v * inv for v in vec]
        combo = [c * inv for c in combo]
        # keep earlier basis vectors reduced at the new pivot
        for idx, (p, bvec, bcombo) in enumerate(basis):
            f = bvec[pivot]
            if f:
                bvec = [a - f * b for a, b in zip(bvec, vec)]
                padded = bcombo + [0] * (len(combo) - len(bcombo))
                bcombo = [a - f * b for a, b in zip(padded, combo)]
                basis[idx] = (p, bvec, bcombo)
        basis.append((pivot, vec, combo))
        power = power @ M
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


def _minpoly_flint(M: Matrix) -> Polynomial:
    import flint

    denom = 1
    for e in M.entries:
        if isinstance(e, Fraction):
            denom = math.lcm(denom, e.denominator)
    scaled = [[int(e * denom) for e in r] for r in M.tolist()]
    m_scaled = flint.fmpz_mat(scaled).minpoly()
    coeffs = [int(c) for c in m_scaled.coeffs()]
    deg = len(coeffs) - 1
    # minpoly(M)(x) = denom^-deg * minpoly(denom*M)(denom*x)
    return Polynomial(Fraction(c * denom**i, denom**deg) for i, c in enumerate(coeffs))
