"""Exact integer polynomials and dense rational matrices.

Everything here is immutable; Python integers give arbitrary precision and
``fractions.Fraction`` keeps rationals in lowest terms with positive denominators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import zip_longest
from typing import TYPE_CHECKING

from greencheck.errors import (
    DegenerateNodesError,
    ExactAlgebraError,
    InexactDivisionError,
    ShapeError,
    SingularMatrixError,
)


if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence


type Scalar = int | Fraction


def _trim[T](coefficients: Iterable[T]) -> tuple[T, ...]:
    values = list(coefficients)
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True, slots=True)
class IntPoly:
    """Univariate polynomial in q with integer coefficients, little-endian by degree."""

    coefficients: tuple[int, ...] = ()
    """Coefficient of q^i at index i; no trailing zeros."""

    def __post_init__(self) -> None:
        for c in self.coefficients:
            if not isinstance(c, int) or isinstance(c, bool):
                msg = f'IntPoly coefficients must be integers, got {c!r}'
                raise ExactAlgebraError(msg)
        object.__setattr__(self, 'coefficients', _trim(self.coefficients))

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> IntPoly:
        return cls((0,) * degree + (c,))

    @classmethod
    def q(cls) -> IntPoly:
        """The indeterminate."""
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: Scalar) -> Scalar:
        result: Scalar = 0
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = _as_poly(other)
        return IntPoly(
            tuple(a + b for a, b in zip_longest(self.coefficients, other.coefficients, fillvalue=0))
        )

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coefficients))

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: int) -> IntPoly:
        return _as_poly(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> IntPoly:
        if exponent < 0:
            msg = 'negative powers are not polynomials'
            raise ExactAlgebraError(msg)
        result = IntPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result *= base
            base *= base
            exponent >>= 1
        return result

    def shift(self, k: int) -> IntPoly:
        """Multiply by q^k."""
        return IntPoly((0,) * k + self.coefficients) if self.coefficients else self

    def at_negative_q(self) -> IntPoly:
        """The polynomial p(-q)."""
        return IntPoly(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coefficients)))

    def reversed_to(self, degree: int) -> IntPoly:
        """Return q^degree * p(1/q); requires deg p <= degree."""
        if self.degree > degree:
            msg = f'cannot reverse degree {self.degree} polynomial to degree {degree}'
            raise ExactAlgebraError(msg)
        padded = self.coefficients + (0,) * (degree + 1 - len(self.coefficients))
        return IntPoly(tuple(reversed(padded)))

    def divide_exact(self, divisor: IntPoly) -> IntPoly:
        """Quotient of an exact division in Z[q]."""
        if divisor.is_zero():
            msg = 'division by the zero polynomial'
            raise InexactDivisionError(msg)
        remainder = list(self.coefficients)
        quotient = [0] * max(len(remainder) - len(divisor.coefficients) + 1, 0)
        lead = divisor.leading
        for shift in range(len(quotient) - 1, -1, -1):
            top = remainder[shift + divisor.degree]
            if top % lead:
                msg = f'{self} is not divisible by {divisor} over the integers'
                raise InexactDivisionError(msg)
            factor = top // lead
            quotient[shift] = factor
            for i, c in enumerate(divisor.coefficients):
                remainder[shift + i] -= factor * c
        if any(remainder):
            msg = f'{self} is not divisible by {divisor}'
            raise InexactDivisionError(msg)
        return IntPoly(tuple(quotient))

    def __str__(self) -> str:
        return format_poly(self.coefficients)


def _as_poly(value: IntPoly | int) -> IntPoly:
    return value if isinstance(value, IntPoly) else IntPoly.constant(value)


def format_poly(coefficients: Sequence[Scalar], variable: str = 'q') -> str:
    """Human-readable form, highest degree first, e.g. ``q^2 - 1``."""
    terms: list[str] = []
    for degree in range(len(coefficients) - 1, -1, -1):
        c = coefficients[degree]
        if c == 0:
            continue
        sign = '-' if c < 0 else '+'
        magnitude = abs(c)
        if degree == 0:
            body = str(magnitude)
        else:
            power = variable if degree == 1 else f'{variable}^{degree}'
            body = power if magnitude == 1 else f'{magnitude}*{power}'
        terms.append(f'{sign} {body}')
    if not terms:
        return '0'
    head = terms[0]
    text = head[2:] if head.startswith('+') else '-' + head[2:]
    return ' '.join([text, *terms[1:]])


def poly_eval(p: IntPoly, x: int) -> int:
    """Exact value of ``p`` at the integer ``x``."""
    return int(p(x))


@dataclass(frozen=True, slots=True)
class Interpolation:
    """Result of Lagrange interpolation over the rationals."""

    coefficients: tuple[Fraction, ...] = ()
    """Little-endian rational coefficients, trimmed."""

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: Scalar) -> Fraction:
        result = Fraction(0)
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    def to_int_poly(self) -> IntPoly:
        if not self.integral:
            msg = f'interpolant {self} has non-integral coefficients'
            raise ExactAlgebraError(msg)
        return IntPoly(tuple(int(c) for c in self.coefficients))

    def __str__(self) -> str:
        return format_poly(self.coefficients)


def poly_interpolate(points: Sequence[tuple[int, Scalar]]) -> Interpolation:
    """Unique polynomial of degree < len(points) through ``points`` (Lagrange form)."""
    if not points:
        msg = 'interpolation needs at least one point'
        raise ExactAlgebraError(msg)
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        msg = 'degenerate interpolation nodes'
        raise DegenerateNodesError(msg)
    total = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denominator = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            # multiply basis by (q - xj)
            basis = [Fraction(0), *basis]
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denominator *= xi - xj
        scale = Fraction(yi) / denominator
        for k, c in enumerate(basis):
            total[k] += scale * c
    return Interpolation(_trim(total))


@dataclass(frozen=True, slots=True)
class RatMatrix:
    """Dense matrix of exact rationals."""

    rows: tuple[tuple[Fraction, ...], ...]
    """Row-major entries."""
    ncols: int = field(default=0)
    """Column count, kept explicitly so that 0-row matrices have a shape."""

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        width = len(rows[0]) if rows else self.ncols
        if any(len(row) != width for row in rows):
            msg = 'ragged matrix rows'
            raise ShapeError(msg)
        object.__setattr__(self, 'rows', rows)
        object.__setattr__(self, 'ncols', width)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Scalar]]) -> RatMatrix:
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> RatMatrix:
        return cls(tuple((Fraction(0),) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> RatMatrix:
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    @property
    def T(self) -> RatMatrix:
        return self.transpose()

    def transpose(self) -> RatMatrix:
        return RatMatrix(
            tuple(tuple(row[j] for row in self.rows) for j in range(self.ncols)), self.nrows
        )

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.ncols != other.nrows:
            msg = f'cannot multiply {self.shape} by {other.shape}'
            raise ShapeError(msg)
        columns = [other.column(j) for j in range(other.ncols)]
        return RatMatrix(
            tuple(
                tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in columns)
                for row in self.rows
            ),
            other.ncols,
        )

    def _check_same_shape(self, other: RatMatrix) -> None:
        if self.shape != other.shape:
            msg = f'shape mismatch {self.shape} vs {other.shape}'
            raise ShapeError(msg)

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __neg__(self) -> RatMatrix:
        return RatMatrix(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> RatMatrix:
        """Submatrix on the given row and column indices, in the given order."""
        return RatMatrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def to_int_rows(self) -> tuple[tuple[int, ...], ...]:
        if not self.is_integral():
            msg = 'matrix has non-integral entries'
            raise ExactAlgebraError(msg)
        return tuple(tuple(int(x) for x in row) for row in self.rows)

    def reduce_mod(self, r: int) -> RatMatrix:
        """Least non-negative residues of an integer matrix."""
        if r < 2:
            msg = f'modulus must be at least 2, got {r}'
            raise ExactAlgebraError(msg)
        return RatMatrix(tuple(tuple(x % r for x in row) for row in self.to_int_rows()), self.ncols)

    def det(self) -> Fraction:
        """Determinant by Gaussian elimination with exact pivoting."""
        if self.nrows != self.ncols:
            msg = f'determinant of non-square {self.shape} matrix'
            raise ShapeError(msg)
        work = [list(row) for row in self.rows]
        n = len(work)
        result = Fraction(1)
        for col in range(n):
            pivot = next((i for i in range(col, n) if work[i][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                result = -result
            p = work[col][col]
            result *= p
            for i in range(col + 1, n):
                factor = work[i][col] / p
                if factor:
                    for j in range(col, n):
                        work[i][j] -= factor * work[col][j]
        return result

    def rank(self) -> int:
        work = [list(row) for row in self.rows]
        rank = 0
        for col in range(self.ncols):
            pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            for i in range(rank + 1, len(work)):
                factor = work[i][col] / work[rank][col]
                if factor:
                    for j in range(col, self.ncols):
                        work[i][j] -= factor * work[rank][j]
            rank += 1
        return rank

    def solve(self, rhs: RatMatrix) -> RatMatrix:
        """The unique X with ``self @ X == rhs`` (Gauss-Jordan)."""
        n = self.nrows
        if n != self.ncols or rhs.nrows != n:
            msg = f'cannot solve {self.shape} system with right-hand side {rhs.shape}'
            raise ShapeError(msg)
        work = [list(a) + list(b) for a, b in zip(self.rows, rhs.rows)]
        for col in range(n):
            pivot = next((i for i in range(col, n) if work[i][col] != 0), None)
            if pivot is None:
                msg = 'singular system'
                raise SingularMatrixError(msg)
            work[col], work[pivot] = work[pivot], work[col]
            p = work[col][col]
            work[col] = [x / p for x in work[col]]
            for i in range(n):
                if i != col and work[i][col] != 0:
                    factor = work[i][col]
                    work[i] = [a - factor * b for a, b in zip(work[i], work[col])]
        return RatMatrix(tuple(tuple(row[n:]) for row in work), rhs.ncols)

    def is_positive_definite(self) -> bool:
        """Symmetric with all LDL^T pivots positive."""
        if not self.is_symmetric():
            return False
        work = [list(row) for row in self.rows]
        n = len(work)
        for k in range(n):
            pivot = work[k][k]
            if pivot <= 0:
                return False
            for i in range(k + 1, n):
                factor = work[i][k] / pivot
                for j in range(k, n):
                    work[i][j] -= factor * work[k][j]
        return True


def det_exact(m: RatMatrix) -> Fraction:
    """Exact determinant of a square matrix."""
    return m.det()


def poly_det(matrix: Sequence[Sequence[IntPoly]]) -> IntPoly:
    """Determinant of a small polynomial matrix by expansion along the first row."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        msg = 'determinant of a non-square polynomial matrix'
        raise ShapeError(msg)
    if n == 0:
        return IntPoly.constant(1)
    if n == 1:
        return matrix[0][0]
    total = IntPoly()
    for j, entry in enumerate(matrix[0]):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = entry * poly_det(minor)
        total = total - term if j % 2 else total + term
    return total
