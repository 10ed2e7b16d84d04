"""Tests for exact polynomial and matrix arithmetic."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from greencheck.errors import (
    DegenerateNodesError,
    ExactAlgebraError,
    InexactDivisionError,
    ShapeError,
    SingularMatrixError,
)
from greencheck.exact import IntPoly, RatMatrix, det_exact, poly_det, poly_eval, poly_interpolate


class TestIntPoly:
    """Tests for IntPoly."""

    def test_trailing_zeros_trimmed(self) -> None:
        """Trailing zero coefficients are dropped, the zero polynomial has degree -1."""
        assert IntPoly((1, 2, 0, 0)).coefficients == (1, 2)
        assert IntPoly((0, 0)).is_zero()
        assert IntPoly().degree == -1

    def test_rejects_non_integer_coefficients(self) -> None:
        """Floats and bools are not integer coefficients."""
        with pytest.raises(ExactAlgebraError):
            IntPoly((1.5,))
        with pytest.raises(ExactAlgebraError):
            IntPoly((True,))

    def test_arithmetic(self) -> None:
        """(q - 1)(q + 1) = q^2 - 1."""
        q = IntPoly.q()
        assert (q - 1) * (q + 1) == IntPoly((-1, 0, 1))
        assert (q + 1) ** 2 == IntPoly((1, 2, 1))
        assert 3 - q == IntPoly((3, -1))

    def test_evaluation_is_exact(self) -> None:
        """Evaluation at large arguments keeps every digit."""
        p = IntPoly.monomial(40) - 1
        assert p(10) == 10**40 - 1

    def test_str(self) -> None:
        """Highest degree first."""
        assert str(IntPoly((-1, 0, 1))) == 'q^2 - 1'
        assert str(IntPoly((0, -1))) == '-q'
        assert str(IntPoly((1, 2, 3))) == '3*q^2 + 2*q + 1'
        assert str(IntPoly()) == '0'

    def test_reversed_to(self) -> None:
        """q^d p(1/q) reverses the padded coefficients."""
        assert IntPoly((0, 1, 1)).reversed_to(3) == IntPoly((0, 1, 1))
        assert IntPoly((1, 2)).reversed_to(2) == IntPoly((0, 2, 1))
        with pytest.raises(ExactAlgebraError):
            IntPoly((1, 2, 3)).reversed_to(1)

    def test_at_negative_q(self) -> None:
        """Odd coefficients change sign."""
        assert IntPoly((1, 1, 1)).at_negative_q() == IntPoly((1, -1, 1))

    def test_divide_exact(self) -> None:
        """q^3 - 1 = (q - 1)(q^2 + q + 1), and q^2 + 1 is not divisible by q - 1."""
        q = IntPoly.q()
        assert (q**3 - 1).divide_exact(q - 1) == q**2 + q + 1
        with pytest.raises(InexactDivisionError):
            (q**2 + 1).divide_exact(q - 1)
        with pytest.raises(InexactDivisionError):
            q.divide_exact(IntPoly())


class TestInterpolation:
    """Tests for poly_interpolate."""

    def test_recovers_integer_polynomial(self) -> None:
        """Three samples of q^2 - q + 3 give back the polynomial."""
        p = IntPoly((3, -1, 1))
        result = poly_interpolate([(x, p(x)) for x in (2, 3, 5)])
        assert result.integral
        assert result.to_int_poly() == p

    def test_rational_interpolant(self) -> None:
        """Points on q(q - 1)/2 give a non-integral interpolant."""
        result = poly_interpolate([(x, x * (x - 1) // 2) for x in (2, 3, 4)])
        assert not result.integral
        assert result.coefficients == (Fraction(0), Fraction(-1, 2), Fraction(1, 2))
        with pytest.raises(ExactAlgebraError):
            result.to_int_poly()

    def test_degenerate_nodes(self) -> None:
        """Repeated nodes are rejected."""
        with pytest.raises(DegenerateNodesError):
            poly_interpolate([(2, 1), (2, 1)])
        with pytest.raises(ExactAlgebraError):
            poly_interpolate([])


class TestRatMatrix:
    """Tests for RatMatrix."""

    def test_ragged_rows(self) -> None:
        """Rows of different lengths are a shape error."""
        with pytest.raises(ShapeError):
            RatMatrix.from_rows([[1, 2], [3]])

    def test_matmul_and_transpose(self) -> None:
        """Products and transposes of small integer matrices."""
        a = RatMatrix.from_rows([[1, 2], [0, 1]])
        b = RatMatrix.from_rows([[1, 0], [3, 1]])
        assert (a @ b).to_int_rows() == ((7, 2), (3, 1))
        assert a.T.to_int_rows() == ((1, 0), (2, 1))
        with pytest.raises(ShapeError):
            _ = a @ RatMatrix.from_rows([[1, 2, 3]])

    def test_det(self) -> None:
        """Determinant with a row swap and of a singular matrix."""
        assert RatMatrix.from_rows([[0, 1], [1, 0]]).det() == -1
        assert RatMatrix.from_rows([[2, 1], [1, 1]]).det() == 1
        assert RatMatrix.from_rows([[1, 2], [2, 4]]).det() == 0
        with pytest.raises(ShapeError):
            RatMatrix.from_rows([[1, 2]]).det()

    def test_solve(self) -> None:
        """The solution satisfies A X = B exactly."""
        a = RatMatrix.from_rows([[2, 1], [1, 3]])
        b = RatMatrix.from_rows([[1], [2]])
        x = a.solve(b)
        assert x.rows == ((Fraction(1, 5),), (Fraction(3, 5),))
        assert a @ x == b
        with pytest.raises(SingularMatrixError):
            RatMatrix.from_rows([[1, 2], [2, 4]]).solve(b)

    def test_positive_definite(self) -> None:
        """LDL^T pivots decide positive definiteness."""
        assert RatMatrix.from_rows([[1, 1], [1, 2]]).is_positive_definite()
        assert not RatMatrix.from_rows([[1, 2], [2, 1]]).is_positive_definite()
        assert not RatMatrix.from_rows([[1, 2], [0, 1]]).is_positive_definite()

    def test_block_and_reduce(self) -> None:
        """Submatrix extraction and reduction modulo r."""
        m = RatMatrix.from_rows([[1, -2, 3], [4, 5, -6], [7, 8, 9]])
        assert m.block([2, 0], [1]).to_int_rows() == ((8,), (-2,))
        assert m.reduce_mod(5).to_int_rows() == ((1, 3, 3), (4, 0, 4), (2, 3, 4))
        assert RatMatrix.zeros(0, 3).shape == (0, 3)

    def test_gl2_product(self) -> None:
        """P^T diag(1, 3) P with P = [[1, 1], [0, 1]] is [[1, 1], [1, 4]]."""
        p = RatMatrix.from_rows([[1, 1], [0, 1]])
        lam = RatMatrix.from_rows([[1, 0], [0, 3]])
        assert (p.T @ lam @ p).to_int_rows() == ((1, 1), (1, 4))
        assert RatMatrix.from_rows([[33]]).reduce_mod(5).to_int_rows() == ((3,),)
        assert RatMatrix.from_rows([[1, 2, 3], [4, 5, 6]]).T.shape == (3, 2)

    def test_non_integral_rows(self) -> None:
        """to_int_rows refuses fractions."""
        m = RatMatrix.from_rows([[Fraction(1, 2)]])
        assert not m.is_integral()
        with pytest.raises(ExactAlgebraError):
            m.to_int_rows()


class TestPolyDet:
    """Tests for poly_det."""

    def test_two_by_two(self) -> None:
        """det [[1, 1], [1, q^2]] = q^2 - 1."""
        one = IntPoly.constant(1)
        assert poly_det([[one, one], [one, IntPoly.monomial(2)]]) == IntPoly((-1, 0, 1))

    def test_non_square(self) -> None:
        """Ragged polynomial matrices are rejected."""
        with pytest.raises(ShapeError):
            poly_det([[IntPoly.q()], [IntPoly.q(), IntPoly.q()]])


class TestPolyEval:
    """Tests for poly_eval."""

    @pytest.mark.parametrize('r', [2, 3, 5, 7, 11])
    def test_fermat(self, r: int) -> None:
        """p(x^r) = p(x) mod r for integer polynomials and prime r."""
        rng = random.Random(r)
        for _ in range(20):
            p = IntPoly(tuple(rng.randint(-9, 9) for _ in range(rng.randint(1, 6))))
            x = rng.randint(-5, 5)
            assert (poly_eval(p, x**r) - poly_eval(p, x)) % r == 0

    def test_interpolation_inverts_evaluation(self) -> None:
        """Four nodes recover a cubic."""
        p = IntPoly((7, 0, -3, 2))
        nodes = [(x, poly_eval(p, x)) for x in (2, 3, 4, 5)]
        assert poly_interpolate(nodes).to_int_poly() == p


class TestDetExact:
    """Tests for det_exact."""

    def test_multiplicative(self) -> None:
        """det(AB) = det(A) det(B)."""
        rng = random.Random(11)
        for n in (1, 2, 3, 4):
            a = RatMatrix.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
            b = RatMatrix.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
            assert det_exact(a @ b) == det_exact(a) * det_exact(b)
