"""Tests for the type A oracles."""

from __future__ import annotations

import itertools
import math

import pytest

from greencheck.errors import OracleError
from greencheck.exact import IntPoly
from greencheck.green import run_pipeline
from greencheck.oracles import (
    Partition,
    Tableau,
    calibrated_convention,
    charge,
    flag_fixed_points,
    gl_enumerate,
    green_polynomial,
    green_polynomial_poly,
    green_polynomial_table,
    jordan_unipotent,
    kostka_foulkes,
    mn_character,
    partitions,
    semistandard_tableaux,
)
from greencheck.orders import group_order_poly, torus_order_poly
from greencheck.springer import type_A_springer
from greencheck.weyl import gamma_conjugacy_classes, weyl_group


FAST_CELLS = {(2, 2), (2, 3), (3, 2), (3, 4), (4, 3), (5, 2)}
PIPELINE_GRID = [
    (n, q) if (n, q) in FAST_CELLS else pytest.param(n, q, marks=pytest.mark.slow)
    for n, q in itertools.product((2, 3, 4, 5), (2, 3, 4, 5, 7, 8, 9))
]
"""GL_n for n <= 5 over every q in {2, 3, 4, 5, 7, 8, 9}; cells outside FAST_CELLS are slow."""


def _z(rho: Partition) -> int:
    """Order of the centralizer in S_n of a permutation of cycle type rho."""
    return math.prod(k**m * math.factorial(m) for k, m in rho.multiplicities.items())


class TestTableaux:
    """Tests for Tableau, charge and semistandard_tableaux."""

    def test_validation(self) -> None:
        """Rows weakly increase, columns strictly increase, shape is a partition."""
        Tableau(((1, 1, 2), (2,)))
        for rows in (((2, 1),), ((1,), (1,)), ((1,), (2, 3))):
            with pytest.raises(OracleError):
                Tableau(rows)

    def test_shape_weight_reading_word(self) -> None:
        """Reading word goes bottom row first."""
        tableau = Tableau(((1, 1, 2), (2, 3)))
        assert tableau.shape == Partition.of(3, 2)
        assert tableau.weight == Partition.of(2, 2, 1)
        assert tableau.reading_word() == (2, 3, 1, 1, 2)

    def test_charge(self) -> None:
        """Small charge values."""
        assert charge((1,)) == 0
        assert charge((1, 2)) == 1
        assert charge((2, 1)) == 0
        assert Tableau(((1, 2),)).charge == 1
        with pytest.raises(OracleError):
            charge((2, 3))

    @pytest.mark.parametrize('n', [3, 4, 5])
    def test_standard_tableaux_count(self, n: int) -> None:
        """Standard tableaux of shape lambda number chi^lambda(1)."""
        weight = Partition((1,) * n)
        for shape in partitions(n):
            count = sum(1 for _ in semistandard_tableaux(shape, weight))
            assert count == mn_character(shape, weight)

    def test_no_tableaux_for_size_mismatch(self) -> None:
        """Different sizes give nothing."""
        assert list(semistandard_tableaux(Partition.of(2), Partition.of(1))) == []


class TestKostkaFoulkes:
    """Tests for kostka_foulkes."""

    @pytest.mark.parametrize(
        ('shape', 'weight', 'coefficients'),
        [
            ((2,), (1, 1), (0, 1)),
            ((2, 1), (1, 1, 1), (0, 1, 1)),
            ((3,), (2, 1), (0, 1)),
            ((3,), (1, 1, 1), (0, 0, 0, 1)),
            ((2, 1), (2, 1), (1,)),
            ((1, 1), (2,), ()),
        ],
    )
    def test_values(
        self, shape: tuple[int, ...], weight: tuple[int, ...], coefficients: tuple[int, ...]
    ) -> None:
        """Known K_{lambda,mu}(t)."""
        assert kostka_foulkes(Partition(shape), Partition(weight)) == IntPoly(coefficients)

    def test_size_mismatch(self) -> None:
        """Sizes must agree."""
        with pytest.raises(OracleError):
            kostka_foulkes(Partition.of(2), Partition.of(1))

    @pytest.mark.parametrize('n', [1, 2, 3, 4, 5])
    def test_dominance(self, n: int) -> None:
        """K_{lambda,mu} vanishes unless lambda dominates mu, and K_{lambda,lambda} = 1."""
        for shape in partitions(n):
            for weight in partitions(n):
                poly = kostka_foulkes(shape, weight)
                if shape == weight:
                    assert poly == IntPoly.constant(1)
                elif shape.dominates(weight):
                    assert not poly.is_zero()
                    assert all(c >= 0 for c in poly.coefficients)
                else:
                    assert poly.is_zero()


class TestGreenPolynomials:
    """Tests for the Green polynomial oracle."""

    def test_calibration(self) -> None:
        """q^{n(mu)} K(1/q) is the convention that satisfies every anchor."""
        assert calibrated_convention() == 'cocharge'

    def test_gl2(self) -> None:
        """Q^(1,1) is q + 1 on the split torus and 1 - q on the Coxeter torus."""
        identity, regular = Partition.of(1, 1), Partition.of(2)
        assert green_polynomial_poly(identity, identity) == IntPoly((1, 1))
        assert green_polynomial_poly(identity, regular) == IntPoly((1, -1))
        assert green_polynomial_poly(regular, identity) == IntPoly.constant(1)

    @pytest.mark.parametrize('n', [2, 3, 4])
    def test_regular_class(self, n: int) -> None:
        """Q^(n)_rho = 1."""
        for rho in partitions(n):
            assert green_polynomial(Partition.of(n), rho, 5) == 1

    @pytest.mark.parametrize(
        ('n', 'q'),
        [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), pytest.param(4, 3, marks=pytest.mark.slow)],
    )
    def test_split_torus_counts_flags(self, n: int, q: int) -> None:
        """Q^mu_(1^n)(q) counts u-stable complete flags."""
        identity = Partition((1,) * n)
        for mu in partitions(n):
            flags = flag_fixed_points(jordan_unipotent(mu, q), n, q)
            assert green_polynomial(mu, identity, q) == flags

    def test_orthogonality_against_enumeration(self) -> None:
        """sum_mu |C_mu| Q^mu_rho Q^mu_sigma = delta |G| / |T_rho| z_rho in GL_2(3)."""
        inventory = gl_enumerate(2, 3)
        for rho in partitions(2):
            for sigma in partitions(2):
                total = sum(
                    size * green_polynomial(Partition.parse(label), rho, 3)
                    * green_polynomial(Partition.parse(label), sigma, 3)
                    for label, size in inventory.unipotent_class_sizes.items()
                )
                expected = (
                    inventory.group_order // inventory.torus_orders[rho.label] * _z(rho)
                    if rho == sigma
                    else 0
                )
                assert total == expected

    def test_size_mismatch(self) -> None:
        """Class and torus must live in the same GL_n."""
        with pytest.raises(OracleError):
            green_polynomial(Partition.of(2), Partition.of(1, 1, 1), 2)

    def test_table_layout(self) -> None:
        """Rows by cycle type, columns by class dimension."""
        table = green_polynomial_table(3, 2)
        assert table.row_labels == ('(3)', '(2,1)', '(1,1,1)')
        assert table.column_labels == ('(1,1,1)', '(2,1)', '(3)')
        assert table.value('(1,1,1)', '(1,1,1)') == 21


class TestAgainstPipeline:
    """The Lusztig-Shoji pipeline reproduces the classical Green polynomials of GL_n."""

    @pytest.mark.parametrize(('n', 'q'), PIPELINE_GRID)
    def test_tables_agree(self, n: int, q: int) -> None:
        """Q_w(u_mu) = Q^mu_rho(q) with rho the cycle type of w."""
        run = run_pipeline(f'A{n - 1}', q)
        table = run.green
        for label, w in zip(table.row_labels, table.row_elements):
            rho = run.weyl.cycle_type(w)
            for mu in table.column_labels:
                assert table.value(label, mu) == green_polynomial(Partition.parse(mu), rho, q)


class TestFlags:
    """Tests for flag_fixed_points and jordan_unipotent."""

    def test_identity(self) -> None:
        """Every flag is fixed by the identity."""
        assert flag_fixed_points(jordan_unipotent(Partition.of(1, 1), 2), 2, 2) == 3
        assert flag_fixed_points(jordan_unipotent(Partition.of(1, 1, 1), 2), 3, 2) == 21

    def test_subregular(self) -> None:
        """Jordan type (2,1) over F_2 fixes 5 flags, a regular unipotent fixes one."""
        assert flag_fixed_points(jordan_unipotent(Partition.of(2, 1), 2), 3, 2) == 5
        assert flag_fixed_points(jordan_unipotent(Partition.of(3), 3), 3, 3) == 1

    def test_out_of_range(self) -> None:
        """Only n <= 4 and q in {2, 3}."""
        with pytest.raises(OracleError):
            flag_fixed_points(jordan_unipotent(Partition.of(5), 2), 5, 2)
        with pytest.raises(OracleError):
            flag_fixed_points(jordan_unipotent(Partition.of(2), 5), 2, 5)

    def test_rejects_non_unipotent(self) -> None:
        """diag(2, 1) over F_3 is not unipotent."""
        with pytest.raises(OracleError):
            flag_fixed_points([[2, 0], [0, 1]], 2, 3)


class TestEnumeration:
    """Tests for gl_enumerate."""

    def test_gl2_3(self) -> None:
        """GL_2(3) has 48 elements and 9 unipotents."""
        inventory = gl_enumerate(2, 3)
        assert inventory.group_order == 48
        assert inventory.unipotent_class_sizes == {'(2)': 8, '(1,1)': 1}
        assert inventory.unipotent_count == 9
        assert inventory.centralizer_orders['(1,1)'] == 48
        assert inventory.torus_orders == {'(2)': 8, '(1,1)': 4}

    def test_gl3_2(self) -> None:
        """GL_3(2) has 168 elements and 2^6 unipotents."""
        inventory = gl_enumerate(3, 2)
        assert inventory.group_order == 168
        assert inventory.unipotent_class_sizes == {'(3)': 42, '(2,1)': 21, '(1,1,1)': 1}
        assert inventory.torus_orders['(3)'] == 7

    @pytest.mark.parametrize(
        ('n', 'q'), [(2, 2), (2, 3), (3, 2), (3, 3), pytest.param(4, 2, marks=pytest.mark.slow)]
    )
    def test_matches_generic_data(self, n: int, q: int) -> None:
        """Counted class sizes and torus orders agree with the type A polynomials."""
        inventory = gl_enumerate(n, q)
        pack = type_A_springer(n)
        for label, size in inventory.unipotent_class_sizes.items():
            assert pack.class_size(label, '1', q) == size
        weyl = weyl_group(f'A{n - 1}')
        for cls in gamma_conjugacy_classes(weyl):
            rho = weyl.cycle_type(cls.representative)
            assert torus_order_poly(weyl, cls.representative)(q) == inventory.torus_orders[rho.label]
        assert group_order_poly(weyl)(q) == inventory.group_order

    def test_limits(self) -> None:
        """Prime q and at most 10^6 matrices."""
        with pytest.raises(OracleError):
            gl_enumerate(2, 4)
        with pytest.raises(OracleError):
            gl_enumerate(3, 5)
