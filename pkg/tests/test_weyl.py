"""Tests for Weyl groups, gamma-classes and character tables."""

from __future__ import annotations

import pytest

from greencheck.combinatorics import Partition
from greencheck.errors import TwistedDataAbsentError, WeylError
from greencheck.springer import resolve_pack
from greencheck.weyl import (
    SUPPORTED_TYPES,
    WEYL_ORDERS,
    cartan_datum,
    character_table,
    class_of,
    gamma_centralizer_order,
    gamma_conjugacy_classes,
    weyl_group,
)


POSITIVE_ROOTS = {'A1': 1, 'A2': 3, 'A3': 6, 'A4': 10, 'B2': 4, 'G2': 6, '2A2': 3, '2A3': 6}
CLASS_COUNTS = {'A1': 2, 'A2': 3, 'A3': 5, 'A4': 7, 'B2': 5, 'G2': 6, '2A2': 3, '2A3': 5}


class TestWeylGroup:
    """Tests for weyl_group."""

    @pytest.mark.parametrize('label', SUPPORTED_TYPES)
    def test_order_and_roots(self, label: str) -> None:
        """|W| and |Phi+| match the closed-form values."""
        weyl = weyl_group(label)
        assert weyl.order == WEYL_ORDERS[label]
        assert weyl.num_positive_roots == POSITIVE_ROOTS[label]
        assert weyl.lengths[weyl.longest] == POSITIVE_ROOTS[label]

    def test_identity_and_words(self) -> None:
        """Element 0 is the identity and words rebuild their elements."""
        weyl = weyl_group('A2')
        assert weyl.word_label(weyl.identity) == 'e'
        for w in range(weyl.order):
            assert weyl.element_from_word(weyl.words[w]) == w
            assert weyl.lengths[w] == len(weyl.words[w])
            assert weyl.multiply(w, weyl.inverse(w)) == weyl.identity

    def test_word_out_of_range(self) -> None:
        """A1 has a single simple reflection."""
        with pytest.raises(WeylError):
            weyl_group('A1').element_from_word([2])

    def test_unsupported_label(self) -> None:
        """Labels outside the closed list are rejected."""
        with pytest.raises(WeylError):
            cartan_datum('E8')

    def test_adjoint_flavor(self) -> None:
        """The root-lattice flavor of A2 has the same Weyl group on a rank-2 lattice."""
        weyl = weyl_group('A2', adjoint=True)
        assert weyl.order == 6
        assert weyl.dim_torus == 2
        with pytest.raises(WeylError):
            weyl.cycle_type(weyl.identity)
        with pytest.raises(WeylError):
            cartan_datum('2A2', adjoint=True)

    def test_cycle_types(self) -> None:
        """Simple reflections of A3 are transpositions."""
        weyl = weyl_group('A3')
        s1 = weyl.element_from_word([1])
        assert weyl.cycle_type(s1) == Partition.of(2, 1, 1)
        assert weyl.cycle_type(weyl.longest) == Partition.of(2, 2)


class TestGammaClasses:
    """Tests for gamma_conjugacy_classes."""

    @pytest.mark.parametrize('label', SUPPORTED_TYPES)
    def test_partition_of_w(self, label: str) -> None:
        """Classes partition W and sizes times centralizer orders give |W|."""
        weyl = weyl_group(label)
        classes = gamma_conjugacy_classes(weyl)
        assert len(classes) == CLASS_COUNTS[label]
        members = sorted(w for cls in classes for w in cls.members)
        assert members == list(range(weyl.order))
        for cls in classes:
            assert cls.representative == min(cls.members)
            assert cls.size * gamma_centralizer_order(weyl, cls.representative) == weyl.order

    def test_class_of(self) -> None:
        """Every element finds its own class."""
        weyl = weyl_group('B2')
        for w in range(weyl.order):
            assert w in class_of(weyl, w).members

    def test_twisted_classes_follow_w0(self) -> None:
        """For 2A3, w and w' are gamma-conjugate exactly when w0 w and w0 w' are conjugate."""
        weyl = weyl_group('2A3')
        for cls in gamma_conjugacy_classes(weyl):
            types = {weyl.twisted_cycle_type(w) for w in cls.members}
            assert len(types) == 1


class TestCharacterTable:
    """Tests for character_table."""

    @pytest.mark.parametrize(
        ('label', 'degrees'),
        [
            ('A2', (1, 2, 1)),
            ('A3', (1, 3, 2, 3, 1)),
            ('B2', (1, 1, 1, 1, 2)),
            ('G2', (1, 1, 1, 1, 2, 2)),
        ],
    )
    def test_degrees(self, label: str, degrees: tuple[int, ...]) -> None:
        """Character degrees in table order."""
        assert character_table(weyl_group(label)).degrees == degrees

    def test_sign_character(self) -> None:
        """chi^(1,1,1) is the sign of W(A2)."""
        weyl = weyl_group('A2')
        table = character_table(weyl)
        for w in range(weyl.order):
            assert table.value('(1,1,1)', w) == (-1) ** weyl.lengths[w]

    def test_unknown_label(self) -> None:
        """Unknown character labels raise WeylError."""
        with pytest.raises(WeylError):
            character_table(weyl_group('A1')).value('(3)', 0)

    def test_twisted_needs_sigma(self) -> None:
        """Twisted types read their values from the data pack."""
        weyl = weyl_group('2A2')
        with pytest.raises(TwistedDataAbsentError):
            character_table(weyl)
        table = character_table(weyl, resolve_pack('2A2').sigma)
        assert set(table.labels) == {'(3)', '(2,1)', '(1,1,1)'}
        assert table.value('(3)', weyl.identity) == 1

    def test_twisted_values_are_w0_shifted(self) -> None:
        """Tr(sigma_E o w) = chi^E(w0 w) for 2A3."""
        weyl = weyl_group('2A3')
        plain = character_table(weyl_group('A3'))
        twisted = character_table(weyl, resolve_pack('2A3').sigma)
        a3 = weyl_group('A3')
        for w in range(weyl.order):
            word = weyl.words[w]
            shifted = a3.multiply(a3.longest, a3.element_from_word(word))
            for label in twisted.labels:
                assert twisted.value(label, w) == plain.value(label, shifted)
