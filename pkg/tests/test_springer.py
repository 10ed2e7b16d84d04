"""Tests for data packs, Springer data and Y-functions."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from greencheck.errors import AdmissibilityError, PackError
from greencheck.exact import IntPoly
from greencheck.springer import (
    COMPONENT_GROUPS,
    GFClass,
    ResidueSign,
    dump_pack,
    embedded_pack,
    embedded_pack_names,
    is_prime_power,
    load_pack,
    resolve_pack,
    type_A_springer,
    y_rank,
    y_stability_violations,
    y_value,
)
from greencheck.weyl import SUPPORTED_TYPES


if TYPE_CHECKING:
    from pathlib import Path


PORC_DELTA = 'delta = {modulus = 3, signs = {1 = 1, 2 = -1}}'


class TestComponentGroup:
    """Tests for ComponentGroup.power."""

    def test_cyclic_powers(self) -> None:
        """a^r in C2 and C3."""
        c2, c3 = COMPONENT_GROUPS['C2'], COMPONENT_GROUPS['C3']
        assert c2.power('g', 3) == 'g'
        assert c2.power('g', 2) == '1'
        assert c3.power('g', 2) == 'g2'
        assert c3.power('g2', 3) == '1'

    def test_s3_powers(self) -> None:
        """Powers in S3 depend only on element orders."""
        s3 = COMPONENT_GROUPS['S3']
        assert s3.order == 6
        assert s3.power('(123)', 3) == '1'
        assert s3.power('(123)', 5) == '(123)'
        assert s3.power('(12)', 3) == '(12)'
        assert s3.power('(12)', 2) == '1'


class TestResidueSign:
    """Tests for ResidueSign."""

    def test_constant(self) -> None:
        """A constant sign is defined everywhere."""
        sign = ResidueSign.constant(-1)
        assert sign.is_constant
        assert sign(7) == -1

    def test_undefined_residue(self) -> None:
        """Residues missing from the table raise AdmissibilityError."""
        sign = ResidueSign(3, ((1, 1), (2, -1)))
        assert sign(4) == 1
        assert sign(2) == -1
        assert not sign.defined(3)
        with pytest.raises(AdmissibilityError):
            sign(3)

    def test_stable_table(self) -> None:
        """m = 4 with 1 -> +1 and 3 -> -1 respects sign(a^r) = sign(a)^r."""
        assert ResidueSign(4, ((1, 1), (3, -1))).stability_violations() == []

    def test_unstable_table(self) -> None:
        """m = 5 alternating signs break the rule at a = 2, r = 3."""
        sign = ResidueSign(5, ((1, 1), (2, -1), (3, 1), (4, -1)))
        assert (2, 3) in sign.stability_violations()


class TestPackLoading:
    """Tests for load_pack and validation failures."""

    def test_porc_fixture(self, porc_pack_text: str) -> None:
        """The mod-3 fixture loads and restricts admissible q."""
        pack = load_pack(porc_pack_text)
        assert pack.type_label == 'A1'
        assert pack.has_residue_signs
        assert pack.admissible(2)
        assert pack.admissible(4)
        assert not pack.admissible(3)
        assert pack.entry('(1,1)').delta(2) == -1
        with pytest.raises(AdmissibilityError):
            pack.require_admissible(9)

    @pytest.mark.parametrize(
        ('old', 'new', 'code'),
        [
            (PORC_DELTA, 'delta = {modulus = 5, signs = {1 = 1, 2 = -1, 3 = 1, 4 = -1}}', 'sign-stability'),
            ('d = 0', 'd = 2', 'd-mismatch'),
            ('class_label = "(1,1)"', 'class_label = "(2)"', 'not-injective'),
            ('[-1, 0, 1]', '[0, 0, 1]', 'class-data'),
            ('label = "(1,1)"\ndim = 0', 'label = "(2)"\ndim = 0', 'class-data'),
            ('char_label = "(2)"', 'char_label = "(3)"', 'label-mismatch'),
            ('type = "A1"', 'type = "A1"\ncolour = "red"', 'schema'),
            ('type = "A1"', 'type = "E8"', 'schema'),
            ('{modulus = 3, signs = {1 = 1, 2 = -1}}', '{modulus = 3, signs = {1 = 1, 2 = 2}}', 'schema'),
        ],
    )
    def test_broken_packs(self, porc_pack_text: str, old: str, new: str, code: str) -> None:
        """Each broken variant fails with its machine-readable code."""
        assert old in porc_pack_text
        with pytest.raises(PackError) as info:
            load_pack(porc_pack_text.replace(old, new, 1))
        assert info.value.code == code

    def test_not_toml(self) -> None:
        """Unparseable input is a schema error."""
        with pytest.raises(PackError) as info:
            load_pack(b'type = [')
        assert info.value.code == 'schema'

    def test_blank_provenance(self, porc_pack_text: str) -> None:
        """Provenance is mandatory."""
        text = '\n'.join(
            'provenance = " "' if line.startswith('provenance') else line
            for line in porc_pack_text.splitlines()
        )
        with pytest.raises(PackError) as info:
            load_pack(text)
        assert info.value.code == 'schema'

    def test_dump_round_trip(self) -> None:
        """Dumped embedded packs load back unchanged."""
        for name in ('b2', '2a2'):
            pack = embedded_pack(name)
            assert load_pack(dump_pack(pack)) == pack

    def test_non_integral_class_size(self) -> None:
        """A size polynomial that is not integral at q is class data error."""
        with pytest.raises(PackError) as info:
            GFClass('1', IntPoly((1,)), 2).size(3)
        assert info.value.code == 'class-data'


class TestResolvePack:
    """Tests for resolve_pack and embedded packs."""

    @pytest.mark.parametrize('label', SUPPORTED_TYPES)
    def test_every_type_resolves(self, label: str) -> None:
        """Every supported type has validated data."""
        pack = resolve_pack(label)
        assert pack.type_label == label
        assert pack.provenance

    def test_embedded_names(self) -> None:
        """Non type-A labels ship as package data."""
        assert embedded_pack_names() == ['2a2', '2a3', 'b2', 'g2']
        with pytest.raises(PackError) as info:
            embedded_pack('e8')
        assert info.value.code == 'not-found'

    def test_explicit_path(self, porc_pack_path: Path) -> None:
        """An explicit path wins and must match the requested type."""
        assert resolve_pack('A1', pack_path=porc_pack_path).has_residue_signs
        assert resolve_pack(None, pack_path=porc_pack_path).type_label == 'A1'
        with pytest.raises(PackError) as info:
            resolve_pack('A2', pack_path=porc_pack_path)
        assert info.value.code == 'label-mismatch'

    def test_pack_dir(self, tmp_path: Path, porc_pack_text: str) -> None:
        """A pack directory overrides generated data."""
        (tmp_path / 'a1.toml').write_text(porc_pack_text)
        assert resolve_pack('A1', pack_dir=tmp_path).has_residue_signs
        assert not resolve_pack('A2', pack_dir=tmp_path).has_residue_signs

    def test_not_found(self) -> None:
        """Unknown labels and missing labels."""
        for label in (None, 'E8'):
            with pytest.raises(PackError) as info:
                resolve_pack(label)
            assert info.value.code == 'not-found'

    def test_bad_primes(self) -> None:
        """G2 data excludes characteristics 2 and 3."""
        pack = resolve_pack('G2')
        assert pack.admissible(5)
        assert pack.admissible(7)
        assert not pack.admissible(4)
        assert not pack.admissible(9)
        assert not pack.admissible(6)
        assert not resolve_pack('B2').admissible(8)


class TestTypeA:
    """Tests for the generated type A data."""

    def test_gl2(self) -> None:
        """Columns by dimension, identity class first."""
        pack = type_A_springer(2)
        assert pack.columns() == (('(1,1)', '1'), ('(2)', '1'))
        assert pack.column_labels() == ('(1,1)', '(2)')
        assert pack.entry('(1,1)').d == 1
        assert pack.entry('(2)').d == 0
        assert pack.class_size('(2)', '1', 3) == 8

    @pytest.mark.parametrize('n', [2, 3, 4, 5])
    def test_class_sizes_count_unipotents(self, n: int) -> None:
        """Class sizes add up to q^{n(n-1)}."""
        pack = type_A_springer(n)
        for q in (2, 3):
            assert sum(cls.total_size(q) for cls in pack.classes) == q ** (n * (n - 1))

    def test_out_of_range(self) -> None:
        """Only n = 2..5 is generated."""
        with pytest.raises(PackError):
            type_A_springer(6)


class TestYFunctions:
    """Tests for y_value and y_stability_violations."""

    def test_support(self) -> None:
        """Y_E lives on C(E)."""
        pack = type_A_springer(2)
        assert y_value(pack, '(2)', '(2)', '1', 3) == 1
        assert y_value(pack, '(2)', '(1,1)', '1', 3) == 0

    def test_residue_sign(self, porc_pack_text: str) -> None:
        """delta_E(q) enters Y_E."""
        pack = load_pack(porc_pack_text)
        assert y_value(pack, '(1,1)', '(1,1)', '1', 2) == -1
        assert y_value(pack, '(1,1)', '(1,1)', '1', 4) == 1

    def test_component_characters(self) -> None:
        """B2 has a C2 class carrying both characters of A(u)."""
        pack = resolve_pack('B2')
        split = [entry for entry in pack.springer if entry.class_label == '(3,1,1)']
        assert sorted(entry.a_character for entry in split) == [(1, -1), (1, 1)]

    @pytest.mark.parametrize(
        ('label', 'q', 'r'),
        [
            ('A2', 2, 5),
            ('A2', 3, 11),
            ('B2', 3, 7),
            ('G2', 5, 11),
            ('2A2', 2, 5),
            ('2A2', 3, 7),
            ('2A2', 2, 11),
            ('2A3', 2, 5),
            ('2A3', 3, 7),
            ('2A3', 3, 11),
        ],
    )
    def test_stable_under_frobenius_power(self, label: str, q: int, r: int) -> None:
        """Y at q^r on u_{a^r} equals Y at q on u_a."""
        assert y_stability_violations(resolve_pack(label), q, r) == []

    def test_porc_fixture_stable(self, porc_pack_text: str) -> None:
        """q = 2 and r = 5: 2^5 = 2 mod 3, so the sign survives."""
        assert y_stability_violations(load_pack(porc_pack_text), 2, 5) == []

    @pytest.mark.parametrize('label', SUPPORTED_TYPES)
    def test_full_rank(self, label: str) -> None:
        """The Y-functions are linearly independent."""
        pack = resolve_pack(label)
        assert y_rank(pack) == len(pack.springer)


class TestPrimePowers:
    """Tests for is_prime_power."""

    @pytest.mark.parametrize(('q', 'expected'), [(1, False), (2, True), (4, True), (6, False), (9, True), (12, False), (27, True)])
    def test_values(self, q: int, expected: bool) -> None:
        """Prime powers have exactly one prime factor."""
        assert is_prime_power(q) is expected
