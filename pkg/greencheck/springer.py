"""Unipotent classes, the Springer correspondence and Y-functions.

Data for type A (GL_n) is generated from partitions. Every other supported type ships as
an embedded TOML pack under ``greencheck/packs`` that is validated on load.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib.resources import files
from math import gcd
from pathlib import Path

import sympy
import tomlkit
import tomlkit.exceptions
from loguru import logger
from pydantic import BaseModel, ValidationError

from greencheck.combinatorics import Partition, partitions
from greencheck.errors import AdmissibilityError, GreenCheckError, PackError
from greencheck.exact import IntPoly, RatMatrix
from greencheck.weyl import (
    SUPPORTED_TYPES,
    SigmaData,
    WeylGroupData,
    character_table,
    weyl_group,
)


PACK_PACKAGE = 'greencheck.packs'
"""Package holding the embedded ``*.toml`` packs."""

STABILITY_PRIMES: tuple[int, ...] = (3, 5, 7, 11)
"""Odd primes r for which the sign-stability law is checked at load."""

SAMPLE_QS: tuple[int, ...] = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29)
"""Prime powers used for load-time class-size checks and interpolation defaults."""


# ---------------------------------------------------------------------------
# Component groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentGroup:
    """A small finite group A(u) given by classes and its rational irreducible characters."""

    name: str
    """One of trivial, C2, C3, C4, S3."""
    class_labels: tuple[str, ...]
    """Conjugacy class labels; the identity class comes first."""
    class_sizes: tuple[int, ...]
    """Class sizes aligned with ``class_labels``."""
    characters: dict[str, tuple[int, ...]]
    """Rational-valued irreducible characters by name."""

    @property
    def order(self) -> int:
        return sum(self.class_sizes)

    def power(self, a_label: str, r: int) -> str:
        """Label of the class of a^r."""
        k = self.class_labels.index(a_label)
        if self.name == 'S3':
            element_order = (1, 2, 3)[k]
            return self.class_labels[k if r % element_order else 0]
        return self.class_labels[(k * r) % len(self.class_labels)]


COMPONENT_GROUPS: dict[str, ComponentGroup] = {
    'trivial': ComponentGroup('trivial', ('1',), (1,), {'1': (1,)}),
    'C2': ComponentGroup('C2', ('1', 'g'), (1, 1), {'1': (1, 1), 'sgn': (1, -1)}),
    'C3': ComponentGroup('C3', ('1', 'g', 'g2'), (1, 1, 1), {'1': (1, 1, 1)}),
    'C4': ComponentGroup(
        'C4', ('1', 'g', 'g2', 'g3'), (1, 1, 1, 1), {'1': (1, 1, 1, 1), 'sgn': (1, -1, 1, -1)}
    ),
    'S3': ComponentGroup(
        'S3',
        ('1', '(12)', '(123)'),
        (1, 3, 2),
        {'1': (1, 1, 1), 'sgn': (1, -1, 1), 'refl': (2, 0, -1)},
    ),
}


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidueSign:
    """A sign depending only on q modulo ``modulus``."""

    modulus: int
    """m >= 1; m = 1 is a constant sign."""
    signs: tuple[tuple[int, int], ...]
    """Sorted (residue, sign) pairs; residues missing here have no defined sign."""

    @classmethod
    def constant(cls, sign: int = 1) -> ResidueSign:
        return cls(1, ((0, sign),))

    @property
    def is_constant(self) -> bool:
        return self.modulus == 1

    def defined(self, q: int) -> bool:
        return q % self.modulus in dict(self.signs)

    def __call__(self, q: int) -> int:
        table = dict(self.signs)
        residue = q % self.modulus
        if residue not in table:
            msg = f'sign undefined for q = {q} (residue {residue} mod {self.modulus})'
            raise AdmissibilityError(msg)
        return table[residue]

    def stability_violations(
        self, primes: tuple[int, ...] = STABILITY_PRIMES
    ) -> list[tuple[int, int]]:
        """(residue, r) pairs breaking sign(a^r mod m) = sign(a)^r."""
        table = dict(self.signs)
        violations = []
        for residue, sign in self.signs:
            for r in primes:
                if gcd(r, self.modulus) != 1:
                    continue
                image = pow(residue, r, self.modulus)
                if table.get(image) != sign**r:
                    violations.append((residue, r))
        return violations


@dataclass(frozen=True)
class GFClass:
    """One G^F-class u_a inside C^F."""

    a_label: str
    """Class of A(u) labelling this piece."""
    size_poly: IntPoly
    """Numerator of the class size polynomial."""
    denominator: int = 1
    """Common denominator of the size polynomial."""

    def size(self, q: int) -> int:
        numerator = int(self.size_poly(q))
        if numerator % self.denominator:
            msg = f'class size of u_{self.a_label} is not integral at q = {q}'
            raise PackError(msg, code='class-data')
        return numerator // self.denominator


@dataclass(frozen=True)
class UnipotentClass:
    """Unipotent class C with its component group and G^F-class splitting."""

    label: str
    """Class label; partitions for classical types, Bala-Carter labels for G2."""
    dim: int
    """dim C (even)."""
    group: ComponentGroup
    """A(u_0)."""
    gf_classes: tuple[GFClass, ...]
    """One entry per class of A(u_0), in the group's class order."""

    def piece(self, a_label: str) -> GFClass:
        for piece in self.gf_classes:
            if piece.a_label == a_label:
                return piece
        msg = f'class {self.label} has no A-class {a_label!r}'
        raise PackError(msg, code='label-mismatch')

    def total_size(self, q: int) -> int:
        return sum(piece.size(q) for piece in self.gf_classes)


@dataclass(frozen=True)
class SpringerEntry:
    """Image of one character E under the Springer correspondence."""

    char_label: str
    """E."""
    class_label: str
    """C(E)."""
    a_character: tuple[int, ...]
    """epsilon_E as values on the classes of A(u_0)."""
    d: int
    """d_E = (dim G - dim C - dim T) / 2."""
    delta: ResidueSign
    """delta_E."""


@dataclass(frozen=True)
class DataPack:
    """Validated Springer data for one type."""

    type_label: str
    """Weyl type label."""
    provenance: str
    """Where the data comes from."""
    bad_primes: tuple[int, ...]
    """Characteristics for which the data does not apply."""
    classes: tuple[UnipotentClass, ...]
    """Unipotent classes in pack order."""
    springer: tuple[SpringerEntry, ...]
    """One entry per character in Irr(W)^gamma."""
    sigma: SigmaData | None = None
    """Twisted character values, required for twisted types."""

    def unipotent_class(self, label: str) -> UnipotentClass:
        for cls in self.classes:
            if cls.label == label:
                return cls
        msg = f'unknown unipotent class {label!r} in {self.type_label} pack'
        raise PackError(msg, code='label-mismatch')

    def entry(self, char_label: str) -> SpringerEntry:
        for entry in self.springer:
            if entry.char_label == char_label:
                return entry
        msg = f'unknown character {char_label!r} in {self.type_label} pack'
        raise PackError(msg, code='label-mismatch')

    @property
    def char_labels(self) -> tuple[str, ...]:
        return tuple(entry.char_label for entry in self.springer)

    @property
    def has_residue_signs(self) -> bool:
        return any(not entry.delta.is_constant for entry in self.springer)

    def columns(self) -> tuple[tuple[str, str], ...]:
        """(class label, A-class label) pairs, ordered by dim C then label."""
        ordered = sorted(self.classes, key=lambda cls: (cls.dim, cls.label))
        return tuple((cls.label, piece.a_label) for cls in ordered for piece in cls.gf_classes)

    def column_labels(self) -> tuple[str, ...]:
        labels = []
        for class_label, a_label in self.columns():
            trivial = self.unipotent_class(class_label).group.name == 'trivial'
            labels.append(class_label if trivial else f'{class_label}:{a_label}')
        return tuple(labels)

    def class_size(self, class_label: str, a_label: str, q: int) -> int:
        return self.unipotent_class(class_label).piece(a_label).size(q)

    def admissible(self, q: int) -> bool:
        """q is a prime power in a good characteristic with all signs defined."""
        factors = sympy.factorint(q) if q >= 2 else {}
        if len(factors) != 1:
            return False
        (p,) = factors
        return p not in self.bad_primes and all(entry.delta.defined(q) for entry in self.springer)

    def require_admissible(self, q: int) -> None:
        if not self.admissible(q):
            msg = f'q = {q} is not admissible for the {self.type_label} pack'
            raise AdmissibilityError(msg)


def is_prime_power(q: int) -> bool:
    return q >= 2 and len(sympy.factorint(q)) == 1


# ---------------------------------------------------------------------------
# Pack schema (TOML)
# ---------------------------------------------------------------------------


class GFClassSchema(BaseModel, extra='forbid'):
    """Entry under [[classes.gf_classes]]."""

    a_label: str
    """A-class label."""
    size_poly: list[int]
    """Little-endian coefficients of the class size numerator."""
    size_denominator: int = 1
    """Positive common denominator."""


class ClassSchema(BaseModel, extra='forbid'):
    """Entry under [[classes]]."""

    label: str
    """Unipotent class label."""
    dim: int
    """dim C."""
    component_group: str = 'trivial'
    """Name of A(u_0)."""
    gf_classes: list[GFClassSchema]
    """G^F-classes inside C^F."""


class DeltaSchema(BaseModel, extra='forbid'):
    """Inline ``delta = {modulus, signs}`` table."""

    modulus: int = 1
    """Residue modulus m."""
    signs: dict[int, int] = {0: 1}
    """Residue to sign."""


class SpringerSchema(BaseModel, extra='forbid'):
    """Entry under [[springer]]."""

    char_label: str
    """Character label E."""
    class_label: str
    """Unipotent class C(E)."""
    a_character: list[int]
    """epsilon_E on the A-classes."""
    d: int
    """d_E."""
    delta: DeltaSchema = DeltaSchema()
    """delta_E."""


class SigmaSchema(BaseModel, extra='forbid'):
    """The [sigma_table] of twisted packs."""

    elements: list[str]
    """Reduced words of the W-elements indexing the columns."""
    degrees: dict[str, int]
    """dim E per character."""
    rows: dict[str, list[int]]
    """Tr(sigma_E o w, E) per character."""


class PackSchema(BaseModel, extra='forbid'):
    """Top level of a pack file."""

    type: str
    """Type label."""
    provenance: str
    """Literature source of the data."""
    bad_primes: list[int] = []
    """Excluded characteristics."""
    classes: list[ClassSchema]
    """Unipotent classes."""
    springer: list[SpringerSchema]
    """Springer correspondence."""
    sigma_table: SigmaSchema | None = None
    """Twisted character values."""


def _pack_from_schema(schema: PackSchema) -> DataPack:
    classes = []
    for cls in schema.classes:
        group = COMPONENT_GROUPS.get(cls.component_group)
        if group is None:
            msg = f'unknown component group {cls.component_group!r} for class {cls.label}'
            raise PackError(msg, code='class-data')
        pieces = tuple(
            GFClass(piece.a_label, IntPoly(tuple(piece.size_poly)), piece.size_denominator)
            for piece in cls.gf_classes
        )
        classes.append(UnipotentClass(cls.label, cls.dim, group, pieces))
    springer = tuple(
        SpringerEntry(
            entry.char_label,
            entry.class_label,
            tuple(entry.a_character),
            entry.d,
            ResidueSign(entry.delta.modulus, tuple(sorted(entry.delta.signs.items()))),
        )
        for entry in schema.springer
    )
    sigma = None
    if schema.sigma_table is not None:
        table = schema.sigma_table
        sigma = SigmaData(
            tuple(table.elements),
            dict(table.degrees),
            {label: tuple(row) for label, row in table.rows.items()},
        )
    return DataPack(
        schema.type,
        schema.provenance,
        tuple(schema.bad_primes),
        tuple(classes),
        springer,
        sigma,
    )


def load_pack(data: bytes | str) -> DataPack:
    """Parse and fully validate a pack; any failure raises PackError."""
    try:
        text = data.decode('utf-8') if isinstance(data, bytes) else data
        raw = tomlkit.parse(text).unwrap()
    except (UnicodeDecodeError, tomlkit.exceptions.TOMLKitError) as exc:
        msg = f'not a TOML pack: {exc}'
        raise PackError(msg, code='schema') from exc
    try:
        schema = PackSchema.model_validate(raw)
    except ValidationError as exc:
        msg = str(exc)
        raise PackError(msg, code='schema') from exc
    pack = _pack_from_schema(schema)
    validate_pack(pack)
    logger.debug(f'Loaded {pack.type_label} pack ({len(pack.classes)} classes)')
    return pack


def load_pack_file(path: Path) -> DataPack:
    return load_pack(path.read_bytes())


def dump_pack(pack: DataPack) -> str:
    """Canonical TOML text of ``pack``; ``load_pack(dump_pack(p)) == p``."""
    doc = tomlkit.document()
    doc['type'] = pack.type_label
    doc['provenance'] = pack.provenance
    doc['bad_primes'] = list(pack.bad_primes)
    classes = tomlkit.aot()
    for cls in pack.classes:
        table = tomlkit.table()
        table['label'] = cls.label
        table['dim'] = cls.dim
        table['component_group'] = cls.group.name
        pieces = tomlkit.array()
        for piece in cls.gf_classes:
            entry = tomlkit.inline_table()
            entry['a_label'] = piece.a_label
            entry['size_poly'] = list(piece.size_poly.coefficients)
            entry['size_denominator'] = piece.denominator
            pieces.append(entry)
        table['gf_classes'] = pieces.multiline(multiline=True)
        classes.append(table)
    doc['classes'] = classes
    springer = tomlkit.aot()
    for spr in pack.springer:
        table = tomlkit.table()
        table['char_label'] = spr.char_label
        table['class_label'] = spr.class_label
        table['a_character'] = list(spr.a_character)
        table['d'] = spr.d
        delta = tomlkit.inline_table()
        delta['modulus'] = spr.delta.modulus
        signs = tomlkit.inline_table()
        for residue, sign in spr.delta.signs:
            signs[str(residue)] = sign
        delta['signs'] = signs
        table['delta'] = delta
        springer.append(table)
    doc['springer'] = springer
    if pack.sigma is not None:
        sigma = tomlkit.table()
        sigma['elements'] = list(pack.sigma.words)
        degrees = tomlkit.table()
        for label, degree in pack.sigma.degrees.items():
            degrees[label] = degree
        sigma['degrees'] = degrees
        rows = tomlkit.table()
        for label, row in pack.sigma.rows.items():
            rows[label] = list(row)
        sigma['rows'] = rows
        doc['sigma_table'] = sigma
    return tomlkit.dumps(doc)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _sample_qs(pack: DataPack, count: int = 3) -> list[int]:
    return [q for q in SAMPLE_QS if pack.admissible(q)][:count]


def _validate_classes(pack: DataPack) -> None:
    labels = [cls.label for cls in pack.classes]
    if len(set(labels)) != len(labels):
        msg = f'duplicate unipotent class labels in {labels}'
        raise PackError(msg, code='class-data')
    for cls in pack.classes:
        if cls.dim < 0 or cls.dim % 2:
            msg = f'dim of class {cls.label} must be even, got {cls.dim}'
            raise PackError(msg, code='class-data')
        if tuple(piece.a_label for piece in cls.gf_classes) != cls.group.class_labels:
            msg = (
                f'class {cls.label} must list the A-classes {cls.group.class_labels} in order, '
                f'got {[piece.a_label for piece in cls.gf_classes]}'
            )
            raise PackError(msg, code='class-data')
        if any(piece.denominator < 1 for piece in cls.gf_classes):
            msg = f'non-positive size denominator in class {cls.label}'
            raise PackError(msg, code='class-data')


def _validate_springer(pack: DataPack, weyl: WeylGroupData) -> None:
    seen_chars: set[str] = set()
    images: set[tuple[str, tuple[int, ...]]] = set()
    for entry in pack.springer:
        if entry.char_label in seen_chars:
            msg = f'character {entry.char_label} listed twice'
            raise PackError(msg, code='label-mismatch')
        seen_chars.add(entry.char_label)
        cls = pack.unipotent_class(entry.class_label)
        if entry.a_character not in cls.group.characters.values():
            msg = (
                f'{entry.char_label}: {entry.a_character} is not a rational irreducible '
                f'character of {cls.group.name}'
            )
            raise PackError(msg, code='class-data')
        image = (entry.class_label, entry.a_character)
        if image in images:
            msg = f'{entry.char_label}: Springer image {image} is not unique'
            raise PackError(msg, code='not-injective')
        images.add(image)
        expected, remainder = divmod(weyl.dim_group - cls.dim - weyl.dim_torus, 2)
        if entry.d < 0 or remainder or entry.d != expected:
            msg = f'{entry.char_label}: d = {entry.d} but dim data give {expected}'
            raise PackError(msg, code='d-mismatch')
        if entry.delta.modulus < 1 or not entry.delta.signs:
            msg = f'{entry.char_label}: empty or invalid sign table'
            raise PackError(msg, code='schema')
        for residue, sign in entry.delta.signs:
            if sign not in (1, -1) or not 0 <= residue < entry.delta.modulus:
                msg = f'{entry.char_label}: bad sign entry {residue} -> {sign}'
                raise PackError(msg, code='schema')
        violations = entry.delta.stability_violations()
        if violations:
            residue, r = violations[0]
            msg = (
                f'{entry.char_label}: sign table mod {entry.delta.modulus} breaks '
                f'sign(a^r) = sign(a)^r at a = {residue}, r = {r}'
            )
            raise PackError(msg, code='sign-stability')


def _validate_sizes(pack: DataPack, weyl: WeylGroupData) -> None:
    for q in _sample_qs(pack):
        total = 0
        for cls in pack.classes:
            for piece in cls.gf_classes:
                size = piece.size(q)
                if size <= 0:
                    msg = f'class {cls.label}:{piece.a_label} has size {size} at q = {q}'
                    raise PackError(msg, code='class-data')
                total += size
        expected = q ** (2 * weyl.num_positive_roots)
        if total != expected:
            msg = f'unipotent classes add up to {total} at q = {q}, expected {expected}'
            raise PackError(msg, code='class-data')


def validate_pack(pack: DataPack) -> None:
    """All load-time invariants, including the cross-check against weyl-core labels."""
    if pack.type_label not in SUPPORTED_TYPES:
        msg = f'unsupported type label {pack.type_label!r}'
        raise PackError(msg, code='schema')
    if not pack.provenance.strip():
        msg = 'provenance string is mandatory'
        raise PackError(msg, code='schema')
    weyl = weyl_group(pack.type_label)
    _validate_classes(pack)
    _validate_springer(pack, weyl)
    if weyl.datum.is_twisted and pack.sigma is None:
        msg = f'twisted character data absent for {pack.type_label}'
        raise PackError(msg, code='schema')
    try:
        table = character_table(weyl, pack.sigma)
    except GreenCheckError as exc:
        msg = f'character table: {exc}'
        raise PackError(msg, code='class-data') from exc
    if set(table.labels) != set(pack.char_labels):
        msg = (
            f'pack characters {sorted(pack.char_labels)} != '
            f'Weyl characters {sorted(table.labels)}'
        )
        raise PackError(msg, code='label-mismatch')
    _validate_sizes(pack, weyl)
    rank = y_rank(pack)
    if rank != len(pack.springer):
        msg = f'Y-functions have rank {rank}, expected {len(pack.springer)}'
        raise PackError(msg, code='class-data')


# ---------------------------------------------------------------------------
# Type A and pack lookup
# ---------------------------------------------------------------------------


def gl_order_poly(n: int) -> IntPoly:
    """|GL_n(q)| = q^{n(n-1)/2} prod_{i=1}^{n} (q^i - 1)."""
    result = IntPoly.constant(1)
    for i in range(1, n + 1):
        result *= IntPoly.monomial(i) - 1
    return result.shift(n * (n - 1) // 2)


def gl_centralizer_poly(shape: Partition) -> IntPoly:
    """|Z(u_lambda)| = q^{sum lambda'_i^2 - sum_i m_i(m_i+1)/2} prod_i prod_{j<=m_i} (q^j - 1)."""
    exponent = sum(part * part for part in shape.conjugate.parts)
    result = IntPoly.constant(1)
    for m in shape.multiplicities.values():
        exponent -= m * (m + 1) // 2
        for j in range(1, m + 1):
            result *= IntPoly.monomial(j) - 1
    return result.shift(exponent)


@functools.cache
def type_A_springer(n: int) -> DataPack:
    """Generated GL_n data: chi^lambda -> class lambda, d = n(lambda), delta = +1."""
    if not 2 <= n <= 5:
        msg = f'type A data is generated for 2 <= n <= 5, got n = {n}'
        raise PackError(msg, code='schema')
    order = gl_order_poly(n)
    classes = []
    springer = []
    for shape in partitions(n):
        size = order.divide_exact(gl_centralizer_poly(shape))
        dim = n * n - sum(part * part for part in shape.conjugate.parts)
        classes.append(
            UnipotentClass(shape.label, dim, COMPONENT_GROUPS['trivial'], (GFClass('1', size),))
        )
        springer.append(
            SpringerEntry(shape.label, shape.label, (1,), shape.n_value, ResidueSign.constant())
        )
    pack = DataPack(
        type_label=f'A{n - 1}',
        provenance=f'generated: GL_{n}, unipotent classes by Jordan type, chi^lambda -> lambda',
        bad_primes=(),
        classes=tuple(classes),
        springer=tuple(springer),
    )
    validate_pack(pack)
    return pack


def embedded_pack_names() -> list[str]:
    return sorted(
        entry.name.removesuffix('.toml')
        for entry in files(PACK_PACKAGE).iterdir()
        if entry.name.endswith('.toml')
    )


@functools.cache
def embedded_pack(name: str) -> DataPack:
    """Embedded pack by file stem, e.g. ``'b2'`` or ``'2a2'``."""
    resource = files(PACK_PACKAGE).joinpath(f'{name.lower()}.toml')
    if not resource.is_file():
        msg = f'no embedded pack {name!r}; available: {", ".join(embedded_pack_names())}'
        raise PackError(msg, code='not-found')
    return load_pack(resource.read_bytes())


def _generated_rank(type_label: str) -> int | None:
    if type_label.startswith('A') and type_label[1:].isdigit():
        return int(type_label[1:]) + 1
    return None


def resolve_pack(
    type_label: str | None,
    *,
    pack_path: Path | None = None,
    pack_dir: Path | None = None,
) -> DataPack:
    """Pack for ``type_label``: explicit path, then ``pack_dir``, then generated or embedded."""
    if pack_path is not None:
        if pack_path.exists():
            pack = load_pack_file(pack_path)
        else:
            pack = embedded_pack(pack_path.stem)
        if type_label is not None and pack.type_label != type_label:
            msg = f'pack {pack_path} is for {pack.type_label}, not {type_label}'
            raise PackError(msg, code='label-mismatch')
        return pack
    if type_label is None:
        msg = 'either a type label or a pack path is required'
        raise PackError(msg, code='not-found')
    if type_label not in SUPPORTED_TYPES:
        msg = f'unsupported type label {type_label!r}'
        raise PackError(msg, code='not-found')
    if pack_dir is not None:
        candidate = pack_dir / f'{type_label.lower()}.toml'
        if candidate.is_file():
            logger.debug(f'Using pack {type_label} from {candidate}')
            return load_pack_file(candidate)
    n = _generated_rank(type_label)
    if n is not None:
        return type_A_springer(n)
    return embedded_pack(type_label.lower())


# ---------------------------------------------------------------------------
# Y-functions
# ---------------------------------------------------------------------------


def y_value(pack: DataPack, char_label: str, class_label: str, a_label: str, q: int) -> int:
    """Y_E(u_a) = delta_E(q) * epsilon_E(a) on C(E), 0 elsewhere."""
    entry = pack.entry(char_label)
    cls = pack.unipotent_class(class_label)
    position = cls.group.class_labels.index(cls.piece(a_label).a_label)
    if class_label != entry.class_label:
        return 0
    return entry.delta(q) * entry.a_character[position]


def y_rank(pack: DataPack) -> int:
    """Rank of the Y-functions as vectors over the (class, a) columns."""
    columns = pack.columns()
    rows = []
    for entry in pack.springer:
        cls = pack.unipotent_class(entry.class_label)
        rows.append(
            [
                entry.a_character[cls.group.class_labels.index(a)] if c == entry.class_label else 0
                for c, a in columns
            ]
        )
    return RatMatrix.from_rows(rows).rank()


def y_stability_violations(pack: DataPack, q: int, r: int) -> list[str]:
    """Entries where Y at q^r on u_{a^r} differs from Y at q on u_a (odd r, r not dividing |A|)."""
    violations = []
    if r % 2 == 0:
        return violations
    for entry in pack.springer:
        cls = pack.unipotent_class(entry.class_label)
        if cls.group.order % r == 0:
            continue
        for a_label in cls.group.class_labels:
            image = cls.group.power(a_label, r)
            before = y_value(pack, entry.char_label, cls.label, a_label, q)
            after = y_value(pack, entry.char_label, cls.label, image, q**r)
            if before != after:
                violations.append(f'{entry.char_label} at {cls.label}:{a_label}')
    return violations
