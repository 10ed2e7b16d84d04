"""Weyl groups of the supported types, their twisted classes and character tables."""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING

from loguru import logger

from greencheck.combinatorics import Partition, cycle_type, mn_character, partitions
from greencheck.errors import TwistedDataAbsentError, WeylError


if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence


type Vector = tuple[int, ...]
type IntMatrix = tuple[tuple[int, ...], ...]

SUPPORTED_TYPES: tuple[str, ...] = ('A1', 'A2', 'A3', 'A4', 'B2', 'G2', '2A2', '2A3')
"""Closed list of type labels the pipeline runs on."""

WEYL_ORDERS: dict[str, int] = {
    'A1': 2,
    'A2': 6,
    'A3': 24,
    'A4': 120,
    'B2': 8,
    'G2': 12,
    '2A2': 6,
    '2A3': 24,
}

CARTAN_MATRICES: dict[str, IntMatrix] = {
    'B2': ((2, -2), (-1, 2)),
    'G2': ((2, -1), (-3, 2)),
}

B2_CHARACTERS: dict[str, tuple[int, int] | None] = {
    '2.': (1, 1),
    '.11': (-1, -1),
    '.2': (-1, 1),
    '11.': (1, -1),
    '1.1': None,
}
"""Linear characters by their values on (s1, s2); None marks the reflection character."""

G2_CHARACTERS: dict[str, tuple[int, int] | int] = {
    'phi1,0': (1, 1),
    'phi1,6': (-1, -1),
    "phi1,3'": (1, -1),
    "phi1,3''": (-1, 1),
    'phi2,1': 1,
    'phi2,2': 2,
}
"""Linear characters by values on (s1, s2); an int h gives the character 2cos(2 pi h k / m)."""


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b)) for row in a
    )


def mat_vec(a: IntMatrix, v: Vector) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class CartanDatum:
    """Root datum with a Frobenius twist, acting on an integer lattice."""

    label: str
    """Type label, one of SUPPORTED_TYPES (or an adjoint type-A label)."""
    rank: int
    """Semisimple rank."""
    lattice_rank: int
    """Rank of the lattice the Weyl group acts on (dim of the maximal torus)."""
    simple_roots: tuple[Vector, ...]
    """Simple roots in lattice coordinates."""
    simple_reflections: tuple[IntMatrix, ...]
    """Reflection matrices, one per simple root."""
    height: Vector
    """Linear functional that is positive exactly on positive roots."""
    twist: IntMatrix
    """The lattice automorphism gamma*."""
    twist_order: int = 1
    """d, with (gamma*)^d = identity."""
    flavor: str = 'gl'
    """'gl' for permutation lattices of GL_n / GU_n, 'adjoint' for root-lattice data."""

    @property
    def is_twisted(self) -> bool:
        return self.twist_order > 1

    @property
    def twist_inverse(self) -> IntMatrix:
        result = identity_matrix(self.lattice_rank)
        for _ in range(self.twist_order - 1):
            result = mat_mul(result, self.twist)
        return result

    def validate(self) -> None:
        """Check the reflection, twist and positivity invariants."""
        eye = identity_matrix(self.lattice_rank)
        for i, s in enumerate(self.simple_reflections):
            if mat_mul(s, s) != eye:
                msg = f'{self.label}: simple reflection s{i + 1} is not an involution'
                raise WeylError(msg)
            if mat_vec(s, self.simple_roots[i]) != tuple(-x for x in self.simple_roots[i]):
                msg = f'{self.label}: s{i + 1} does not negate its root'
                raise WeylError(msg)
        power = eye
        for _ in range(self.twist_order):
            power = mat_mul(power, self.twist)
        if power != eye:
            msg = f'{self.label}: twist does not have order dividing {self.twist_order}'
            raise WeylError(msg)
        if not self.is_twisted and self.twist != eye:
            msg = f'{self.label}: untwisted datum with non-trivial twist'
            raise WeylError(msg)
        reflections = set(self.simple_reflections)
        inverse = self.twist_inverse
        for s in self.simple_reflections:
            if mat_mul(mat_mul(self.twist, s), inverse) not in reflections:
                msg = f'{self.label}: twist does not permute the simple reflections'
                raise WeylError(msg)
        if any(sum(h * x for h, x in zip(self.height, root)) <= 0 for root in self.simple_roots):
            msg = f'{self.label}: height functional is not positive on simple roots'
            raise WeylError(msg)


def _gl_datum(label: str, n: int, *, twisted: bool) -> CartanDatum:
    roots = []
    reflections = []
    for i in range(n - 1):
        roots.append(tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)))
        swap = list(range(n))
        swap[i], swap[i + 1] = i + 1, i
        reflections.append(tuple(tuple(int(swap[c] == r) for c in range(n)) for r in range(n)))
    if twisted:
        # gamma* = -w0 on the permutation lattice (the unitary Frobenius)
        twist = tuple(tuple(-1 if c == n - 1 - r else 0 for c in range(n)) for r in range(n))
    else:
        twist = identity_matrix(n)
    return CartanDatum(
        label=label,
        rank=n - 1,
        lattice_rank=n,
        simple_roots=tuple(roots),
        simple_reflections=tuple(reflections),
        height=tuple(range(n, 0, -1)),
        twist=twist,
        twist_order=2 if twisted else 1,
        flavor='gl',
    )


def _adjoint_datum(label: str, cartan: IntMatrix) -> CartanDatum:
    rank = len(cartan)
    roots = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    reflections = []
    for i in range(rank):
        rows = [list(row) for row in identity_matrix(rank)]
        rows[i] = [int(i == k) - cartan[i][k] for k in range(rank)]
        reflections.append(tuple(tuple(row) for row in rows))
    return CartanDatum(
        label=label,
        rank=rank,
        lattice_rank=rank,
        simple_roots=roots,
        simple_reflections=tuple(reflections),
        height=(1,) * rank,
        twist=identity_matrix(rank),
        flavor='adjoint',
    )


def _type_a_cartan(rank: int) -> IntMatrix:
    return tuple(
        tuple(2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(rank))
        for i in range(rank)
    )


@functools.cache
def cartan_datum(label: str, *, adjoint: bool = False) -> CartanDatum:
    """Datum for a supported label; ``adjoint`` selects the root-lattice flavor of type A."""
    if label not in SUPPORTED_TYPES:
        msg = f'unsupported type label {label!r}; expected one of {", ".join(SUPPORTED_TYPES)}'
        raise WeylError(msg)
    if label in CARTAN_MATRICES:
        datum = _adjoint_datum(label, CARTAN_MATRICES[label])
    elif adjoint:
        if label.startswith('2'):
            msg = f'no adjoint flavor for twisted type {label}'
            raise WeylError(msg)
        datum = _adjoint_datum(label, _type_a_cartan(int(label[1:])))
    else:
        twisted = label.startswith('2')
        datum = _gl_datum(label, int(label.removeprefix('2')[1:]) + 1, twisted=twisted)
    datum.validate()
    return datum


@dataclass(frozen=True)
class GammaClass:
    """A gamma-conjugacy class of W."""

    representative: int
    """Index of the representative (the smallest index in the class)."""
    members: tuple[int, ...]
    """Sorted element indices."""
    label: str
    """Reduced word of the representative, e.g. ``s1s2``."""

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True, eq=False)
class WeylGroupData:
    """Explicit Weyl group: elements as root permutations, indexed in BFS order from 1."""

    datum: CartanDatum
    """The datum W was built from."""
    roots: tuple[Vector, ...]
    """All roots in lattice coordinates."""
    positive: tuple[bool, ...]
    """Positivity flag per root."""
    elements: tuple[tuple[int, ...], ...]
    """Root permutations; element 0 is the identity."""
    matrices: tuple[IntMatrix, ...]
    """Lattice matrices, aligned with ``elements``."""
    words: tuple[tuple[int, ...], ...]
    """Reduced words in 1-based simple reflection indices."""
    lengths: tuple[int, ...]
    """Number of positive roots sent to negative roots."""
    gamma_images: tuple[int, ...]
    """Index of gamma(w) for every w."""
    _by_matrix: dict[IntMatrix, int] = field(repr=False, compare=False, hash=False)

    @property
    def label(self) -> str:
        return self.datum.label

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def num_positive_roots(self) -> int:
        return sum(self.positive)

    @property
    def dim_group(self) -> int:
        return self.datum.lattice_rank + 2 * self.num_positive_roots

    @property
    def dim_torus(self) -> int:
        return self.datum.lattice_rank

    @property
    def identity(self) -> int:
        return 0

    @functools.cached_property
    def _mult(self) -> tuple[tuple[int, ...], ...]:
        index = {perm: i for i, perm in enumerate(self.elements)}
        return tuple(
            tuple(index[tuple(a[k] for k in b)] for b in self.elements) for a in self.elements
        )

    def multiply(self, a: int, b: int) -> int:
        return self._mult[a][b]

    @functools.cached_property
    def _inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self._mult)

    def inverse(self, a: int) -> int:
        return self._inverses[a]

    def gamma(self, a: int) -> int:
        return self.gamma_images[a]

    def index_of_matrix(self, matrix: IntMatrix) -> int:
        try:
            return self._by_matrix[matrix]
        except KeyError:
            msg = f'matrix {matrix} is not an element of W({self.label})'
            raise WeylError(msg) from None

    def element_from_word(self, word: Sequence[int]) -> int:
        element = self.identity
        for s in word:
            if not 1 <= s <= self.datum.rank:
                msg = f'simple reflection index {s} out of range for {self.label}'
                raise WeylError(msg)
            element = self.multiply(element, self._simple[s - 1])
        return element

    @functools.cached_property
    def _simple(self) -> tuple[int, ...]:
        return tuple(self._by_matrix[s] for s in self.datum.simple_reflections)

    def word_label(self, a: int) -> str:
        return ''.join(f's{s}' for s in self.words[a]) or 'e'

    def cycle_type(self, a: int) -> Partition:
        """Cycle type of w acting on the coordinates of a permutation lattice."""
        if self.datum.flavor != 'gl':
            msg = f'cycle types need a permutation lattice, not {self.datum.flavor}'
            raise WeylError(msg)
        return cycle_type(self._permutation(self.matrices[a]))

    @staticmethod
    def _permutation(matrix: IntMatrix) -> list[int]:
        n = len(matrix)
        return [next(r for r in range(n) if matrix[r][c]) for c in range(n)]

    @functools.cached_property
    def gamma_classes(self) -> tuple[GammaClass, ...]:
        return _enumerate_gamma_classes(self)

    @functools.cached_property
    def longest(self) -> int:
        return max(range(self.order), key=lambda a: self.lengths[a])

    def twisted_cycle_type(self, a: int) -> Partition:
        """Cycle type of gamma*^{-1} w up to sign: the permutation part of w0 * w for GU_n."""
        if self.datum.flavor != 'gl':
            msg = 'twisted cycle types need a permutation lattice'
            raise WeylError(msg)
        product = mat_mul(self.datum.twist_inverse, self.matrices[a])
        return cycle_type(self._permutation(tuple(tuple(abs(x) for x in r) for r in product)))


def _root_closure(datum: CartanDatum) -> list[Vector]:
    roots: list[Vector] = list(datum.simple_roots)
    seen = set(roots)
    queue = deque(roots)
    while queue:
        root = queue.popleft()
        for s in datum.simple_reflections:
            image = mat_vec(s, root)
            if image not in seen:
                seen.add(image)
                roots.append(image)
                queue.append(image)
    return roots


def build_weyl(datum: CartanDatum) -> WeylGroupData:
    """Enumerate W by closing the simple reflections over the root list."""
    if datum.label not in SUPPORTED_TYPES:
        msg = f'unsupported type label {datum.label!r}'
        raise WeylError(msg)
    roots = _root_closure(datum)
    root_index = {root: i for i, root in enumerate(roots)}
    positive = tuple(sum(h * x for h, x in zip(datum.height, root)) > 0 for root in roots)

    def permutation_of(matrix: IntMatrix) -> tuple[int, ...]:
        return tuple(root_index[mat_vec(matrix, root)] for root in roots)

    identity = identity_matrix(datum.lattice_rank)
    matrices = [identity]
    words: list[tuple[int, ...]] = [()]
    by_matrix = {identity: 0}
    queue = deque([0])
    while queue:
        current = queue.popleft()
        for s, reflection in enumerate(datum.simple_reflections, start=1):
            product = mat_mul(matrices[current], reflection)
            if product not in by_matrix:
                by_matrix[product] = len(matrices)
                matrices.append(product)
                words.append((*words[current], s))
                queue.append(by_matrix[product])
    elements = tuple(permutation_of(m) for m in matrices)
    if len(set(elements)) != len(elements):
        msg = f'{datum.label}: W does not act faithfully on its roots'
        raise WeylError(msg)
    lengths = tuple(
        sum(1 for k, image in enumerate(perm) if positive[k] and not positive[image])
        for perm in elements
    )
    if any(length != len(word) for length, word in zip(lengths, words)):
        msg = f'{datum.label}: inversion count disagrees with reduced word length'
        raise WeylError(msg)
    expected = WEYL_ORDERS[datum.label]
    if len(elements) != expected:
        msg = f'{datum.label}: enumerated {len(elements)} elements, expected {expected}'
        raise WeylError(msg)
    inverse_twist = datum.twist_inverse
    gamma_images = tuple(
        by_matrix[mat_mul(mat_mul(datum.twist, m), inverse_twist)] for m in matrices
    )
    if any(lengths[g] != lengths[a] for a, g in enumerate(gamma_images)):
        msg = f'{datum.label}: gamma does not preserve lengths'
        raise WeylError(msg)
    weyl = WeylGroupData(
        datum=datum,
        roots=tuple(roots),
        positive=positive,
        elements=elements,
        matrices=tuple(matrices),
        words=tuple(words),
        lengths=lengths,
        gamma_images=gamma_images,
        _by_matrix=by_matrix,
    )
    for a in range(weyl.order):
        for b in weyl._simple:
            if weyl.gamma(weyl.multiply(a, b)) != weyl.multiply(weyl.gamma(a), weyl.gamma(b)):
                msg = f'{datum.label}: gamma is not multiplicative'
                raise WeylError(msg)
    logger.debug(f'Built W({datum.label}): {weyl.order} elements, {weyl.num_positive_roots} roots > 0')
    return weyl


@functools.cache
def weyl_group(label: str, *, adjoint: bool = False) -> WeylGroupData:
    """Cached ``build_weyl(cartan_datum(label))``."""
    return build_weyl(cartan_datum(label, adjoint=adjoint))


def gamma_conjugacy_classes(weyl: WeylGroupData) -> tuple[GammaClass, ...]:
    """Classes of w ~ x^{-1} w gamma(x), ordered by representative index."""
    return weyl.gamma_classes


def _enumerate_gamma_classes(weyl: WeylGroupData) -> tuple[GammaClass, ...]:
    assigned: set[int] = set()
    classes = []
    for w in range(weyl.order):
        if w in assigned:
            continue
        orbit = {
            weyl.multiply(weyl.inverse(x), weyl.multiply(w, weyl.gamma(x)))
            for x in range(weyl.order)
        }
        assigned |= orbit
        classes.append(GammaClass(w, tuple(sorted(orbit)), weyl.word_label(w)))
    return tuple(classes)


def gamma_centralizer_order(weyl: WeylGroupData, w: int) -> int:
    """|{x in W : x^{-1} w gamma(x) = w}| by brute force."""
    return sum(
        1
        for x in range(weyl.order)
        if weyl.multiply(weyl.inverse(x), weyl.multiply(w, weyl.gamma(x))) == w
    )


def class_of(weyl: WeylGroupData, w: int) -> GammaClass:
    for cls in gamma_conjugacy_classes(weyl):
        if w in cls.members:
            return cls
    msg = f'element {w} not found in any class'
    raise WeylError(msg)


@dataclass(frozen=True)
class SigmaData:
    """Twisted character values as stored in a data pack."""

    words: tuple[str, ...]
    """Column keys: reduced words such as ``'121'`` (empty string for the identity)."""
    degrees: Mapping[str, int]
    """dim E per label."""
    rows: Mapping[str, tuple[int, ...]]
    """Tr(sigma_E o w, E) per label, aligned with ``words``."""


@dataclass(frozen=True)
class SigmaCharTable:
    """Values Tr(sigma_E o w, E) for E in Irr(W)^gamma and every w in W."""

    labels: tuple[str, ...]
    """Character labels in a fixed order."""
    degrees: tuple[int, ...]
    """dim E, aligned with ``labels``."""
    values: tuple[tuple[int, ...], ...]
    """values[i][w] for label i and element index w."""

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            msg = f'unknown character label {label!r}'
            raise WeylError(msg) from None

    def value(self, label: str, w: int) -> int:
        return self.values[self.index(label)][w]


def _two_cos(turns: Fraction) -> int:
    values = {
        Fraction(0): 2,
        Fraction(1, 6): 1,
        Fraction(1, 4): 0,
        Fraction(1, 3): -1,
        Fraction(1, 2): -2,
        Fraction(2, 3): -1,
        Fraction(3, 4): 0,
        Fraction(5, 6): 1,
    }
    return values[turns - (turns.numerator // turns.denominator)]


def _dihedral_position(word: tuple[int, ...], m: int) -> tuple[bool, int]:
    """(is_reflection, k) with w = r^k or w = r^k s1 for r = s1 s2."""
    length = len(word)
    if length % 2 == 0:
        k = length // 2 if not word or word[0] == 1 else -(length // 2)
        return False, k % m
    j = length // 2
    return True, (j if word[0] == 1 else -j - 1) % m


def _dihedral_table(weyl: WeylGroupData, characters: Mapping[str, object]) -> SigmaCharTable:
    m = weyl.order // 2
    labels, degrees, values = [], [], []
    for label, spec in characters.items():
        row = []
        for word in weyl.words:
            reflection, k = _dihedral_position(word, m)
            if isinstance(spec, tuple):
                a, b = spec
                rotation = (a * b) ** k
                row.append(rotation * a if reflection else rotation)
            elif reflection:
                row.append(0)
            else:
                h = 1 if spec is None else int(spec)
                row.append(_two_cos(Fraction(h * k, m)))
        labels.append(label)
        degrees.append(row[0])
        values.append(tuple(row))
    return SigmaCharTable(tuple(labels), tuple(degrees), tuple(values))


def _type_a_table(weyl: WeylGroupData) -> SigmaCharTable:
    n = weyl.datum.lattice_rank
    shapes = list(partitions(n))
    types = [weyl.cycle_type(w) for w in range(weyl.order)]
    values = tuple(tuple(mn_character(shape, rho) for rho in types) for shape in shapes)
    return SigmaCharTable(
        tuple(shape.label for shape in shapes), tuple(row[0] for row in values), values
    )


def _twisted_table(weyl: WeylGroupData, sigma: SigmaData) -> SigmaCharTable:
    columns: dict[int, int] = {}
    for position, word in enumerate(sigma.words):
        element = weyl.element_from_word([int(ch) for ch in word])
        if element in columns:
            msg = f'sigma table lists element {word!r} twice'
            raise WeylError(msg)
        columns[element] = position
    if len(columns) != weyl.order:
        msg = f'sigma table covers {len(columns)} of {weyl.order} elements'
        raise WeylError(msg)
    labels = tuple(sigma.rows)
    values = tuple(
        tuple(sigma.rows[label][columns[w]] for w in range(weyl.order)) for label in labels
    )
    return SigmaCharTable(labels, tuple(sigma.degrees[label] for label in labels), values)


def character_table(weyl: WeylGroupData, sigma: SigmaData | None = None) -> SigmaCharTable:
    """Sigma-twisted character table; twisted labels need ``sigma`` from their data pack."""
    if weyl.datum.is_twisted:
        if sigma is None:
            msg = f'twisted character data absent for {weyl.label}'
            raise TwistedDataAbsentError(msg)
        table = _twisted_table(weyl, sigma)
    elif weyl.label == 'B2':
        table = _dihedral_table(weyl, B2_CHARACTERS)
    elif weyl.label == 'G2':
        table = _dihedral_table(weyl, G2_CHARACTERS)
    elif weyl.datum.flavor == 'gl':
        table = _type_a_table(weyl)
    else:
        msg = f'no character table for the {weyl.datum.flavor} datum of {weyl.label}'
        raise WeylError(msg)
    validate_character_table(weyl, table)
    return table


def validate_character_table(weyl: WeylGroupData, table: SigmaCharTable) -> None:
    """Assert constancy on gamma-classes and both orthogonality relations."""
    classes = gamma_conjugacy_classes(weyl)
    if len(table.labels) != len(classes):
        msg = f'{len(table.labels)} characters but {len(classes)} gamma-classes in {weyl.label}'
        raise WeylError(msg)
    for label, row in zip(table.labels, table.values):
        for cls in classes:
            if len({row[w] for w in cls.members}) != 1:
                msg = f'{label} is not constant on the gamma-class of {cls.label}'
                raise WeylError(msg)
    for i, row_i in enumerate(table.values):
        for j, row_j in enumerate(table.values):
            inner = sum(a * b for a, b in zip(row_i, row_j))
            if inner != (weyl.order if i == j else 0):
                msg = f'row orthogonality fails for {table.labels[i]}, {table.labels[j]}'
                raise WeylError(msg)
    for a in classes:
        for b in classes:
            inner = sum(row[a.representative] * row[b.representative] for row in table.values)
            expected = weyl.order // a.size if a is b else 0
            if inner != expected:
                msg = f'column orthogonality fails for classes {a.label}, {b.label}'
                raise WeylError(msg)
