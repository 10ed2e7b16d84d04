"""Independent classical computations for type A.

Nothing here touches the Lusztig-Shoji pipeline: Green polynomials come from Kostka-Foulkes
polynomials via the charge statistic, fixed-flag counts and class inventories come from brute
force over F_q.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import sympy
from loguru import logger

from greencheck.combinatorics import Partition, cycle_type, mn_character, partitions
from greencheck.errors import OracleConventionError, OracleError
from greencheck.exact import IntPoly


if TYPE_CHECKING:
    from collections.abc import Callable, Iterator, Sequence


__all__ = [
    'GLInventory',
    'OracleTable',
    'Partition',
    'Tableau',
    'charge',
    'flag_fixed_points',
    'gl_enumerate',
    'green_polynomial',
    'green_polynomial_poly',
    'green_polynomial_table',
    'jordan_unipotent',
    'kostka_foulkes',
    'mn_character',
    'partitions',
    'semistandard_tableaux',
]

FLAG_MAX_N = 4
FLAG_QS: tuple[int, ...] = (2, 3)
"""Supported range of :func:`flag_fixed_points`."""

ENUMERATION_LIMIT = 10**6
"""Largest q^(n^2) :func:`gl_enumerate` will scan."""


# ---------------------------------------------------------------------------
# Tableaux and charge
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tableau:
    """A semistandard tableau in English notation."""

    rows: tuple[tuple[int, ...], ...]
    """Entries row by row, top row first."""

    def __post_init__(self) -> None:
        rows = self.rows
        if any(len(a) < len(b) for a, b in itertools.pairwise(rows)):
            msg = f'row lengths of {rows} are not weakly decreasing'
            raise OracleError(msg)
        for row in rows:
            if any(a > b for a, b in itertools.pairwise(row)):
                msg = f'row {row} does not weakly increase'
                raise OracleError(msg)
        for upper, lower in itertools.pairwise(rows):
            if any(a >= b for a, b in zip(upper, lower)):
                msg = f'columns of {rows} do not strictly increase'
                raise OracleError(msg)

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(row) for row in self.rows))

    @property
    def weight(self) -> Partition:
        counts = {}
        for value in itertools.chain.from_iterable(self.rows):
            counts[value] = counts.get(value, 0) + 1
        return Partition(tuple(counts[v] for v in sorted(counts)))

    def reading_word(self) -> tuple[int, ...]:
        """Rows read left to right, from the bottom row up."""
        return tuple(itertools.chain.from_iterable(reversed(self.rows)))

    @property
    def charge(self) -> int:
        return charge(self.reading_word())


def charge(word: Sequence[int]) -> int:
    """Charge of a word whose content is a partition (letters 1..k).

    Standard subwords are extracted by starting at the rightmost 1 and scanning leftwards
    cyclically for 2, 3, ...; the index goes up by one each time the scan wraps around.
    """
    remaining = list(enumerate(word))
    total = 0
    while remaining:
        letters = {letter for _, letter in remaining}
        top = 0
        while top + 1 in letters:
            top += 1
        if top == 0:
            msg = f'word {tuple(word)} does not have partition content'
            raise OracleError(msg)
        positions = [p for p, _ in remaining]
        values = dict(remaining)
        current = max(p for p in positions if values[p] == 1)
        chosen = [current]
        index = 0
        for letter in range(2, top + 1):
            left = [p for p in positions if p < current and values[p] == letter]
            if left:
                current = max(left)
            else:
                current = max(p for p in positions if values[p] == letter)
                index += 1
            total += index
            chosen.append(current)
        picked = set(chosen)
        remaining = [(p, v) for p, v in remaining if p not in picked]
    return total


def semistandard_tableaux(shape: Partition, weight: Partition) -> Iterator[Tableau]:
    """Every SSYT of ``shape`` with content ``weight``, adding each letter as a horizontal strip."""
    if shape.size != weight.size:
        return

    def extend(filled: tuple[int, ...], letter: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if letter > weight.length:
            if filled == shape.parts:
                yield ()
            return
        count = weight.parts[letter - 1]
        rows = len(shape.parts)
        current = filled + (0,) * (rows - len(filled))

        def strips(row: int, left: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
            if row == rows:
                if left == 0:
                    yield acc
                return
            cap = shape.parts[row] - current[row]
            if row > 0:
                # horizontal strip: stay under the previous row's old length
                cap = min(cap, current[row - 1] - current[row])
            for add in range(min(cap, left), -1, -1):
                yield from strips(row + 1, left - add, (*acc, add))

        for adds in strips(0, count, ()):
            grown = tuple(c + a for c, a in zip(current, adds))
            for rest in extend(tuple(x for x in grown if x), letter + 1):
                yield (adds, *rest)

    for layers in extend((), 1):
        rows: list[list[int]] = [[] for _ in shape.parts]
        for letter, adds in enumerate(layers, start=1):
            for row, add in enumerate(adds):
                rows[row].extend([letter] * add)
        yield Tableau(tuple(tuple(row) for row in rows))


@functools.cache
def kostka_foulkes(shape: Partition, weight: Partition) -> IntPoly:
    """K_{shape,weight}(t) = sum over SSYT of t^charge."""
    if shape.size != weight.size:
        msg = f'size mismatch: {shape} vs {weight}'
        raise OracleError(msg)
    coefficients: dict[int, int] = {}
    for tableau in semistandard_tableaux(shape, weight):
        c = tableau.charge
        coefficients[c] = coefficients.get(c, 0) + 1
    if not coefficients:
        return IntPoly()
    return IntPoly(tuple(coefficients.get(i, 0) for i in range(max(coefficients) + 1)))


# ---------------------------------------------------------------------------
# Green polynomials
# ---------------------------------------------------------------------------


def _cocharge_term(shape: Partition, mu: Partition) -> IntPoly:
    return kostka_foulkes(shape, mu).reversed_to(mu.n_value)


def _charge_term(shape: Partition, mu: Partition) -> IntPoly:
    return kostka_foulkes(shape, mu)


CONVENTIONS: dict[str, Callable[[Partition, Partition], IntPoly]] = {
    'cocharge': _cocharge_term,
    'charge': _charge_term,
}
"""Candidate normalizations sum_lambda chi^lambda_rho * term(lambda, mu), tried in order."""


def _green_with(convention: str, mu: Partition, rho: Partition) -> IntPoly:
    term = CONVENTIONS[convention]
    total = IntPoly()
    for shape in partitions(mu.size):
        chi = mn_character(shape, rho)
        if chi:
            total += term(shape, mu) * chi
    return total


def _anchors_hold(convention: str) -> bool:
    for n in (2, 3):
        for q in FLAG_QS:
            for rho in partitions(n):
                if _green_with(convention, Partition.of(n), rho)(q) != 1:
                    return False
            identity = Partition((1,) * n)
            for mu in partitions(n):
                flags = flag_fixed_points(jordan_unipotent(mu, q), n, q)
                if _green_with(convention, mu, identity)(q) != flags:
                    return False
    # weighted orthogonality of the split-torus column in GL_3(2)
    inventory = gl_enumerate(3, 2)
    identity = Partition.of(1, 1, 1)
    total = sum(
        size * _green_with(convention, Partition.parse(label), identity)(2) ** 2
        for label, size in inventory.unipotent_class_sizes.items()
    )
    torus = inventory.torus_orders[identity.label]
    return total == inventory.group_order // torus * 6


@functools.cache
def calibrated_convention() -> str:
    """First convention satisfying the regular-class, flag-count and orthogonality anchors."""
    for name in CONVENTIONS:
        if _anchors_hold(name):
            logger.debug(f'Green polynomial oracle calibrated to the {name} convention')
            return name
    msg = 'oracle convention mismatch: no normalization satisfies the calibration anchors'
    raise OracleConventionError(msg)


@functools.cache
def green_polynomial_poly(mu: Partition, rho: Partition) -> IntPoly:
    """Q^mu_rho as a polynomial in q (class mu, torus of cycle type rho)."""
    if mu.size != rho.size:
        msg = f'size mismatch: {mu} vs {rho}'
        raise OracleError(msg)
    return _green_with(calibrated_convention(), mu, rho)


def green_polynomial(mu: Partition, rho: Partition, q: int) -> int:
    """Value of the classical Green polynomial Q^mu_rho at q."""
    return int(green_polynomial_poly(mu, rho)(q))


@dataclass(frozen=True)
class OracleTable:
    """Green polynomial values of GL_n at q, rows by cycle type, columns by Jordan type."""

    n: int
    q: int
    row_labels: tuple[str, ...]
    """Cycle types rho, in reverse lexicographic order."""
    column_labels: tuple[str, ...]
    """Jordan types mu, ordered by class dimension then label."""
    values: tuple[tuple[int, ...], ...]

    def value(self, rho: str, mu: str) -> int:
        return self.values[self.row_labels.index(rho)][self.column_labels.index(mu)]


def _class_dim(mu: Partition) -> int:
    return mu.size**2 - sum(part * part for part in mu.conjugate.parts)


def green_polynomial_table(n: int, q: int) -> OracleTable:
    rows = list(partitions(n))
    columns = sorted(partitions(n), key=lambda mu: (_class_dim(mu), mu.label))
    values = tuple(tuple(green_polynomial(mu, rho, q) for mu in columns) for rho in rows)
    return OracleTable(
        n, q, tuple(r.label for r in rows), tuple(mu.label for mu in columns), values
    )


# ---------------------------------------------------------------------------
# Linear algebra over F_p
# ---------------------------------------------------------------------------


def _rref(vectors: Sequence[Sequence[int]], p: int) -> tuple[tuple[int, ...], ...]:
    rows = [[x % p for x in v] for v in vectors]
    width = len(rows[0]) if rows else 0
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inverse = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inverse % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [(a - factor * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return tuple(tuple(row) for row in rows[:rank])


def _rank_mod(matrix: Sequence[Sequence[int]], p: int) -> int:
    return len(_rref(matrix, p))


def _apply(u: Sequence[Sequence[int]], v: Sequence[int], p: int) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in u)


def jordan_unipotent(mu: Partition, q: int) -> list[list[int]]:
    """Block-diagonal unipotent matrix with Jordan blocks of sizes ``mu``."""
    n = mu.size
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    start = 0
    for part in mu.parts:
        for i in range(start, start + part - 1):
            u[i][i + 1] = 1 % q
        start += part
    return u


def _is_unipotent(u: Sequence[Sequence[int]], p: int) -> bool:
    n = len(u)
    nilpotent = np.array(u, dtype=np.int64) - np.eye(n, dtype=np.int64)
    return not (np.linalg.matrix_power(nilpotent, n) % p).any()


def flag_fixed_points(u: Sequence[Sequence[int]], n: int, q: int) -> int:
    """Number of complete flags of F_q^n stable under the unipotent matrix ``u``."""
    if n > FLAG_MAX_N or q not in FLAG_QS:
        msg = f'flag enumeration supports n <= 4 and q in {{2, 3}}, got n = {n}, q = {q}'
        raise OracleError(msg)
    if len(u) != n or any(len(row) != n for row in u) or not _is_unipotent(u, q):
        msg = f'expected a unipotent {n} x {n} matrix over F_{q}'
        raise OracleError(msg)
    vectors = list(itertools.product(range(q), repeat=n))

    def stable(basis: tuple[tuple[int, ...], ...]) -> bool:
        rank = len(basis)
        return all(_rank_mod([*basis, _apply(u, b, q)], q) == rank for b in basis)

    def count(basis: tuple[tuple[int, ...], ...]) -> int:
        if len(basis) == n:
            return 1
        children = set()
        for v in vectors:
            grown = _rref([*basis, v], q)
            if len(grown) == len(basis) + 1:
                children.add(grown)
        return sum(count(child) for child in children if stable(child))

    return count(())


# ---------------------------------------------------------------------------
# Brute-force enumeration of GL_n(F_q)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GLInventory:
    """Class data of GL_n(F_q) found by scanning every n x n matrix."""

    n: int
    q: int
    group_order: int
    """Number of invertible matrices."""
    unipotent_class_sizes: dict[str, int]
    """Jordan type label -> number of unipotent elements of that type."""
    centralizer_orders: dict[str, int]
    """Jordan type label -> |Z(u)| = |G| / class size."""
    torus_orders: dict[str, int]
    """Cycle type label -> |T_rho(F_q)|, from units of F_q[C] for companion matrices C."""

    @property
    def unipotent_count(self) -> int:
        return sum(self.unipotent_class_sizes.values())


def _all_matrices(n: int, q: int) -> np.ndarray:
    count = q ** (n * n)
    digits = np.arange(count, dtype=np.int64)[:, None] // (q ** np.arange(n * n, dtype=np.int64))
    return (digits % q).reshape(count, n, n)


def _det_mod(stack: np.ndarray, p: int) -> np.ndarray:
    """Leibniz determinant of a stack of small integer matrices, reduced mod p."""
    n = stack.shape[-1]
    total = np.zeros(stack.shape[0], dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        sign = -1 if cycle_type(perm).length % 2 != n % 2 else 1
        term = np.ones(stack.shape[0], dtype=np.int64)
        for row, col in enumerate(perm):
            term = term * stack[:, row, col] % p
        total = (total + sign * term) % p
    return total


def _jordan_type(u: np.ndarray, p: int) -> Partition:
    n = u.shape[0]
    nilpotent = (u - np.eye(n, dtype=np.int64)) % p
    ranks = [n]
    power = np.eye(n, dtype=np.int64)
    for _ in range(n):
        power = power @ nilpotent % p
        ranks.append(_rank_mod(power.tolist(), p))
    # blocks of size >= k: ranks[k-1] - ranks[k]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, n + 1)]
    return Partition(tuple(at_least)).conjugate


def _irreducible_companion(k: int, q: int) -> np.ndarray:
    x = sympy.Symbol('x')
    for tail in itertools.product(range(q), repeat=k):
        if tail[0] == 0:
            continue
        poly = sympy.Poly([1, *reversed(tail)], x, modulus=q)
        if poly.is_irreducible:
            companion = np.zeros((k, k), dtype=np.int64)
            for i in range(1, k):
                companion[i, i - 1] = 1
            companion[:, k - 1] = [(-c) % q for c in tail]
            return companion
    msg = f'no irreducible polynomial of degree {k} over F_{q}'
    raise OracleError(msg)


def _units_of_field(k: int, q: int) -> int:
    """Invertible elements of F_q[C] for a degree-k irreducible companion matrix C."""
    companion = _irreducible_companion(k, q)
    powers = [np.linalg.matrix_power(companion, i) % q for i in range(k)]
    units = 0
    for coefficients in itertools.product(range(q), repeat=k):
        element = sum(c * m for c, m in zip(coefficients, powers)) % q
        if _rank_mod(np.atleast_2d(element).tolist(), q) == k:
            units += 1
    return units


def gl_enumerate(n: int, q: int) -> GLInventory:
    """Scan all of M_n(F_q) for a prime q with q^(n^2) <= 10^6."""
    if not sympy.isprime(q):
        msg = f'enumeration needs a prime q, got {q}'
        raise OracleError(msg)
    if q ** (n * n) > ENUMERATION_LIMIT:
        msg = f'enumeration bound exceeded: {q}^{n * n} > {ENUMERATION_LIMIT}'
        raise OracleError(msg)
    stack = _all_matrices(n, q)
    invertible = stack[_det_mod(stack, q) != 0]
    group_order = len(invertible)
    nilpotent = (invertible - np.eye(n, dtype=np.int64)) % q
    power = nilpotent
    for _ in range(n - 1):
        power = np.matmul(power, nilpotent) % q
    unipotents = invertible[~power.reshape(len(power), -1).any(axis=1)]
    sizes: dict[str, int] = {}
    for u in unipotents:
        label = _jordan_type(u, q).label
        sizes[label] = sizes.get(label, 0) + 1
    ordered = {mu.label: sizes.get(mu.label, 0) for mu in partitions(n)}
    tori = {
        rho.label: math.prod(_units_of_field(k, q) for k in rho.parts) for rho in partitions(n)
    }
    logger.debug(f'Enumerated GL_{n}({q}): {group_order} elements')
    return GLInventory(
        n=n,
        q=q,
        group_order=group_order,
        unipotent_class_sizes=ordered,
        centralizer_orders={label: group_order // size for label, size in ordered.items()},
        torus_orders=tori,
    )
