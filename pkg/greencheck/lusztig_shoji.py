"""The orthogonality matrix and its block-triangular decomposition.

For a fixed q the matrix Omega has a unique factorization ``P^tr Lambda P = Omega`` with P
block upper unitriangular and Lambda block diagonal, where the blocks are the unipotent classes
C(E) ordered by decreasing d_E. Everything here works per numeric q over exact rationals;
polynomial views come from interpolation in :func:`reconstruct_pi`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import TYPE_CHECKING

from loguru import logger
from pydantic import BaseModel

from greencheck.errors import (
    AdmissibilityError,
    DegenerateNodesError,
    InsufficientSamplesError,
    SingularMatrixError,
    SolverError,
)
from greencheck.exact import IntPoly, RatMatrix, poly_interpolate
from greencheck.orders import order_data
from greencheck.springer import SAMPLE_QS, resolve_pack
from greencheck.weyl import character_table, gamma_conjugacy_classes, weyl_group


if TYPE_CHECKING:
    from collections.abc import Sequence

    from greencheck.orders import OrderData
    from greencheck.springer import DataPack
    from greencheck.weyl import SigmaCharTable, WeylGroupData


TIE_BREAK = 'decreasing d, then class label, then character label'
"""Deterministic ordering of Irr(W)^gamma used by every matrix in this module."""


def block_order(pack: DataPack) -> tuple[tuple[str, ...], tuple[tuple[int, ...], ...]]:
    """Character labels in block order and the index ranges of the blocks."""
    entries = sorted(pack.springer, key=lambda e: (-e.d, e.class_label, e.char_label))
    labels = tuple(entry.char_label for entry in entries)
    blocks = []
    position = 0
    for _, group in groupby(entries, key=lambda e: e.class_label):
        size = len(list(group))
        blocks.append(tuple(range(position, position + size)))
        position += size
    return labels, tuple(blocks)


@dataclass(frozen=True)
class OmegaMatrix:
    """omega-tilde and omega at one q, rows and columns in block order."""

    labels: tuple[str, ...]
    """Characters E in block order."""
    class_labels: tuple[str, ...]
    """C(E) aligned with ``labels``."""
    d: tuple[int, ...]
    """d_E aligned with ``labels``."""
    q: int
    """Evaluation point."""
    tilde: RatMatrix
    """omega-tilde_{E',E} = 1/|W| sum_w [G^F:T_w^F] Tr(sigma_E' o w) Tr(sigma_E o w)."""
    scaled: RatMatrix
    """omega_{E',E} = q^{-d_E-d_E'} omega-tilde_{E',E}."""
    blocks: tuple[tuple[int, ...], ...]
    """Index ranges of the blocks, one per unipotent class."""
    tie_break: str = TIE_BREAK
    """How labels with equal d were ordered."""

    @property
    def block_d(self) -> tuple[int, ...]:
        return tuple(self.d[block[0]] for block in self.blocks)

    def reordered(self, labels: Sequence[str]) -> OmegaMatrix:
        """The same matrix with labels permuted inside their blocks."""
        permutation = [self.labels.index(label) for label in labels]
        if sorted(permutation) != list(range(len(self.labels))):
            msg = 'reordering must be a permutation of the labels'
            raise SolverError(msg, code='block-mismatch')
        for block in self.blocks:
            if sorted(permutation[i] for i in block) != list(block):
                msg = 'reordering moves a label out of its block'
                raise SolverError(msg, code='block-mismatch')
        return OmegaMatrix(
            labels=tuple(labels),
            class_labels=tuple(self.class_labels[i] for i in permutation),
            d=tuple(self.d[i] for i in permutation),
            q=self.q,
            tilde=self.tilde.block(permutation, permutation),
            scaled=self.scaled.block(permutation, permutation),
            blocks=self.blocks,
            tie_break='explicit',
        )


def build_omega(
    weyl: WeylGroupData,
    table: SigmaCharTable,
    orders: OrderData,
    pack: DataPack,
    q: int,
) -> OmegaMatrix:
    """Omega-tilde and Omega at q from the twisted character table and torus indices."""
    labels, blocks = block_order(pack)
    if set(labels) != set(table.labels):
        msg = (
            f'pack characters {sorted(labels)} differ from table characters '
            f'{sorted(table.labels)}'
        )
        raise SolverError(msg, code='block-mismatch')
    classes = gamma_conjugacy_classes(weyl)
    weights = [cls.size * orders.index(cls.representative, q) for cls in classes]
    rows = [[table.value(label, cls.representative) for cls in classes] for label in labels]
    d = tuple(pack.entry(label).d for label in labels)
    n = len(labels)
    tilde: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    scaled: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            total = sum(w * a * b for w, a, b in zip(weights, rows[i], rows[j]))
            value = Fraction(total, weyl.order)
            scale = q ** (d[i] + d[j])
            if value.denominator != 1 or value.numerator % scale:
                msg = (
                    f'omega integrality violation at ({labels[i]}, {labels[j]}), q = {q}: '
                    f'{value} is not an integer multiple of {scale}'
                )
                raise SolverError(msg, code='omega-integrality')
            tilde[i][j] = tilde[j][i] = value
            scaled[i][j] = scaled[j][i] = value / scale
    omega = OmegaMatrix(
        labels=labels,
        class_labels=tuple(pack.entry(label).class_label for label in labels),
        d=d,
        q=q,
        tilde=RatMatrix.from_rows(tilde),
        scaled=RatMatrix.from_rows(scaled),
        blocks=blocks,
    )
    expected = math.prod(orders.index(cls.representative, q) for cls in classes)
    if omega.tilde.det() != expected:
        msg = f'det omega-tilde differs from the product of torus indices at q = {q}'
        raise SolverError(msg, code='omega-integrality')
    logger.debug(f'Built omega for {weyl.label} at q = {q} ({len(blocks)} blocks)')
    return omega


@dataclass(frozen=True)
class PSolution:
    """The factorization P^tr Lambda P = Omega at one q."""

    labels: tuple[str, ...]
    """Characters in block order."""
    blocks: tuple[tuple[int, ...], ...]
    """Index ranges of the blocks."""
    block_d: tuple[int, ...]
    """d per block, weakly decreasing."""
    P: RatMatrix
    """p_{E',E}; block upper unitriangular."""
    Lam: RatMatrix
    """lambda_{E',E}; block diagonal."""
    omega: OmegaMatrix
    """The input."""

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(block) for block in self.blocks)

    @property
    def q(self) -> int:
        return self.omega.q

    def p(self, row: str, col: str) -> int:
        return int(self.P[self.labels.index(row), self.labels.index(col)])

    def lam(self, row: str, col: str) -> int:
        return int(self.Lam[self.labels.index(row), self.labels.index(col)])


def _put(
    target: list[list[Fraction]], rows: Sequence[int], cols: Sequence[int], value: RatMatrix
) -> None:
    for a, i in enumerate(rows):
        for b, j in enumerate(cols):
            target[i][j] = value[a, b]


def solve_p_lambda(omega: OmegaMatrix) -> PSolution:
    """Block-by-block solve of P^tr Lambda P = Omega under the shape constraints."""
    blocks = omega.blocks
    block_d = omega.block_d
    n = len(omega.labels)
    p_rows: list[list[Fraction]] = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    lam_rows: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    lam_blocks: list[RatMatrix] = []
    p_blocks: dict[tuple[int, int], RatMatrix] = {}

    def residual(i: int, j: int) -> RatMatrix:
        result = omega.scaled.block(blocks[i], blocks[j])
        for k in range(i):
            result -= p_blocks[k, i].T @ lam_blocks[k] @ p_blocks[k, j]
        return result

    for i, block in enumerate(blocks):
        lam_i = residual(i, i)
        if not lam_i.is_positive_definite():
            msg = f'degenerate block {i} ({omega.class_labels[block[0]]}) at q = {omega.q}'
            raise SolverError(msg, code='degenerate-block')
        lam_blocks.append(lam_i)
        _put(lam_rows, block, block, lam_i)
        for j in range(i + 1, len(blocks)):
            rest = residual(i, j)
            if block_d[i] == block_d[j]:
                if not rest.is_zero():
                    msg = (
                        f'shape contradiction between blocks {omega.class_labels[block[0]]} and '
                        f'{omega.class_labels[blocks[j][0]]} at q = {omega.q}'
                    )
                    raise SolverError(msg, code='shape-contradiction')
                p_ij = RatMatrix.zeros(len(block), len(blocks[j]))
            else:
                try:
                    p_ij = lam_i.solve(rest)
                except SingularMatrixError as exc:
                    msg = f'degenerate block {i} at q = {omega.q}'
                    raise SolverError(msg, code='degenerate-block') from exc
            p_blocks[i, j] = p_ij
            _put(p_rows, block, blocks[j], p_ij)

    p_matrix = RatMatrix.from_rows(p_rows)
    lam_matrix = RatMatrix.from_rows(lam_rows)
    if not (p_matrix.is_integral() and lam_matrix.is_integral()):
        msg = f'integrality violation in P or Lambda at q = {omega.q}'
        raise SolverError(msg, code='integrality')
    logger.debug(f'Solved {len(blocks)} blocks at q = {omega.q}')
    return PSolution(omega.labels, blocks, block_d, p_matrix, lam_matrix, omega)


# ---------------------------------------------------------------------------
# Polynomial reconstruction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PiTable:
    """pi_{E',E} in Z[q] with p_{E',E} = pi_{E',E}(q) at every admissible q of one residue."""

    type_label: str
    """Weyl type."""
    labels: tuple[str, ...]
    """Characters in block order."""
    polys: tuple[tuple[IntPoly, ...], ...]
    """polys[i][j] = pi_{labels[i], labels[j]}."""
    sample_qs: tuple[int, ...]
    """q values the interpolation used."""
    held_out_qs: tuple[int, ...]
    """q values the interpolants were verified against."""

    def pi(self, row: str, col: str) -> IntPoly:
        return self.polys[self.labels.index(row)][self.labels.index(col)]


def solve_at(type_label: str, q: int, pack: DataPack | None = None) -> PSolution:
    """Omega and its decomposition for one type at one admissible q."""
    pack = pack or resolve_pack(type_label)
    pack.require_admissible(q)
    weyl = weyl_group(type_label)
    table = character_table(weyl, pack.sigma)
    return solve_p_lambda(build_omega(weyl, table, order_data(weyl), pack, q))


def _residue_key(pack: DataPack, q: int) -> tuple[int, ...]:
    return tuple(entry.delta(q) for entry in pack.springer)


def require_common_residue(pack: DataPack, qs: Sequence[int]) -> None:
    """Interpolation nodes must all lie in one sign residue."""
    if len({_residue_key(pack, q) for q in qs if pack.admissible(q)}) > 1:
        msg = f'sample q values {list(qs)} fall in different sign residues'
        raise AdmissibilityError(msg)


def residue_samples(pack: DataPack, count: int) -> list[int]:
    """The first ``count`` admissible sample q sharing the sign residue of the smallest one."""
    admissible = [q for q in SAMPLE_QS if pack.admissible(q)]
    if not admissible:
        return []
    key = _residue_key(pack, admissible[0])
    return [q for q in admissible if _residue_key(pack, q) == key][:count]


def _interpolate_all(
    labels: tuple[str, ...], solutions: dict[int, PSolution], qs: Sequence[int]
) -> tuple[tuple[IntPoly, ...], ...]:
    n = len(labels)
    polys = []
    for i in range(n):
        row = []
        for j in range(n):
            interpolant = poly_interpolate([(q, solutions[q].P[i, j]) for q in qs])
            if not interpolant.integral:
                msg = f'pi({labels[i]}, {labels[j]}) has non-integral coefficients: {interpolant}'
                raise InsufficientSamplesError(msg)
            row.append(interpolant.to_int_poly())
        polys.append(tuple(row))
    return tuple(polys)


def reconstruct_pi(
    type_label: str,
    sample_qs: Sequence[int] | None = None,
    *,
    held_out: int = 2,
    pack: DataPack | None = None,
) -> PiTable:
    """Interpolate every p_{E',E} across q and check the last ``held_out`` samples.

    Without explicit samples, (max d) + 1 interpolation points of one sign residue are taken
    from :data:`greencheck.springer.SAMPLE_QS` and extended while the held-out check fails.
    """
    pack = pack or resolve_pack(type_label)
    escalate = sample_qs is None
    if sample_qs is None:
        count = max(entry.d for entry in pack.springer) + 1 + held_out
        qs = residue_samples(pack, count)
    else:
        qs = list(sample_qs)
    require_common_residue(pack, qs)
    if held_out < 1 or len(qs) < held_out + 2:
        msg = f'need at least {held_out + 2} sample q values, got {len(qs)}'
        raise InsufficientSamplesError(msg)

    solutions: dict[int, PSolution] = {}
    supply = residue_samples(pack, len(SAMPLE_QS)) if escalate else qs
    while True:
        for q in qs:
            if q not in solutions:
                solutions[q] = solve_at(type_label, q, pack)
        fit, check = qs[:-held_out], qs[-held_out:]
        labels = solutions[qs[0]].labels
        try:
            polys = _interpolate_all(labels, solutions, fit)
            failed = [
                q
                for q in check
                for i, row in enumerate(polys)
                for j, poly in enumerate(row)
                if poly(q) != solutions[q].P[i, j]
            ]
        except (InsufficientSamplesError, DegenerateNodesError) as exc:
            failed = [str(exc)]
        if not failed:
            break
        if not escalate or len(qs) >= len(supply):
            msg = f'interpolation of pi for {type_label} fails at held-out q values: {failed}'
            raise InsufficientSamplesError(msg)
        qs = supply[: len(qs) + 1]
        logger.debug(f'Escalating pi interpolation for {type_label} to {len(qs)} samples')
    logger.debug(f'Reconstructed pi for {type_label} from q = {fit}')
    return PiTable(type_label, labels, polys, tuple(fit), tuple(check))


# ---------------------------------------------------------------------------
# Congruences between two decompositions
# ---------------------------------------------------------------------------


class EntryViolation(BaseModel):
    """One entry where a congruence mod r fails."""

    matrix: str
    """``omega``, ``P`` or ``Lambda``."""
    row: str
    """Row character label."""
    col: str
    """Column character label."""
    at_q: str
    """Value at q (decimal)."""
    at_qr: str
    """Value at q^r (decimal)."""


class ModRReport(BaseModel):
    """Entrywise comparison of two decompositions modulo r."""

    r: int
    """The modulus."""
    q: int
    """Base evaluation point."""
    qr: int
    """Second evaluation point, usually q^r."""
    det_coprime: bool
    """r does not divide det Omega."""
    omega_congruent: bool
    """omega^(r) = omega entrywise mod r."""
    p_congruent: bool | None = None
    """P^(r) = P mod r; None when the hypotheses fail."""
    lambda_congruent: bool | None = None
    """Lambda^(r) = Lambda mod r; None when the hypotheses fail."""
    violations: list[EntryViolation] = []
    """Entries where an asserted congruence fails."""

    @property
    def hypotheses_met(self) -> bool:
        return self.det_coprime and self.omega_congruent

    @property
    def passed(self) -> bool:
        return self.hypotheses_met and bool(self.p_congruent) and bool(self.lambda_congruent)


def _differences(
    name: str, labels: Sequence[str], a: RatMatrix, b: RatMatrix, r: int
) -> list[EntryViolation]:
    found = []
    for i, row in enumerate(labels):
        for j, col in enumerate(labels):
            if (a[i, j] - b[i, j]) % r:
                found.append(
                    EntryViolation(
                        matrix=name, row=row, col=col, at_q=str(a[i, j]), at_qr=str(b[i, j])
                    )
                )
    return found


def compare_mod_r(sol_q: PSolution, sol_qr: PSolution, r: int) -> ModRReport:
    """Check the congruences p^(r) = p and lambda^(r) = lambda mod r, gated on their hypotheses."""
    shape_q = (sol_q.labels, sol_q.blocks, sol_q.block_d)
    if shape_q != (sol_qr.labels, sol_qr.blocks, sol_qr.block_d):
        msg = 'decompositions have different block structures'
        raise SolverError(msg, code='block-mismatch')
    det = sol_q.omega.scaled.det()
    omega_diffs = _differences('omega', sol_q.labels, sol_q.omega.scaled, sol_qr.omega.scaled, r)
    report = ModRReport(
        r=r,
        q=sol_q.q,
        qr=sol_qr.q,
        det_coprime=det % r != 0,
        omega_congruent=not omega_diffs,
    )
    if not report.hypotheses_met:
        report.violations = omega_diffs
        return report
    p_diffs = _differences('P', sol_q.labels, sol_q.P, sol_qr.P, r)
    lam_diffs = _differences('Lambda', sol_q.labels, sol_q.Lam, sol_qr.Lam, r)
    report.p_congruent = not p_diffs
    report.lambda_congruent = not lam_diffs
    report.violations = p_diffs + lam_diffs
    return report
