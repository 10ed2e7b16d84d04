"""Almost characters and Green functions on unipotent elements."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from loguru import logger
from pydantic import BaseModel

from greencheck.errors import GreenCheckError, InsufficientSamplesError
from greencheck.exact import IntPoly, poly_interpolate
from greencheck.lusztig_shoji import (
    TIE_BREAK,
    build_omega,
    require_common_residue,
    residue_samples,
    solve_p_lambda,
)
from greencheck.orders import order_data
from greencheck.springer import resolve_pack, y_value
from greencheck.weyl import character_table, gamma_conjugacy_classes, weyl_group


if TYPE_CHECKING:
    from collections.abc import Sequence

    from greencheck.lusztig_shoji import OmegaMatrix, PSolution
    from greencheck.orders import OrderData
    from greencheck.springer import DataPack
    from greencheck.weyl import SigmaCharTable, WeylGroupData


@dataclass(frozen=True)
class AlmostCharacterTable:
    """R_E(u) for E in block order and u over the (class, a) columns."""

    labels: tuple[str, ...]
    """Characters E."""
    columns: tuple[tuple[str, str], ...]
    """(unipotent class, A-class) pairs."""
    values: tuple[tuple[int, ...], ...]
    """values[i][c] = R_{labels[i]}(u_c)."""
    q: int
    """Evaluation point."""

    def value(self, char_label: str, column: tuple[str, str]) -> int:
        return self.values[self.labels.index(char_label)][self.columns.index(column)]


def _y_matrix(pack: DataPack, labels: Sequence[str], q: int) -> list[list[int]]:
    return [[y_value(pack, label, c, a, q) for c, a in pack.columns()] for label in labels]


def almost_character_unipotent(sol: PSolution, pack: DataPack, q: int) -> AlmostCharacterTable:
    """R_E(u) = sum_{E'} q^{d_E} p_{E',E} Y_{E'}(u)."""
    labels = sol.labels
    ys = _y_matrix(pack, labels, q)
    columns = pack.columns()
    values = []
    for j, label in enumerate(labels):
        scale = q ** pack.entry(label).d
        row = []
        for c in range(len(columns)):
            total = sum(int(sol.P[i, j]) * ys[i][c] for i in range(len(labels)))
            row.append(scale * total)
        values.append(tuple(row))
    return AlmostCharacterTable(labels, columns, tuple(values), q)


@dataclass(frozen=True)
class GreenTable:
    """Q_w(u) for gamma-class representatives w and unipotent (class, a) columns."""

    type_label: str
    """Weyl type."""
    q: int
    """Evaluation point."""
    row_labels: tuple[str, ...]
    """Reduced words of the representatives, e.g. ``s1s2``."""
    row_elements: tuple[int, ...]
    """Element indices of the representatives."""
    columns: tuple[tuple[str, str], ...]
    """(unipotent class, A-class) pairs."""
    column_labels: tuple[str, ...]
    """Display labels aligned with ``columns``."""
    values: tuple[tuple[int, ...], ...]
    """values[w][c] = Q_w(u_c)."""
    provenance: str
    """Where the Springer data came from."""
    residues: dict[str, int] = field(default_factory=dict)
    """delta_E(q) per character when the pack has residue-dependent signs."""
    tie_break: str = TIE_BREAK
    """Character ordering used by the underlying decomposition."""

    def value(self, row_label: str, column_label: str) -> int:
        return self.values[self.row_labels.index(row_label)][
            self.column_labels.index(column_label)
        ]

    def column(self, column: tuple[str, str]) -> tuple[int, ...]:
        c = self.columns.index(column)
        return tuple(row[c] for row in self.values)


def green_table(
    weyl: WeylGroupData,
    table: SigmaCharTable,
    sol: PSolution,
    pack: DataPack,
    q: int,
) -> GreenTable:
    """Q_w(u) = sum_E Tr(sigma_E o w, E) R_E(u), checked constant on gamma-classes."""
    almost = almost_character_unipotent(sol, pack, q)
    width = len(almost.columns)

    def q_row(w: int) -> tuple[int, ...]:
        traces = [table.value(label, w) for label in almost.labels]
        return tuple(
            sum(t * row[c] for t, row in zip(traces, almost.values)) for c in range(width)
        )

    reps = []
    rows = []
    for cls in gamma_conjugacy_classes(weyl):
        row = q_row(cls.representative)
        for member in cls.members:
            if q_row(member) != row:
                msg = f'Q_w is not constant on the gamma-class of {cls.label}'
                raise GreenCheckError(msg)
        reps.append(cls.representative)
        rows.append(row)
    residues = (
        {entry.char_label: entry.delta(q) for entry in pack.springer}
        if pack.has_residue_signs
        else {}
    )
    logger.debug(f'Assembled Green table for {weyl.label} at q = {q}')
    return GreenTable(
        type_label=weyl.label,
        q=q,
        row_labels=tuple(weyl.word_label(w) for w in reps),
        row_elements=tuple(reps),
        columns=almost.columns,
        column_labels=pack.column_labels(),
        values=tuple(rows),
        provenance=pack.provenance,
        residues=residues,
    )


# ---------------------------------------------------------------------------
# Orthogonality certificates
# ---------------------------------------------------------------------------


class PairMismatch(BaseModel):
    """One pair whose weighted inner product differs from the expected value."""

    left: str
    """Row label (gamma-class representative or character)."""
    right: str
    """Column label."""
    expected: int
    """Right-hand side of the relation."""
    actual: int
    """Computed weighted sum."""


class OrthogonalityReport(BaseModel):
    """Outcome of one family of weighted orthogonality relations."""

    relation: str
    """``green`` or ``almost-character``."""
    type_label: str
    """Weyl type."""
    q: int
    """Evaluation point."""
    pairs_checked: int
    """Number of ordered pairs compared."""
    mismatches: list[PairMismatch] = []
    """Pairs that failed."""

    @property
    def passed(self) -> bool:
        return not self.mismatches


def _sizes(pack: DataPack, columns: Sequence[tuple[str, str]], q: int) -> list[int]:
    return [pack.class_size(c, a, q) for c, a in columns]


def orthogonality_check(
    table: GreenTable, weyl: WeylGroupData, orders: OrderData, pack: DataPack
) -> OrthogonalityReport:
    """sum_u Q_w(u) Q_w'(u) = [G^F:T_w^F] |C_W^gamma(w)| if w ~ w', else 0."""
    q = table.q
    sizes = _sizes(pack, table.columns, q)
    class_size = {cls.representative: cls.size for cls in gamma_conjugacy_classes(weyl)}
    report = OrthogonalityReport(
        relation='green', type_label=table.type_label, q=q, pairs_checked=0
    )
    for i, w in enumerate(table.row_elements):
        for j, w2 in enumerate(table.row_elements):
            actual = sum(
                s * a * b for s, a, b in zip(sizes, table.values[i], table.values[j])
            )
            expected = orders.index(w, q) * (weyl.order // class_size[w]) if w == w2 else 0
            report.pairs_checked += 1
            if actual != expected:
                report.mismatches.append(
                    PairMismatch(
                        left=table.row_labels[i],
                        right=table.row_labels[j],
                        expected=expected,
                        actual=actual,
                    )
                )
    return report


def almost_character_orthogonality(
    almost: AlmostCharacterTable, pack: DataPack, omega: OmegaMatrix
) -> OrthogonalityReport:
    """sum_u R_E'(u) R_E(u) = omega-tilde_{E',E}."""
    sizes = _sizes(pack, almost.columns, almost.q)
    report = OrthogonalityReport(
        relation='almost-character', type_label=pack.type_label, q=almost.q, pairs_checked=0
    )
    for i, left in enumerate(almost.labels):
        for j, right in enumerate(almost.labels):
            actual = sum(
                s * a * b for s, a, b in zip(sizes, almost.values[i], almost.values[j])
            )
            expected = omega.tilde[omega.labels.index(left), omega.labels.index(right)]
            report.pairs_checked += 1
            if actual != expected:
                report.mismatches.append(
                    PairMismatch(left=left, right=right, expected=int(expected), actual=actual)
                )
    return report


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GreenComputation:
    """Every intermediate of one pipeline run at one q."""

    pack: DataPack
    weyl: WeylGroupData
    table: SigmaCharTable
    orders: OrderData
    omega: OmegaMatrix
    solution: PSolution
    almost: AlmostCharacterTable
    green: GreenTable

    @property
    def q(self) -> int:
        return self.omega.q

    def certify(self) -> list[OrthogonalityReport]:
        """Both orthogonality relations for this run."""
        return [
            orthogonality_check(self.green, self.weyl, self.orders, self.pack),
            almost_character_orthogonality(self.almost, self.pack, self.omega),
        ]


def run_pipeline(type_label: str, q: int, pack: DataPack | None = None) -> GreenComputation:
    """Pack, Weyl data, Omega, decomposition and tables for one type at one admissible q."""
    pack = pack or resolve_pack(type_label)
    pack.require_admissible(q)
    weyl = weyl_group(type_label)
    table = character_table(weyl, pack.sigma)
    orders = order_data(weyl)
    omega = build_omega(weyl, table, orders, pack, q)
    solution = solve_p_lambda(omega)
    almost = almost_character_unipotent(solution, pack, q)
    green = green_table(weyl, table, solution, pack, q)
    return GreenComputation(pack, weyl, table, orders, omega, solution, almost, green)


@dataclass(frozen=True)
class GreenPolynomialTable:
    """Q_w(u) as polynomials in q, valid on one sign residue of q."""

    type_label: str
    """Weyl type."""
    row_labels: tuple[str, ...]
    """Reduced words of the representatives."""
    column_labels: tuple[str, ...]
    """Unipotent column labels."""
    polys: tuple[tuple[IntPoly, ...], ...]
    """polys[w][c] interpolating Q_w(u_c)."""
    sample_qs: tuple[int, ...]
    """Interpolation nodes."""
    held_out_qs: tuple[int, ...]
    """Verification points."""

    @property
    def max_degree(self) -> int:
        return max(p.degree for row in self.polys for p in row)


def green_polynomials(
    type_label: str,
    sample_qs: Sequence[int] | None = None,
    *,
    held_out: int = 2,
    pack: DataPack | None = None,
) -> GreenPolynomialTable:
    """Interpolate every Q_w(u) over q; the default uses |Phi+| + 1 nodes plus held-out points."""
    pack = pack or resolve_pack(type_label)
    if sample_qs is None:
        weyl = weyl_group(type_label)
        sample_qs = residue_samples(pack, weyl.num_positive_roots + 1 + held_out)
    qs = list(sample_qs)
    require_common_residue(pack, qs)
    if held_out < 1 or len(qs) < held_out + 2:
        msg = f'need at least {held_out + 2} sample q values, got {len(qs)}'
        raise InsufficientSamplesError(msg)
    tables = {q: run_pipeline(type_label, q, pack).green for q in qs}
    fit, check = qs[:-held_out], qs[-held_out:]
    first = tables[qs[0]]
    polys = []
    for i in range(len(first.row_labels)):
        row = []
        for c in range(len(first.columns)):
            interpolant = poly_interpolate([(q, tables[q].values[i][c]) for q in fit])
            if not interpolant.integral or any(
                interpolant(q) != tables[q].values[i][c] for q in check
            ):
                msg = (
                    f'Q_{first.row_labels[i]}({first.column_labels[c]}) for {type_label} '
                    f'is not reproduced at held-out q = {check}'
                )
                raise InsufficientSamplesError(msg)
            row.append(interpolant.to_int_poly())
        polys.append(tuple(row))
    logger.debug(f'Interpolated Green polynomials for {type_label} from q = {fit}')
    return GreenPolynomialTable(
        type_label=type_label,
        row_labels=first.row_labels,
        column_labels=first.column_labels,
        polys=tuple(polys),
        sample_qs=tuple(fit),
        held_out_qs=tuple(check),
    )
