"""Serializable views of pipeline results and their CSV / structured-text rendering.

Structured text is JSON with integers at full precision. CSV has one header row of column
labels and one row per matrix row, the row label first.
"""

from __future__ import annotations

import csv
import io
import json
from typing import TYPE_CHECKING, Literal

from pydantic import BaseModel
from rich.table import Table


if TYPE_CHECKING:
    from collections.abc import Sequence

    from greencheck.congruence import CongruenceReport
    from greencheck.exact import RatMatrix
    from greencheck.green import GreenPolynomialTable, GreenTable
    from greencheck.lusztig_shoji import OmegaMatrix, PiTable, PSolution
    from greencheck.oracles import GLInventory, OracleTable
    from greencheck.springer import DataPack


type OutputFormat = Literal['csv', 'text']

PASS_LINE = 'ALL CONGRUENCES HOLD'
FAIL_LINE = 'CONGRUENCE VIOLATIONS FOUND'
UNMET_LINE = 'HYPOTHESES NOT MET'


class MatrixView(BaseModel):
    """A labelled matrix of integers or polynomial strings."""

    name: str
    """Shown in the corner cell of the CSV header."""
    row_labels: list[str]
    column_labels: list[str]
    values: list[list[int | str]]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow([self.name, *self.column_labels])
        for label, row in zip(self.row_labels, self.values):
            writer.writerow([label, *row])
        return buffer.getvalue()


class Document(BaseModel):
    """Everything one subcommand prints to stdout."""

    kind: str
    """Subcommand that produced the document."""
    metadata: dict[str, object] = {}
    matrices: list[MatrixView] = []

    def render(self, fmt: OutputFormat) -> str:
        if fmt == 'csv':
            return '\n'.join(matrix.to_csv() for matrix in self.matrices)
        return json.dumps(self.model_dump(), indent=2) + '\n'


def _int_rows(matrix: RatMatrix) -> list[list[int | str]]:
    return [list(row) for row in matrix.to_int_rows()]


def green_table_view(table: GreenTable) -> MatrixView:
    return MatrixView(
        name='w',
        row_labels=list(table.row_labels),
        column_labels=list(table.column_labels),
        values=[list(row) for row in table.values],
    )


def green_table_document(table: GreenTable) -> Document:
    return Document(
        kind='table',
        metadata={
            'type': table.type_label,
            'q': table.q,
            'provenance': table.provenance,
            'residues': table.residues,
            'tie_break': table.tie_break,
        },
        matrices=[green_table_view(table)],
    )


def green_polynomial_document(table: GreenPolynomialTable) -> Document:
    view = MatrixView(
        name='w',
        row_labels=list(table.row_labels),
        column_labels=list(table.column_labels),
        values=[[str(p) for p in row] for row in table.polys],
    )
    return Document(
        kind='table',
        metadata={
            'type': table.type_label,
            'sample_qs': list(table.sample_qs),
            'held_out_qs': list(table.held_out_qs),
            'max_degree': table.max_degree,
        },
        matrices=[view],
    )


def omega_document(omega: OmegaMatrix) -> Document:
    labels = list(omega.labels)
    return Document(
        kind='omega',
        metadata={
            'q': omega.q,
            'd': dict(zip(omega.labels, omega.d)),
            'classes': dict(zip(omega.labels, omega.class_labels)),
            'det_omega_tilde': int(omega.tilde.det()),
            'tie_break': omega.tie_break,
        },
        matrices=[
            MatrixView(
                name='omega_tilde',
                row_labels=labels,
                column_labels=labels,
                values=_int_rows(omega.tilde),
            ),
            MatrixView(
                name='omega',
                row_labels=labels,
                column_labels=labels,
                values=_int_rows(omega.scaled),
            ),
        ],
    )


def solution_document(sol: PSolution) -> Document:
    labels = list(sol.labels)
    return Document(
        kind='solve',
        metadata={
            'q': sol.q,
            'block_sizes': list(sol.block_sizes),
            'block_d': list(sol.block_d),
            'tie_break': sol.omega.tie_break,
        },
        matrices=[
            MatrixView(name='P', row_labels=labels, column_labels=labels, values=_int_rows(sol.P)),
            MatrixView(
                name='Lambda', row_labels=labels, column_labels=labels, values=_int_rows(sol.Lam)
            ),
        ],
    )


def pi_document(pi: PiTable) -> Document:
    labels = list(pi.labels)
    return Document(
        kind='pi',
        metadata={
            'type': pi.type_label,
            'sample_qs': list(pi.sample_qs),
            'held_out_qs': list(pi.held_out_qs),
        },
        matrices=[
            MatrixView(
                name='pi',
                row_labels=labels,
                column_labels=labels,
                values=[[str(p) for p in row] for row in pi.polys],
            )
        ],
    )


def oracle_table_document(table: OracleTable) -> Document:
    view = MatrixView(
        name='rho',
        row_labels=list(table.row_labels),
        column_labels=list(table.column_labels),
        values=[list(row) for row in table.values],
    )
    return Document(kind='oracle', metadata={'n': table.n, 'q': table.q}, matrices=[view])


def flag_count_document(n: int, q: int, counts: dict[str, int]) -> Document:
    view = MatrixView(
        name='q',
        row_labels=[str(q)],
        column_labels=list(counts),
        values=[list(counts.values())],
    )
    return Document(kind='oracle', metadata={'n': n, 'q': q, 'oracle': 'flags'}, matrices=[view])


def inventory_document(inventory: GLInventory) -> Document:
    labels = list(inventory.unipotent_class_sizes)
    view = MatrixView(
        name='mu',
        row_labels=labels,
        column_labels=['class_size', 'centralizer_order'],
        values=[
            [inventory.unipotent_class_sizes[label], inventory.centralizer_orders[label]]
            for label in labels
        ],
    )
    return Document(
        kind='oracle',
        metadata={
            'n': inventory.n,
            'q': inventory.q,
            'oracle': 'enumerate',
            'group_order': inventory.group_order,
            'unipotent_count': inventory.unipotent_count,
            'torus_orders': inventory.torus_orders,
        },
        matrices=[view],
    )


def pack_summary(pack: DataPack) -> Table:
    """Rich table of a validated pack, one row per Springer entry."""
    table = Table(title=f'{pack.type_label} pack', caption=pack.provenance)
    for column in ('E', 'C(E)', 'A(u)', 'epsilon', 'd', 'delta'):
        table.add_column(column)
    for entry in pack.springer:
        cls = pack.unipotent_class(entry.class_label)
        table.add_row(
            entry.char_label,
            entry.class_label,
            cls.group.name,
            str(list(entry.a_character)),
            str(entry.d),
            str(dict(entry.delta.signs)),
        )
    return table


def verdict_table(reports: Sequence[CongruenceReport]) -> Table:
    table = Table(title='Congruence verification')
    for column in ('type', 'q', 'r', 'status', 'witness'):
        table.add_column(column)
    for report in reports:
        style = {'passed': 'green', 'failed': 'red'}.get(report.status, 'yellow')
        witness = (
            f'{report.witness.row} @ {report.witness.column}' if report.witness is not None else ''
        )
        table.add_row(
            report.type_label,
            str(report.q),
            str(report.r),
            f'[{style}]{report.status}[/{style}]',
            witness,
        )
    return table


def verification_text(reports: Sequence[CongruenceReport]) -> str:
    """JSON report(s) followed by the overall verdict line."""
    payload = [report.model_dump() for report in reports]
    body = json.dumps(payload[0] if len(payload) == 1 else payload, indent=2)
    if any(report.status == 'failed' for report in reports):
        footer = FAIL_LINE
    elif any(report.status == 'passed' for report in reports):
        footer = PASS_LINE
    else:
        footer = UNMET_LINE
    return f'{body}\n{footer}\n'
