"""Instance checks of Q_{T,F}(u) = Q_{T,F^r}(u) mod r and the congruences behind it.

A verification runs the whole pipeline twice, at q and independently at q^r, and compares the
order polynomials, Omega, P, Lambda, the Y-functions and finally the Green tables modulo r.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

import sympy
from loguru import logger
from pydantic import BaseModel
from tqdm import tqdm

from greencheck.errors import AdmissibilityError, BudgetExceededError
from greencheck.green import run_pipeline
from greencheck.lusztig_shoji import compare_mod_r
from greencheck.orders import order_data
from greencheck.springer import resolve_pack, y_stability_violations
from greencheck.weyl import SUPPORTED_TYPES, gamma_conjugacy_classes, weyl_group


if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from greencheck.springer import DataPack


SWEEP_QS: tuple[int, ...] = (2, 3, 4, 5)
SWEEP_RS: tuple[int, ...] = (5, 7, 11, 13)

type Status = Literal['passed', 'failed', 'hypotheses-not-met']


class HypothesisVerdict(BaseModel):
    """Which preconditions of the congruence hold for (type, q, r)."""

    type_label: str
    q: int
    r: int
    q_admissible: bool
    """q is a prime power in a good characteristic of the pack."""
    r_prime: bool
    r_in_m: bool
    """r = 1 mod the order of the twist, so F^r has the same twist as F."""
    r_coprime_to_group_order: bool
    """r does not divide |G^{F^r}|."""
    r_coprime_to_det: bool = True
    """r does not divide det Omega; only known once the pipeline has run."""

    @property
    def all_hold(self) -> bool:
        return all(
            (
                self.q_admissible,
                self.r_prime,
                self.r_in_m,
                self.r_coprime_to_group_order,
                self.r_coprime_to_det,
            )
        )


class Violation(BaseModel):
    """A congruence that failed, with its coordinates."""

    kind: str
    """orders, omega, P, Lambda, Y or green."""
    location: str
    """Entry coordinates, e.g. ``s1 @ (2,1)``."""
    at_q: str
    at_qr: str


class OrderVerdict(BaseModel):
    """|G^{F^r}| = |G^F| and |T_w^{F^r}| = |T_w^F| mod r."""

    group_congruent: bool
    torus_congruent: dict[str, bool]
    """Per gamma-class representative."""
    violations: list[Violation] = []

    @property
    def passed(self) -> bool:
        return self.group_congruent and all(self.torus_congruent.values())


class Witness(BaseModel):
    """An entry where Q at q and Q at q^r differ as integers but agree mod r."""

    row: str
    column: str
    at_q: str
    at_qr: str


class CongruenceReport(BaseModel):
    """Outcome of one (type, q, r) verification."""

    type_label: str
    q: int
    r: int
    status: Status
    hypotheses: HypothesisVerdict
    verdicts: dict[str, bool] = {}
    """Per congruence family: orders, omega, p, lambda, y, fermat, green."""
    violations: list[Violation] = []
    witness: Witness | None = None
    """Non-vacuity witness; absent when no entry changes between q and q^r."""
    residues: dict[str, int] = {}
    """delta_E(q) for packs with residue-dependent signs."""

    @property
    def passed(self) -> bool:
        return self.status == 'passed'


def _group_order_mod(pack: DataPack, q: int, r: int) -> int:
    group = order_data(weyl_group(pack.type_label)).group_poly
    return sum(c * pow(q, i, r) for i, c in enumerate(group.coefficients)) % r


def check_hypotheses(
    type_label: str, q: int, r: int, pack: DataPack | None = None
) -> HypothesisVerdict:
    """Evaluate the preconditions; never raises for bad q or r."""
    pack = pack or resolve_pack(type_label)
    twist_order = weyl_group(type_label).datum.twist_order
    r_prime = bool(sympy.isprime(r))
    q_admissible = pack.admissible(q)
    coprime = r_prime and q_admissible and _group_order_mod(pack, pow(q, r, r), r) != 0
    verdict = HypothesisVerdict(
        type_label=type_label,
        q=q,
        r=r,
        q_admissible=q_admissible,
        r_prime=r_prime,
        r_in_m=r_prime and r % twist_order == 1 % twist_order,
        r_coprime_to_group_order=coprime,
    )
    if not verdict.all_hold:
        logger.warning(f'Hypotheses fail for {type_label} at q = {q}, r = {r}')
    return verdict


def verify_orders(type_label: str, q: int, r: int) -> OrderVerdict:
    """Compare f and every f_w at q and q^r modulo r, with exact evaluation."""
    weyl = weyl_group(type_label)
    orders = order_data(weyl)
    qr = q**r
    violations = []
    at_q, at_qr = orders.group_order(q), orders.group_order(qr)
    group_ok = (at_q - at_qr) % r == 0
    if not group_ok:
        violations.append(
            Violation(kind='orders', location='|G|', at_q=str(at_q), at_qr=str(at_qr))
        )
    tori = {}
    for cls in gamma_conjugacy_classes(weyl):
        t_q = orders.torus_order(cls.representative, q)
        t_qr = orders.torus_order(cls.representative, qr)
        tori[cls.label] = (t_q - t_qr) % r == 0
        if not tori[cls.label]:
            violations.append(
                Violation(
                    kind='orders', location=f'|T_{cls.label}|', at_q=str(t_q), at_qr=str(t_qr)
                )
            )
    return OrderVerdict(group_congruent=group_ok, torus_congruent=tori, violations=violations)


def _check_budget(type_label: str, q: int, r: int, max_digits: int) -> None:
    group = order_data(weyl_group(type_label)).group_poly
    digits = math.ceil(group.degree * r * math.log10(q)) + 1
    if digits > max_digits:
        msg = (
            f'|G^(F^r)| for {type_label} at q = {q}, r = {r} has about {digits} digits, '
            f'over the budget of {max_digits}'
        )
        raise BudgetExceededError(msg)


def verify_full(
    type_label: str,
    q: int,
    r: int,
    *,
    pack: DataPack | None = None,
    max_digits: int = 10000,
) -> CongruenceReport:
    """Independent pipeline runs at q and q^r, compared modulo r."""
    pack = pack or resolve_pack(type_label)
    hypotheses = check_hypotheses(type_label, q, r, pack)
    report = CongruenceReport(
        type_label=type_label, q=q, r=r, status='hypotheses-not-met', hypotheses=hypotheses
    )
    if not hypotheses.all_hold:
        return report
    _check_budget(type_label, q, r, max_digits)
    qr = q**r
    base = run_pipeline(type_label, q, pack)
    high = run_pipeline(type_label, qr, pack)

    mod_r = compare_mod_r(base.solution, high.solution, r)
    if not mod_r.det_coprime:
        hypotheses = hypotheses.model_copy(update={'r_coprime_to_det': False})
        return report.model_copy(update={'hypotheses': hypotheses})

    violations: list[Violation] = []
    orders = verify_orders(type_label, q, r)
    violations.extend(orders.violations)
    violations.extend(
        Violation(kind=v.matrix, location=f'{v.row} @ {v.col}', at_q=v.at_q, at_qr=v.at_qr)
        for v in mod_r.violations
    )
    y_bad = y_stability_violations(pack, q, r)
    violations.extend(Violation(kind='Y', location=loc, at_q='', at_qr='') for loc in y_bad)
    fermat = all((pow(q, e.d * r, r) - pow(q, e.d, r)) % r == 0 for e in pack.springer)

    green_ok = True
    witness = None
    columns = base.green.columns
    for c, (class_label, a_label) in enumerate(columns):
        image = pack.unipotent_class(class_label).group.power(a_label, r)
        high_column = high.green.column((class_label, image))
        for w, row in enumerate(base.green.values):
            low, up = row[c], high_column[w]
            location = f'{base.green.row_labels[w]} @ {base.green.column_labels[c]}'
            if (low - up) % r:
                green_ok = False
                violations.append(
                    Violation(kind='green', location=location, at_q=str(low), at_qr=str(up))
                )
            elif witness is None and low != up:
                witness = Witness(
                    row=base.green.row_labels[w],
                    column=base.green.column_labels[c],
                    at_q=str(low),
                    at_qr=str(up),
                )

    verdicts = {
        'orders': orders.passed,
        'omega': mod_r.omega_congruent,
        'p': bool(mod_r.p_congruent),
        'lambda': bool(mod_r.lambda_congruent),
        'y': not y_bad,
        'fermat': fermat,
        'green': green_ok,
    }
    status: Status = 'passed' if all(verdicts.values()) else 'failed'
    logger.info(f'{type_label} q = {q} r = {r}: {status}')
    return report.model_copy(
        update={
            'status': status,
            'verdicts': verdicts,
            'violations': violations,
            'witness': witness,
            'residues': base.green.residues,
        }
    )


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepTask:
    """One (type, q, r) cell of a sweep."""

    type_label: str
    q: int
    r: int
    max_digits: int = 10000
    pack_dir: Path | None = None
    pack_path: Path | None = None


def _run_task(task: SweepTask) -> CongruenceReport:
    pack = resolve_pack(task.type_label, pack_path=task.pack_path, pack_dir=task.pack_dir)
    return verify_full(task.type_label, task.q, task.r, pack=pack, max_digits=task.max_digits)


def sweep_tasks(
    types: Sequence[str] | None = None,
    qs: Sequence[int] = SWEEP_QS,
    rs: Sequence[int] = SWEEP_RS,
    *,
    max_digits: int = 10000,
    pack_dir: Path | None = None,
    pack_path: Path | None = None,
) -> list[SweepTask]:
    """Grid cells in type, q, r order; q values inadmissible for a type's pack are skipped."""
    tasks = []
    for type_label in types or SUPPORTED_TYPES:
        pack = resolve_pack(type_label, pack_path=pack_path, pack_dir=pack_dir)
        for q in qs:
            if not pack.admissible(q):
                logger.debug(f'Skipping q = {q} for {type_label}')
                continue
            tasks.extend(
                SweepTask(type_label, q, r, max_digits, pack_dir, pack_path) for r in rs
            )
    return tasks


def sweep(tasks: Sequence[SweepTask], *, jobs: int = 1) -> list[CongruenceReport]:
    """Run every task, in a process pool when ``jobs > 1``; results keep the task order."""
    if not tasks:
        msg = 'no admissible (type, q, r) combination to verify'
        raise AdmissibilityError(msg)
    if jobs == 1:
        return [_run_task(task) for task in tqdm(tasks, desc='Verifying', disable=None)]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(
            tqdm(executor.map(_run_task, tasks), total=len(tasks), desc='Verifying', disable=None)
        )
