"""GreenCheck CLI commands."""

from __future__ import annotations

import sys
from enum import StrEnum
from pathlib import Path

import click
import typer
from loguru import logger
from pydantic import ValidationError
from rich.console import Console

from greencheck.config import RunConfig, configure_logging, load_settings, parse_int_list
from greencheck.congruence import SWEEP_QS, SWEEP_RS, sweep, sweep_tasks, verify_full
from greencheck.errors import GreenCheckError
from greencheck.green import green_polynomials, run_pipeline
from greencheck.lusztig_shoji import reconstruct_pi
from greencheck.oracles import (
    flag_fixed_points,
    gl_enumerate,
    green_polynomial_table,
    jordan_unipotent,
    partitions,
)
from greencheck.reports import (
    flag_count_document,
    green_polynomial_document,
    green_table_document,
    inventory_document,
    omega_document,
    oracle_table_document,
    pack_summary,
    pi_document,
    solution_document,
    verdict_table,
    verification_text,
)
from greencheck.springer import SAMPLE_QS, DataPack, resolve_pack
from greencheck.weyl import SUPPORTED_TYPES


app = typer.Typer(name='greencheck', help='GreenCheck - Green functions and their congruences')
console = Console(stderr=True)


class Format(StrEnum):
    csv = 'csv'
    text = 'text'


class OracleKind(StrEnum):
    green = 'green'
    flags = 'flags'
    enumerate = 'enumerate'


TYPE_OPTION = typer.Option(None, '--type', '-t', help=f'Type label: {", ".join(SUPPORTED_TYPES)}')
Q_OPTION = typer.Option(None, '--q', help='Prime power q')
R_OPTION = typer.Option(None, '--r', help='Prime r for the congruence')
SAMPLE_OPTION = typer.Option(None, '--sample-q', help='Comma-separated sample q values, e.g. 2,3,4')
FORMAT_OPTION = typer.Option(Format.text, '--format', '-f', help='Output format')
PACK_OPTION = typer.Option(None, '--pack', help='Pack file, or the name of an embedded pack')
JOBS_OPTION = typer.Option(1, '--jobs', '-j', help='Worker processes for sweeps')


@app.callback()
def _setup() -> None:
    configure_logging(load_settings().log_level)


def _config(subcommand: str, **values: object) -> RunConfig:
    sample = values.pop('sample_q', None)
    try:
        if sample:
            values['sample_qs'] = parse_int_list(str(sample))
        return RunConfig.model_validate({'subcommand': subcommand, **values})
    except (ValidationError, ValueError) as exc:
        errors = exc.errors() if isinstance(exc, ValidationError) else [{'msg': str(exc)}]
        raise typer.BadParameter('; '.join(str(e['msg']) for e in errors)) from None


def _require(config: RunConfig, *names: str) -> None:
    missing = [name for name in names if getattr(config, name) is None]
    if missing:
        raise typer.BadParameter(f'missing required option(s): {", ".join(missing)}')


def _pack(config: RunConfig) -> DataPack:
    settings = load_settings()
    return resolve_pack(config.type_label, pack_path=config.pack, pack_dir=settings.pack_dir)


def _emit(text: str) -> None:
    typer.echo(text, nl=False)


@app.command()
def table(
    type_label: str | None = TYPE_OPTION,
    q: int | None = Q_OPTION,
    sample_q: str | None = SAMPLE_OPTION,
    fmt: Format = FORMAT_OPTION,
    pack: Path | None = PACK_OPTION,
) -> None:
    """Print the Green function table Q_w(u) at q, or its polynomials over --sample-q."""
    config = _config(
        'table', type_label=type_label, q=q, sample_q=sample_q, format=fmt.value, pack=pack
    )
    _require(config, 'type_label')
    data = _pack(config)
    if config.sample_qs:
        polys = green_polynomials(config.type_label, config.sample_qs, pack=data)
        _emit(green_polynomial_document(polys).render(config.format))
        return
    _require(config, 'q')
    run = run_pipeline(config.type_label, config.q, data)
    failed = [report for report in run.certify() if not report.passed]
    for report in failed:
        console.print(f'[red]{report.relation} orthogonality fails: {report.mismatches[0]}[/red]')
    _emit(green_table_document(run.green).render(config.format))
    if failed:
        raise typer.Exit(code=1)


@app.command()
def omega(
    type_label: str | None = TYPE_OPTION,
    q: int | None = Q_OPTION,
    fmt: Format = FORMAT_OPTION,
    pack: Path | None = PACK_OPTION,
) -> None:
    """Print omega-tilde and omega at q."""
    config = _config('omega', type_label=type_label, q=q, format=fmt.value, pack=pack)
    _require(config, 'type_label', 'q')
    run = run_pipeline(config.type_label, config.q, _pack(config))
    _emit(omega_document(run.omega).render(config.format))


@app.command()
def solve(
    type_label: str | None = TYPE_OPTION,
    q: int | None = Q_OPTION,
    fmt: Format = FORMAT_OPTION,
    pack: Path | None = PACK_OPTION,
) -> None:
    """Print P and Lambda with P^tr Lambda P = Omega at q."""
    config = _config('solve', type_label=type_label, q=q, format=fmt.value, pack=pack)
    _require(config, 'type_label', 'q')
    run = run_pipeline(config.type_label, config.q, _pack(config))
    _emit(solution_document(run.solution).render(config.format))


@app.command()
def pi(
    type_label: str | None = TYPE_OPTION,
    sample_q: str | None = SAMPLE_OPTION,
    fmt: Format = FORMAT_OPTION,
    pack: Path | None = PACK_OPTION,
) -> None:
    """Print the polynomials pi_{E',E} interpolated over the sample q values."""
    config = _config('pi', type_label=type_label, sample_q=sample_q, format=fmt.value, pack=pack)
    _require(config, 'type_label')
    pis = reconstruct_pi(config.type_label, config.sample_qs or None, pack=_pack(config))
    _emit(pi_document(pis).render(config.format))


@app.command()
def oracle(
    kind: OracleKind = typer.Option(OracleKind.green, '--kind', '-k', help='Which oracle to run'),
    type_label: str | None = TYPE_OPTION,
    q: int | None = Q_OPTION,
    fmt: Format = FORMAT_OPTION,
) -> None:
    """Run a type A oracle: Green polynomials, fixed-flag counts or brute-force enumeration."""
    config = _config('oracle', type_label=type_label, q=q, format=fmt.value)
    _require(config, 'type_label', 'q')
    label = config.type_label
    if not (label.startswith('A') and label[1:].isdigit()):
        raise typer.BadParameter(f'oracles cover untwisted type A only, got {label}')
    n = int(label[1:]) + 1
    if kind is OracleKind.green:
        document = oracle_table_document(green_polynomial_table(n, config.q))
    elif kind is OracleKind.flags:
        counts = {
            mu.label: flag_fixed_points(jordan_unipotent(mu, config.q), n, config.q)
            for mu in partitions(n)
        }
        document = flag_count_document(n, config.q, counts)
    else:
        document = inventory_document(gl_enumerate(n, config.q))
    _emit(document.render(config.format))


@app.command('validate-pack')
def validate_pack(
    type_label: str | None = TYPE_OPTION,
    pack: Path | None = PACK_OPTION,
) -> None:
    """Load and validate a pack, then certify one pipeline run on it."""
    config = _config('validate-pack', type_label=type_label, pack=pack)
    if config.pack is None:
        _require(config, 'type_label')
    data = _pack(config)
    console.print(pack_summary(data))
    q = next((value for value in SAMPLE_QS if data.admissible(value)), None)
    if q is None:
        console.print(f'[red]{data.type_label} pack admits none of the sample q values[/red]')
        raise typer.Exit(code=1)
    failed = [r for r in run_pipeline(data.type_label, q, data).certify() if not r.passed]
    if failed:
        console.print(f'[red]{data.type_label} pack fails certification at q = {q}[/red]')
        raise typer.Exit(code=1)
    console.print(f'[green]{data.type_label} pack is valid (certified at q = {q})[/green]')


@app.command()
def verify(
    type_label: str | None = TYPE_OPTION,
    q: int | None = Q_OPTION,
    r: int | None = R_OPTION,
    pack: Path | None = PACK_OPTION,
    jobs: int = JOBS_OPTION,
) -> None:
    """Verify Q_{T,F}(u) = Q_{T,F^r}(u) mod r; --type all or omitted --q/--r runs a sweep."""
    config = _config('verify', type_label=type_label, q=q, r=r, pack=pack, jobs=jobs)
    settings = load_settings()
    cell = (config.type_label, config.q, config.r)
    if None not in cell and config.type_label != 'all':
        data = _pack(config)
        reports = [
            verify_full(
                config.type_label, config.q, config.r, pack=data, max_digits=settings.max_digits
            )
        ]
    else:
        types = None if config.type_label in {None, 'all'} else [config.type_label]
        tasks = sweep_tasks(
            types,
            [config.q] if config.q is not None else SWEEP_QS,
            [config.r] if config.r is not None else SWEEP_RS,
            max_digits=settings.max_digits,
            pack_dir=settings.pack_dir,
            pack_path=config.pack,
        )
        reports = sweep(tasks, jobs=config.jobs)
    console.print(verdict_table(reports))
    _emit(verification_text(reports))
    if any(report.status == 'failed' for report in reports):
        raise typer.Exit(code=1)


def run(argv: list[str] | None = None) -> int:
    """Run the CLI on ``argv`` and return the exit code."""
    args = sys.argv[1:] if argv is None else argv
    try:
        result = app(args=args, prog_name='greencheck', standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        console.print('[red]Aborted[/red]')
        return 1
    except GreenCheckError as exc:
        logger.error(f'{exc}')
        console.print(f'[red]{exc}[/red]')
        return 1
    return result if isinstance(result, int) else 0


def main() -> None:
    """Main entry point."""
    sys.exit(run())


if __name__ == '__main__':
    main()
