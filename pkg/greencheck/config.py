"""Environment settings, run configuration and logging setup."""

from __future__ import annotations

import os
import sys
from pathlib import Path
from typing import Literal

from loguru import logger
from pydantic import BaseModel, ValidationError, field_validator, model_validator

from greencheck.errors import GreenCheckError
from greencheck.springer import is_prime_power
from greencheck.weyl import SUPPORTED_TYPES


PACK_DIR_ENV = 'GREEN_PACK_DIR'
MAX_DIGITS_ENV = 'GREEN_MAX_DIGITS'
LOG_LEVEL_ENV = 'GREEN_LOG_LEVEL'


class Settings(BaseModel, extra='forbid'):
    """Process-wide settings read from the environment."""

    pack_dir: Path | None = None
    """Directory of extra ``<label>.toml`` packs, searched before the embedded ones."""
    max_digits: int = 10000
    """Largest |G^{F^r}| (in decimal digits) a verification may work with."""
    log_level: str = 'WARNING'
    """loguru level for the stderr sink."""

    @field_validator('max_digits')
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            msg = f'{MAX_DIGITS_ENV} must be positive, got {value}'
            raise ValueError(msg)
        return value


def load_settings() -> Settings:
    """Settings from ``GREEN_PACK_DIR``, ``GREEN_MAX_DIGITS`` and ``GREEN_LOG_LEVEL``."""
    values: dict[str, object] = {}
    if pack_dir := os.environ.get(PACK_DIR_ENV):
        values['pack_dir'] = Path(pack_dir).expanduser()
    if max_digits := os.environ.get(MAX_DIGITS_ENV):
        values['max_digits'] = max_digits
    if log_level := os.environ.get(LOG_LEVEL_ENV):
        values['log_level'] = log_level.upper()
    try:
        return Settings.model_validate(values)
    except ValidationError as exc:
        msg = f'invalid environment settings: {exc.errors()[0]["msg"]}'
        raise GreenCheckError(msg) from exc


def configure_logging(level: str = 'WARNING') -> None:
    """Replace loguru's default sink with one stderr sink at ``level``."""
    logger.remove()
    logger.add(sys.stderr, level=level, format='{time:HH:mm:ss} | {level: <8} | {message}')


def parse_int_list(text: str) -> list[int]:
    """``'2,3,5'`` -> ``[2, 3, 5]``."""
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        msg = f'expected comma-separated integers, got {text!r}'
        raise ValueError(msg) from None


class RunConfig(BaseModel, extra='forbid'):
    """One validated CLI invocation."""

    subcommand: Literal['table', 'omega', 'solve', 'pi', 'oracle', 'validate-pack', 'verify']
    """Which operation to run."""
    type_label: str | None = None
    """Weyl type; ``all`` is accepted by ``verify``."""
    q: int | None = None
    """Prime power the group is defined over."""
    r: int | None = None
    """Prime for the congruence check."""
    sample_qs: list[int] = []
    """Interpolation nodes for ``pi`` and ``table --sample-q``."""
    format: Literal['csv', 'text'] = 'text'
    """CSV or structured text (JSON)."""
    pack: Path | None = None
    """Explicit pack path or embedded pack name."""
    jobs: int = 1
    """Worker processes for sweeps."""

    @field_validator('type_label')
    @classmethod
    def _known_type(cls, value: str | None) -> str | None:
        if value is not None and value != 'all' and value not in SUPPORTED_TYPES:
            msg = f'unsupported type {value!r}; choose from {", ".join(SUPPORTED_TYPES)}'
            raise ValueError(msg)
        return value

    @field_validator('q')
    @classmethod
    def _prime_power(cls, value: int | None) -> int | None:
        if value is not None and not is_prime_power(value):
            msg = f'q = {value} is not a prime power'
            raise ValueError(msg)
        return value

    @field_validator('r')
    @classmethod
    def _at_least_two(cls, value: int | None) -> int | None:
        if value is not None and value < 2:
            msg = f'r must be at least 2, got {value}'
            raise ValueError(msg)
        return value

    @field_validator('sample_qs')
    @classmethod
    def _sample_prime_powers(cls, value: list[int]) -> list[int]:
        bad = [q for q in value if not is_prime_power(q)]
        if bad:
            msg = f'sample q values are not prime powers: {bad}'
            raise ValueError(msg)
        return value

    @field_validator('jobs')
    @classmethod
    def _positive_jobs(cls, value: int) -> int:
        if value < 1:
            msg = f'jobs must be at least 1, got {value}'
            raise ValueError(msg)
        return value

    @model_validator(mode='after')
    def _all_only_for_verify(self) -> RunConfig:
        if self.type_label == 'all' and self.subcommand != 'verify':
            msg = 'type "all" is only accepted by verify'
            raise ValueError(msg)
        return self
