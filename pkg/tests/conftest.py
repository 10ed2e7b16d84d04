"""Shared fixtures."""

from __future__ import annotations

from pathlib import Path

import pytest


DATA_DIR = Path(__file__).parent / 'data'


@pytest.fixture
def porc_pack_path() -> Path:
    """A1 pack whose identity-class sign depends on q mod 3."""
    return DATA_DIR / 'a1_porc.toml'


@pytest.fixture
def porc_pack_text(porc_pack_path: Path) -> str:
    return porc_pack_path.read_text()
