"""Shipped example corpus: toy ontology, English and French lexicons, example IRs."""

import os
from pathlib import Path

ENV_VAR = "LEXCHOICE_FIXTURES"


def fixture_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else Path(__file__).resolve().parent


def fixture_path(name: str) -> Path:
    return fixture_dir() / name


def read_fixture(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")
