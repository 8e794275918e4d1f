import os

import pytest

from tashkil.db import load_db
from tashkil.pipeline import load_gold
from tashkil.script import from_hsb, to_hsb

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def h(text: str) -> str:
    """HSB -> Arabic script."""
    return from_hsb(text)


def t(text: str) -> str:
    """Arabic script -> HSB."""
    return to_hsb(text)


def read_hsb_lines(name: str) -> list[str]:
    with open(fixture_path(name), encoding="utf-8") as f:
        return [from_hsb(line.rstrip("\n")) for line in f]


def read_ref_lines(name: str) -> list[str]:
    """Reference file with its sentence column converted from HSB."""
    out = []
    with open(fixture_path(name), encoding="utf-8") as f:
        for line in f:
            cols = line.rstrip("\n").split("\t")
            k = 1 if len(cols) >= 3 else 0
            cols[k] = from_hsb(cols[k])
            out.append("\t".join(cols))
    return out


@pytest.fixture(scope="session")
def db():
    return load_db(fixture_path("db.tsv"), hsb=True)


@pytest.fixture(scope="session")
def gold_predictor():
    return load_gold(fixture_path("dev_gold_features.tsv"), hsb=True)


@pytest.fixture(scope="session")
def dev_input():
    return read_hsb_lines("dev_input.txt")


@pytest.fixture(scope="session")
def dev_partial():
    return read_hsb_lines("dev_partial.txt")


@pytest.fixture(scope="session")
def dev_ref():
    return read_ref_lines("dev_ref.tsv")


# Acceptance verdicts, one line per criterion, repeated in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
