import csv
from fractions import Fraction
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


def load_published_tables():
    """Transcribed trace rows for a=8, b=6, keyed by ``(h, region)``, as Fractions.

    The h=1/2 region-R2 rows start from (6.5, 3); the h=1/10 region-R2 rows
    stop at y=0.1.
    """
    tables = {}
    with open(DATA / "published_tables.tsv", newline="") as fh:
        for row in csv.DictReader(fh, delimiter="\t"):
            key = row.pop("h"), row.pop("region")
            tables.setdefault(key, []).append({k: Fraction(v) for k, v in row.items()})
    return tables


@pytest.fixture(scope="session")
def published_tables():
    return load_published_tables()


_CRITERIA = []


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for the acceptance summary."""
    def record(number, title, ok, detail=""):
        _CRITERIA.append((number, title, bool(ok), detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        line = f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
