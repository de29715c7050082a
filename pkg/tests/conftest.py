"""Shared fixtures and the acceptance-criteria summary hook."""

from __future__ import annotations

from pathlib import Path

import pytest

from zetarace import zeros

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def _find_table() -> Path:
    packaged = zeros.default_table_path()
    if packaged.exists():
        return packaged
    dev = Path(__file__).resolve().parents[1] / "work" / "dev_zeros.txt"
    if dev.exists():
        return dev
    raise FileNotFoundError("no zero table available; run scripts/generate_zeros.py")


@pytest.fixture(scope="session")
def catalog() -> zeros.ZeroCatalog:
    return zeros.load_zeros(_find_table(), min_digits=9)


@pytest.fixture(scope="session")
def full_catalog(catalog: zeros.ZeroCatalog) -> zeros.ZeroCatalog:
    """Catalog covering the paper profile's T = 7500 (skips on a short dev table)."""
    if catalog.max_ordinate < 7600:
        pytest.skip("full 10k-ordinate table not present")
    return catalog
