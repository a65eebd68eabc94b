from __future__ import annotations

import pytest

from hlsrepair.cfront import SourceUnit
from hlsrepair.corpus import benchmarks


@pytest.fixture(scope="session")
def corpus():
    return benchmarks()


@pytest.fixture(scope="session")
def bfs(corpus):
    return next(b for b in corpus if b.id == "09_breadth_first_search")


@pytest.fixture(scope="session")
def bfs_rows(bfs):
    return bfs.load_dataset()


def unit(text: str, name: str = "t.c") -> SourceUnit:
    return SourceUnit.from_bytes(name, text)


# acceptance criteria record their verdicts here; the summary prints them
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
