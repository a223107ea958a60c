import pytest

from citepr import CitationDistribution, compute_all, ingest

from helpers import DATA

# the 21-paper example cell, one citation count per paper
FIXTURE_CCS = [20, 20, 13, 13, 10, 9, 8, 8, 7, 7, 7, 7, 3, 2, 1, 1, 1, 0, 0, 0, 0]


@pytest.fixture
def fixture_dist():
    return CitationDistribution.from_citations(FIXTURE_CCS, key=(2000, "PHYS"))


@pytest.fixture(scope="session")
def two_cell_store():
    """Papers A (100 citations) and B (20) in two cells of size 68 and 411."""
    return compute_all(ingest(DATA / "two_cells.csv"))


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, title, ok, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n}. {title}" + (f" ({detail})" if detail else ""))
