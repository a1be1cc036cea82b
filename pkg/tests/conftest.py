import pytest
from hypothesis import strategies as st

from grassbord.gf2poly import Gf2Poly, monomial

ACCEPTANCE_RESULTS: list = []


def small_monomials(max_vars=6, max_exp=4):
    return st.lists(st.integers(0, max_exp), min_size=0, max_size=max_vars).map(lambda e: monomial(*e))


def small_polys(max_vars=6, max_deg=8, max_terms=8):
    mono = small_monomials(max_vars).filter(lambda m: sum(m) <= max_deg)
    return st.lists(mono, max_size=max_terms).map(Gf2Poly)


@pytest.fixture
def record_criterion():
    def record(label: str, passed: bool, detail: str = ""):
        ACCEPTANCE_RESULTS.append((label, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE_RESULTS:
        line = f"{'PASS' if passed else 'FAIL'}  {label}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
