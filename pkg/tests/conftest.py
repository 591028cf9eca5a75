import numpy as np
import pytest

from incidence_ldpc.code import HAMMING_7_4, LinearCode, ParityCheckMatrix, parity_check_from_graph
from incidence_ldpc.graph import GraphSpec, build_graph

# (criterion, status, detail) lines collected by test_acceptance
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for crit, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  [{crit}] {detail}")


_GRAPHS = {}


def cached_graph(family, base, restriction=None):
    key = (family, base, restriction)
    if key not in _GRAPHS:
        _GRAPHS[key] = build_graph(GraphSpec(family, base, restriction))
    return _GRAPHS[key]


@pytest.fixture
def hamming():
    return ParityCheckMatrix(HAMMING_7_4)


@pytest.fixture(scope="session")
def hamming_code():
    return LinearCode.from_parity_check(ParityCheckMatrix(HAMMING_7_4))


@pytest.fixture(scope="session")
def code_243():
    H = parity_check_from_graph(cached_graph("field", 3))
    return LinearCode.from_parity_check(H)


def brute_rank(dense):
    """Rank over GF(2) with rows as Python integers."""
    rows = [int("".join(str(int(b)) for b in r[::-1]), 2) if len(r) else 0 for r in np.asarray(dense)]
    rank = 0
    while rows:
        pivot = rows.pop()
        if pivot == 0:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
    return rank
