import pytest
from hypothesis import strategies as st

from nestcan.ncf import LayeredForm
from nestcan.truthtable import TruthTable, make_truth_table

F1 = "11111011"
F2 = "00101111"

_acceptance = []


@pytest.fixture
def f1():
    return make_truth_table(3, F1)


@pytest.fixture
def f2():
    return make_truth_table(3, F2)


def tables(min_n=0, max_n=4):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.integers(0, (1 << (1 << n)) - 1).map(lambda m: TruthTable(n, m)))


@st.composite
def layered_forms(draw, min_n=2, max_n=8):
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(1, n + 1)))
    if n == 1:
        cuts = []
    else:
        # cut points between layers; the last layer keeps at least two variables
        cuts = sorted(draw(st.sets(st.integers(1, n - 2), max_size=n - 2))) if n > 2 else []
    inputs = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    b = draw(st.integers(0, 1))
    bounds = [0, *cuts, n]
    layers = tuple(
        tuple((order[j], inputs[j]) for j in range(lo, hi)) for lo, hi in zip(bounds, bounds[1:]))
    return LayeredForm(b, layers)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
