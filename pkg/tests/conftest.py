import re

import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def small_sets(max_size=10, lo=-30, hi=30):
    return st.lists(st.integers(lo, hi), max_size=max_size)


def level_view(level):
    """Values and distances of a level in the notation used by the worked examples."""
    pts = [(p.start, p.end, p.distance) for p in level.points()]
    return list(level.head), pts


_POINT = re.compile(r"\((-?\d+),\s*(-?\d+)\)_(\d+)")


def parse_listing(text):
    """``"0, 1, 2, 3, (3, 4)_1, ..."`` into the head values and (start, end, distance) triples."""
    pts = [tuple(map(int, m.groups())) for m in _POINT.finditer(text)]
    head_part = _POINT.split(text)[0]
    head = [int(x) for x in head_part.replace(",", " ").split()]
    return head, pts


@pytest.fixture
def worked_formula():
    from senav.satbridge import CnfFormula

    return CnfFormula(4, [[1, -2, 3], [-1, 2, -4], [2, -3, 4], [-1, 3, -4]])


# (name, passed, detail) per acceptance criterion, printed after the run
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE:
        line = f"{'PASS' if passed else 'FAIL'}  {name}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
