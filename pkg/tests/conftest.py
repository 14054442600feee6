import sys
from itertools import product

import pytest
from hypothesis import strategies as st

from newtonnumber.core import SupportSet, build_polyhedron

EXAMPLE_SUPPORT = [(6, 0, 0), (0, 6, 0), (2, 0, 1), (0, 2, 1), (0, 0, 4)]


@pytest.fixture
def example_support():
    return SupportSet.of(EXAMPLE_SUPPORT)


def fermat(a, b, c):
    return SupportSet.of([(a, 0, 0), (0, b, 0), (0, 0, c)])


@st.composite
def convenient_supports(draw, max_intercept=7, max_extra=5):
    m = [draw(st.integers(1, max_intercept)) for _ in range(3)]
    pts = [(m[0], 0, 0), (0, m[1], 0), (0, 0, m[2])]
    coord = [st.integers(0, mi) for mi in m]
    pts += draw(st.lists(st.tuples(*coord), max_size=max_extra))
    return SupportSet.of(pts)


def points_under(support):
    poly = build_polyhedron(support)
    ranges = [range(m + 1) for m in poly.axis_intercepts]
    return [p for p in product(*ranges) if not poly.contains(p)]


@st.composite
def support_and_point(draw, max_intercept=7, max_extra=5):
    """A convenient support together with a lattice point under it."""
    support = draw(convenient_supports(max_intercept, max_extra).filter(lambda s: (0, 0, 0) not in s))
    under = points_under(support)
    return support, draw(st.sampled_from(under))


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
