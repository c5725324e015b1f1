import pytest
from hypothesis import settings, strategies as st

from d4kit.gint import GaussianInt
from d4kit.gpoly import GPoly
from d4kit.polytext import poly_parse

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


def gints(bound: int = 50):
    part = st.integers(-bound, bound)
    return st.builds(GaussianInt, part, part)


def polys(max_deg: int = 6, bound: int = 50):
    return st.lists(gints(bound), max_size=max_deg + 1).map(GPoly)


def nonzero_polys(max_deg: int = 6, bound: int = 50):
    return polys(max_deg, bound).filter(bool)


def P(text: str) -> GPoly:
    return poly_parse(text)


# the D(4)-triple {2i, -2iX^2-4iX, 2iX^2+4iX+4i}
PAPER_TRIPLE = ("2i", "-2iX^2-4iX", "2iX^2+4iX+4i")
# the chain X, X+4, 4X+8 obtained from the pair family with p = X, q = 1
DERIVED_TRIPLE = ("X", "X+4", "4X+8")


@pytest.fixture
def paper_triple():
    return tuple(P(t) for t in PAPER_TRIPLE)


@pytest.fixture
def derived_triple():
    return tuple(P(t) for t in DERIVED_TRIPLE)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(VERDICTS):
        terminalreporter.write_line(VERDICTS[n])
