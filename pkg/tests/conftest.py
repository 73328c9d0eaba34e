import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from ncformal.ncpoly import CommPoly, NCPoly

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_int = st.integers(min_value=-3, max_value=3)


@st.composite
def ncpolys(draw, d=2, max_degree=3, max_terms=4):
    words = st.lists(st.integers(1, d), max_size=max_degree).map(tuple)
    terms = draw(st.lists(st.tuples(words, small_int), max_size=max_terms))
    return NCPoly(d, terms)


@st.composite
def commpolys(draw, d=2, max_degree=3, max_terms=4):
    exps = st.lists(st.integers(0, max_degree), min_size=d, max_size=d).map(tuple)
    terms = draw(st.lists(st.tuples(exps, small_int), max_size=max_terms))
    return CommPoly(d, terms)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
