from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cobordism_classes.coeff_ring import CoeffPoly

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
bmonomials = st.lists(st.integers(0, 2), min_size=0, max_size=3).map(tuple)


@st.composite
def coeff_polys(draw, max_terms: int = 4) -> CoeffPoly:
    terms = draw(st.dictionaries(bmonomials, small_fractions, max_size=max_terms))
    return CoeffPoly(terms)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
