from __future__ import annotations

import os

from hypothesis import HealthCheck, settings, strategies as st

from qlie.scalar import Scalar

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("QLIE_HYPOTHESIS", "default"))

small_int = st.integers(min_value=-6, max_value=6)


@st.composite
def laurent(draw, max_terms=4, max_exp=6):
    """Nonzero-or-zero Laurent polynomial in s, as a Scalar."""
    terms = draw(st.dictionaries(st.integers(-max_exp, max_exp), small_int, max_size=max_terms))
    return Scalar.laurent({e: c for e, c in terms.items() if c})


@st.composite
def scalars(draw):
    num = draw(laurent())
    den = draw(laurent().filter(bool))
    return num / den


nonzero_scalars = scalars().filter(bool)


# one verdict line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: dict = {}


def record_acceptance(number: int, passed: bool, text: str) -> str:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} -- {text}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
