from fractions import Fraction

import pytest
from hypothesis import strategies as st

from theta_cert.bigpoly import BiPoly

# Grouped (unexpanded) forms typed independently of the data files; an
# independent path to each embedded table (evaluated by eval, never expanded).
PRINTED = {
    ("pow2", 2): "2*X - Y**2 - 1",
    ("pow2", 4): "4*X - (1+Y)**2",
    ("pow2", 8): "64*X**2 - 16*(1+Y)**2*X + (1-Y)**4",
    ("pow2", 16): "65536*X**4 - 16384*(1+Y)**2*X**3 + 512*(3*Y**4+4*Y**3+18*Y**2+4*Y+3)*X**2"
    " - 64*(1+Y)**2*(Y**4+28*Y**3+6*Y**2+28*Y+1)*X + (1-Y)**8",
    ("odd", 3): "9 - (Y**2-16*Y+28)*X + 30*X**2 - 12*X**3 + X**4",
    ("odd", 5): "25 - (126 - 832*Y + 308*Y**2 - 32*Y**3 + Y**4)*X + (255 + 1920*Y - 120*Y**2)*X**2"
    " + (-260 + 320*Y - 20*Y**2)*X**3 + 135*X**4 - 30*X**5 + X**6",
}


def eval_printed(key, x, y):
    return eval(PRINTED[key], {"X": x, "Y": y})


def random_poly(draw, max_dx=4, max_dy=4, coeff=9, allow_zero=True):
    terms = draw(
        st.dictionaries(
            st.tuples(st.integers(0, max_dx), st.integers(0, max_dy)),
            st.integers(-coeff, coeff),
            max_size=8,
        )
    )
    p = BiPoly(terms)
    if not allow_zero and p.is_zero:
        p = BiPoly({(0, 0): 1})
    return p


@st.composite
def bipolys(draw, max_dx=4, max_dy=4, coeff=9, allow_zero=True):
    return random_poly(draw, max_dx, max_dy, coeff, allow_zero)


ratios = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@pytest.fixture
def p3():
    from theta_cert.modular_tables import get_poly

    return get_poly("odd", 3).poly


@pytest.fixture
def half():
    return Fraction(1, 2)


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid and rep.when == "call":
                name = nodeid.split("::")[-1][len("test_criterion_"):]
                num, _, label = name.partition("_")
                rows.append((int(num), label, outcome, rep.duration))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, label, outcome, dur in sorted(rows):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status}  {label}  ({dur:.2f} s)")
