from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from halphen.algebra import P1_VARS, P3_VARS, parse_poly
from halphen.corpus import load_entry
from halphen.geometry import CompleteIntersection, RationalCurve

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def p3(text):
    return parse_poly(text, P3_VARS)


def p1(text):
    return parse_poly(text, P1_VARS)


def rational(*comps):
    return RationalCurve(tuple(p1(c) for c in comps))


@pytest.fixture(scope="session")
def twisted_cubic():
    return rational("u^3", "u^2*v", "u*v^2", "v^3")


@pytest.fixture(scope="session")
def cubic_ci():
    return CompleteIntersection(p3("y^2 - z*x"), p3("y*z - x*t"), 3)


@pytest.fixture(scope="session")
def viviani():
    return CompleteIntersection(p3("x^2+y^2+z^2-t^2"), p3("x^2-x*t+y^2"))


@pytest.fixture(scope="session")
def e6_ci():
    return CompleteIntersection(p3("x^2*z+t*z^2+y^3"), p3("x^2+y^2+z^2-2*z*t"))


@pytest.fixture(scope="session")
def entries():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_entry(name)
        return cache[name]

    return get


def cubic_point(a, b=1):
    a, b = Fraction(a), Fraction(b)
    return (a**3, a * a * b, a * b * b, b**3)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = {}


def record_acceptance(number, ok, detail):
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
