import random
import sys

import pytest
from hypothesis import strategies as st

from semibuchi.poly import EDGE, INF, AbsorptivePoly, Indeterminate, Monomial

VARS = [Indeterminate(EDGE, k) for k in "abcd"]
EXPONENTS = st.sampled_from([0, 1, 2, 3, INF])


def monomials(variables=VARS):
    return st.lists(EXPONENTS, min_size=len(variables), max_size=len(variables)).map(
        lambda es: Monomial(dict(zip(variables, es))))


def polys(variables=VARS, max_size=4, dual=False, posbool=False):
    return st.lists(monomials(variables), max_size=max_size).map(
        lambda ms: AbsorptivePoly(ms, dual=dual, posbool=posbool))


DUAL_VARS = VARS[:2] + [x.dual for x in VARS[:2]]


def random_poly(rng: random.Random, variables=VARS, max_size=3, dual=False, posbool=False):
    ms = []
    for _ in range(rng.randint(0, max_size)):
        ms.append(Monomial({x: rng.choice([0, 0, 1, 2, INF]) for x in variables}))
    return AbsorptivePoly(ms, dual=dual, posbool=posbool)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
