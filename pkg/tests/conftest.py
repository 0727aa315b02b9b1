import random
import sys

import pytest
from hypothesis import strategies as st

from clusterfd.exchange import ExchangeMatrix
from clusterfd.polynomial import LaurentPoly

VARS3 = ("x1", "x2", "y1")


@st.composite
def laurent_polys(draw, variables=VARS3, max_terms=4, lo=-2, hi=3, allow_zero=True):
    n = len(variables)
    k = draw(st.integers(0 if allow_zero else 1, max_terms))
    terms = {}
    for _ in range(k):
        e = tuple(draw(st.integers(lo, hi)) for _ in range(n))
        terms[e] = terms.get(e, 0) + draw(st.integers(-5, 5).filter(bool))
    p = LaurentPoly(variables, terms)
    if not allow_zero and p.is_zero():
        p = LaurentPoly.monomial(variables, (0,) * n, 1)
    return p


def random_skew_symmetrizable(rng: random.Random, n: int, max_entry: int = 3) -> ExchangeMatrix:
    """Random ``B = S D``-style matrix: skew-symmetric part scaled by a random diagonal."""
    d = [rng.choice((1, 1, 2, 3)) for _ in range(n)]
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            s = rng.randint(-max_entry, max_entry)
            # d_i b_ij = -d_j b_ji with b_ij = s d_j, b_ji = -s d_i
            b[i][j], b[j][i] = s * d[j], -s * d[i]
    return ExchangeMatrix(b)


@pytest.fixture
def rng():
    return random.Random(20241015)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
