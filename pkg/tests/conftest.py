"""Shared independent oracles for the test suite.

These deliberately avoid the library's own linear algebra: determinants by
permutation expansion, solution counting by exhaustive enumeration, and
membership checks by brute force. Expected values frozen in the tests were
computed with these.
"""

import itertools
from fractions import Fraction

import pytest


def brute_determinant(rows, field):
    "Permutation-expansion determinant; independent of the library's elimination."
    k = len(rows)
    total = field.zero()
    for perm in itertools.permutations(range(k)):
        inversions = sum(
            1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b]
        )
        term = field.one()
        for i in range(k):
            term = field.mul(term, rows[i][perm[i]])
        total = field.add(total, term) if inversions % 2 == 0 else field.sub(total, term)
    return total


def brute_solutions(matrix_rows, ncols, p):
    "All x in GF(p)^ncols with M x = 0, by exhaustive enumeration."
    sols = []
    for x in itertools.product(range(p), repeat=ncols):
        if all(sum(r[i] * x[i] for i in range(ncols)) % p == 0 for r in matrix_rows):
            sols.append(x)
    return sols


def brute_span(rows, p):
    "All vectors in the row span over GF(p), by enumerating coefficient tuples."
    n = len(rows[0]) if rows else 0
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coeffs, rows):
            if c:
                v = [(a + c * b) % p for a, b in zip(v, r)]
        out.add(tuple(v))
    return out


@pytest.fixture
def f2():
    from isotropica.exactfield import GF

    return GF(2)


@pytest.fixture
def f3():
    from isotropica.exactfield import GF

    return GF(3)


@pytest.fixture
def f5():
    from isotropica.exactfield import GF

    return GF(5)


@pytest.fixture
def f7():
    from isotropica.exactfield import GF

    return GF(7)
