import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_solutions
from isotropica.errors import DimensionMismatchError
from isotropica.exactfield import (
    GF,
    QQ,
    FieldSpec,
    Matrix,
    kernel_basis,
    rank_of_stack,
    rref,
)


def test_field_spec_validation():
    GF(2)
    GF(97)
    with pytest.raises(ValueError):
        GF(1)
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(101)  # capped to keep exhaustive searches tractable
    with pytest.raises(ValueError):
        FieldSpec("rational", 5)
    with pytest.raises(ValueError):
        FieldSpec("real")


def test_canonical_entries():
    m = Matrix.from_rows(GF(5), [[7, -1], [10, 3]])
    assert m.entries == ((2, 4), (0, 3))
    q = Matrix.from_rows(QQ, [[Fraction(2, 4), 3]])
    assert q.entries == ((Fraction(1, 2), Fraction(3)),)


def test_rref_identity_f5(f5):
    m = Matrix.identity(f5, 3)
    r = rref(m)
    assert r.matrix == m
    assert r.pivot_columns == (0, 1, 2)
    assert r.rank == 3


def test_rref_zero_f2(f2):
    m = Matrix.zeros(f2, 2, 4)
    r = rref(m)
    assert r.matrix == m
    assert r.pivot_columns == ()
    assert r.rank == 0


def test_rref_already_reduced_f7(f7):
    # hand Gaussian elimination: already in reduced form
    m = Matrix.from_rows(f7, [[1, 0, 2, 3], [0, 1, 4, 5]])
    r = rref(m)
    assert r.matrix == m
    assert r.pivot_columns == (0, 1)
    assert r.rank == 2


def test_kernel_identity_has_no_rows(f5):
    assert kernel_basis(Matrix.identity(f5, 4)).rows == 0


def test_kernel_zero_map_is_everything(f3):
    k = kernel_basis(Matrix.zeros(f3, 2, 3))
    assert k.rows == 3
    assert rref(k).rank == 3


def test_kernel_sum_constraint_f2(f2):
    # x + y = 0 over GF(2): solutions {(0,0), (1,1)} by enumeration
    m = Matrix.from_rows(f2, [[1, 1]])
    k = kernel_basis(m)
    assert k.entries == ((1, 1),)
    assert sorted(brute_solutions([[1, 1]], 2, 2)) == [(0, 0), (1, 1)]


def test_rank_of_stack_examples(f2):
    ident = Matrix.identity(f2, 2)
    assert rank_of_stack([ident, ident]) == 2
    assert rank_of_stack([], cols=5) == 0
    a = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    b = Matrix.from_rows(QQ, [[0, 1]])
    assert rank_of_stack([a, b]) == 2


def test_rank_of_stack_mismatch(f2, f3):
    a = Matrix.identity(f2, 2)
    b = Matrix.zeros(f2, 1, 3)
    with pytest.raises(DimensionMismatchError):
        rank_of_stack([a, b])


def _random_matrix(field, rng, max_dim=8):
    rows = rng.randrange(0, max_dim + 1)
    cols = rng.randrange(0, max_dim + 1)
    if field.kind == "prime":
        data = [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)]
    else:
        data = [[rng.randrange(-9, 10) for _ in range(cols)] for _ in range(rows)]
    return Matrix(rows, cols, tuple(tuple(field.of(x) for x in r) for r in data), field)


def test_random_corpus_invariants():
    # >= 1000 random matrices over GF(2), GF(3), GF(7), dims <= 8x8:
    # rref is idempotent, rank is transpose-invariant, kernel rows annihilate
    rng = random.Random("exactfield-corpus")
    fields = [GF(2), GF(3), GF(7)]
    for case in range(1002):
        field = fields[case % 3]
        m = _random_matrix(field, rng)
        red, pivots, rk = rref(m)
        again = rref(red)
        assert again.matrix == red
        assert again.pivot_columns == pivots
        assert rref(m.transpose()).rank == rk
        assert list(pivots) == sorted(pivots)
        ker = kernel_basis(m)
        assert ker.rows == m.cols - rk
        for v in ker.entries:
            assert all(x == 0 for x in m.matvec(v))


def test_kernel_size_matches_enumeration():
    # #solutions of m x = 0 equals p^(cols - rank), checked exhaustively
    rng = random.Random("kernel-count")
    for p in (2, 3):
        field = GF(p)
        for _ in range(25):
            rows = rng.randrange(0, 4)
            cols = rng.randrange(1, 5)
            data = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
            m = Matrix.from_rows(field, data) if rows else Matrix(0, cols, (), field)
            rk = rref(m).rank
            sols = brute_solutions(data, cols, p)
            assert len(sols) == p ** (cols - rk)
            assert kernel_basis(m).rows == cols - rk


@given(st.data())
@settings(max_examples=120, deadline=None)
def test_rref_idempotent_property(data):
    p = data.draw(st.sampled_from([2, 3, 7]))
    field = GF(p)
    rows = data.draw(st.integers(0, 6))
    cols = data.draw(st.integers(0, 6))
    grid = data.draw(
        st.lists(
            st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    m = Matrix(rows, cols, tuple(tuple(x for x in r) for r in grid), field)
    red = rref(m).matrix
    assert rref(red).matrix == red


@given(st.data())
@settings(max_examples=120, deadline=None)
def test_rational_rank_transpose_property(data):
    rows = data.draw(st.integers(0, 5))
    cols = data.draw(st.integers(0, 5))
    grid = data.draw(
        st.lists(
            st.lists(st.fractions(max_denominator=6), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    m = Matrix(rows, cols, tuple(tuple(Fraction(x) for x in r) for r in grid), QQ)
    assert rref(m).rank == rref(m.transpose()).rank
