import itertools
import random

import pytest

from conftest import brute_determinant, brute_span
from isotropica.errors import (
    BudgetExceededError,
    EmptyWedgeError,
    NotDecomposableError,
)
from isotropica.exactfield import GF, QQ, Matrix
from isotropica.grassmann import (
    Flag,
    coordinate_flag,
    coordinate_subspace,
    enumerate_grassmannian,
    gaussian_binomial,
    gaussian_binomial_poly,
    grassmann_relations_residual,
    grassmannian_degree_report,
    meets_at_least,
    pluecker_of,
    pluecker_point,
    random_subspace,
    random_subspace_pair,
    schubert_degree_report,
    schubert_formula_dim,
    schubert_membership,
    special_schubert_degree_report,
    special_schubert_dimension,
    subspace_from_rows,
    subspace_of_pluecker,
)
from isotropica import polyfit


# --- subspace canonical form ---


def test_subspace_canonicalization(f5):
    u = subspace_from_rows(f5, 3, [[2, 0, 2], [1, 1, 0], [0, 0, 0]])
    assert u.dim == 2
    assert u.basis.entries == ((1, 0, 1), (0, 1, 4))
    same = subspace_from_rows(f5, 3, [[1, 2, 4], [0, 3, 2]])  # combinations of u's basis
    assert same == u  # equality is bitwise on the canonical basis


def test_subspace_invariant_rejects_non_rref(f2):
    bad = Matrix.from_rows(f2, [[1, 1], [0, 1]])  # pivot column not cleared
    with pytest.raises(ValueError):
        from isotropica.grassmann import Subspace

        Subspace(2, 2, bad, f2)


def test_intersection_and_containment(f3):
    a = subspace_from_rows(f3, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    b = subspace_from_rows(f3, 4, [[0, 1, 0, 0], [0, 0, 1, 0]])
    assert a.intersection_dim(b) == 1
    whole = subspace_from_rows(f3, 4, Matrix.identity(f3, 4).entries)
    assert whole.contains(a) and not a.contains(whole)


# --- wedge coordinates ---


def test_pluecker_coordinate_subspace(f5):
    u = coordinate_subspace(f5, 4, [0, 1])
    p = pluecker_of(u)
    cmap = p.coord_map()
    assert cmap[(1, 2)] == 1
    assert all(v == 0 for idx, v in cmap.items() if idx != (1, 2))


def test_pluecker_minors_against_brute_determinant(f7):
    # all six 2x2 minors of [[1,0,2,3],[0,1,4,5]] over GF(7), frozen from the
    # permutation-expansion oracle: p34 = 2*5 - 3*4 = -2 = 5 mod 7 etc.
    rows = [[1, 0, 2, 3], [0, 1, 4, 5]]
    u = subspace_from_rows(f7, 4, rows)
    p = pluecker_of(u)
    cmap = p.coord_map()
    expected = {}
    for idx in itertools.combinations(range(4), 2):
        sub = [[f7.of(rows[i][c]) for c in idx] for i in range(2)]
        expected[tuple(i + 1 for i in idx)] = brute_determinant(sub, f7)
    assert cmap == expected
    assert cmap == {(1, 2): 1, (1, 3): 4, (1, 4): 5, (2, 3): 5, (2, 4): 4, (3, 4): 5}


def test_pluecker_line_coords_are_entries(f5):
    u = subspace_from_rows(f5, 4, [[0, 1, 2, 3]])
    cmap = pluecker_of(u).coord_map()
    assert [cmap[(i,)] for i in range(1, 5)] == [0, 1, 2, 3]


def test_pluecker_of_zero_dim_is_an_error(f5):
    with pytest.raises(EmptyWedgeError):
        pluecker_of(subspace_from_rows(f5, 3, []))


def test_relations_vanish_on_wedge_points(f3):
    rng = random.Random("relations")
    for _ in range(20):
        u = random_subspace(f3, 5, rng.randrange(1, 4), rng)
        res = grassmann_relations_residual(pluecker_of(u))
        assert all(x == 0 for x in res)


def test_relations_reject_non_decomposable_point(f2):
    # p12 = p34 = 1, rest 0: the single quadratic p12 p34 - p13 p24 + p14 p23
    # evaluates to 1, so some residual is nonzero and recovery must refuse
    p = pluecker_point(f2, 4, 2, {(1, 2): 1, (3, 4): 1})
    res = grassmann_relations_residual(p)
    assert any(x != 0 for x in res)
    with pytest.raises(NotDecomposableError):
        subspace_of_pluecker(p)


def test_relations_trivial_for_lines(f3):
    p = pluecker_point(f3, 4, 1, {(2,): 1, (4,): 2})
    assert all(x == 0 for x in grassmann_relations_residual(p))


def test_recovery_entry_formula(f7):
    # basis entry (1,3): a_13 = -p23/p12 = -5 = 2 mod 7
    u = subspace_from_rows(f7, 4, [[1, 0, 2, 3], [0, 1, 4, 5]])
    p = pluecker_of(u)
    back = subspace_of_pluecker(p)
    assert back == u
    assert back.basis.entries[0][2] == 2


def test_recovery_with_nontrivial_pivot_tuple(f5):
    # first nonzero coordinate is not (1,..,k): exercises the relabeled recovery
    u = subspace_from_rows(f5, 4, [[0, 1, 0, 2], [0, 0, 1, 3]])
    assert subspace_of_pluecker(pluecker_of(u)) == u


def test_roundtrip_all_of_g24_f2(f2):
    seen = set()
    for u in enumerate_grassmannian(4, 2, f2):
        assert subspace_of_pluecker(pluecker_of(u)) == u
        seen.add(u)
    assert len(seen) == 35  # [4 2]_2 = 15*7/3


def test_roundtrip_over_rationals():
    rng = random.Random("q-roundtrip")
    for _ in range(10):
        u = random_subspace(QQ, 5, 2, rng)
        assert subspace_of_pluecker(pluecker_of(u)) == u


# --- enumeration ---


def test_enumeration_counts_match_examples(f2, f3, f5):
    assert sum(1 for _ in enumerate_grassmannian(4, 2, f2)) == 35
    assert sum(1 for _ in enumerate_grassmannian(3, 3, f5)) == 1
    assert sum(1 for _ in enumerate_grassmannian(3, 1, f3)) == 13  # (27-1)/2


def test_enumeration_counts_equal_gaussian_binomial():
    for q in (2, 3):
        field = GF(q)
        for n in range(0, 7):
            for k in range(0, n + 1):
                got = sum(1 for _ in enumerate_grassmannian(n, k, field))
                assert got == gaussian_binomial(n, k, q), (n, k, q)


def test_enumeration_is_duplicate_free(f3):
    subs = list(enumerate_grassmannian(4, 2, f3))
    assert len(set(subs)) == len(subs) == 130


def test_enumeration_budget_refusal(f5):
    with pytest.raises(BudgetExceededError) as exc:
        list(enumerate_grassmannian(8, 4, f5, budget=1000))
    assert exc.value.projected == gaussian_binomial(8, 4, 5)


def test_gaussian_binomial_poly_degree():
    for n in range(1, 7):
        for k in range(0, n + 1):
            assert polyfit.poly_degree(gaussian_binomial_poly(n, k)) == k * (n - k)


# --- flags, Schubert conditions ---


def test_flag_validation(f2):
    v1 = coordinate_subspace(f2, 4, [0])
    v2 = coordinate_subspace(f2, 4, [0, 1, 2])
    Flag((v1, v2))
    with pytest.raises(ValueError):
        Flag((v2, v1))  # not increasing
    w = coordinate_subspace(f2, 4, [1])
    with pytest.raises(ValueError):
        Flag((v1, w))  # same dims, no containment


def test_schubert_membership_examples(f3):
    v1 = coordinate_subspace(f3, 4, [0])
    v2 = coordinate_subspace(f3, 4, [0, 1, 2])
    flag = Flag((v1, v2))
    u_in = subspace_from_rows(f3, 4, [[1, 0, 0, 0], [0, 0, 1, 0]])
    u_out = subspace_from_rows(f3, 4, [[0, 1, 0, 0], [0, 0, 0, 1]])
    assert schubert_membership(u_in, flag)
    assert not schubert_membership(u_out, flag)


def test_schubert_full_flag_is_vacuous(f2):
    # V_i = span(e_1..e_{n-k+i}) makes every condition trivial
    n, k = 4, 2
    flag = coordinate_flag(f2, n, [n - k + i for i in range(1, k + 1)])
    assert all(schubert_membership(u, flag) for u in enumerate_grassmannian(n, k, f2))


def test_schubert_membership_monotone_under_refinement(f2):
    # shrinking a flag member never turns false into true
    flag_big = coordinate_flag(f2, 4, [2, 4])
    flag_small = coordinate_flag(f2, 4, [1, 4])
    for u in enumerate_grassmannian(4, 2, f2):
        if not schubert_membership(u, flag_big):
            assert not schubert_membership(u, flag_small)


def test_schubert_formula_values():
    assert schubert_formula_dim([1, 3]) == 1
    assert schubert_formula_dim([3, 4]) == 4  # the whole of G(2,4)


def test_schubert_degree_small_cell(f2):
    # members of the (1,3) cell in G(2,4) are the planes through e_1 inside
    # span(e_1..e_3): q+1 of them, so counts 3/4/6 at q=2/3/5 and degree 1
    flag = coordinate_flag(f2, 4, [1, 3])
    rep = schubert_degree_report(flag)
    assert rep["counts"] == {2: 3, 3: 4, 5: 6}
    assert rep["formula_dim"] == rep["counted_degree"] == 1


def test_schubert_degree_full_cell(f2):
    flag = coordinate_flag(f2, 4, [3, 4])
    rep = schubert_degree_report(flag)
    assert rep["formula_dim"] == rep["counted_degree"] == 4
    assert rep["counts"][2] == 35  # vacuous conditions: all of G(2,4)


def test_schubert_general_flag_matches_coordinate_flag(f3):
    # a non-coordinate flag with the same dims gives the same count at its own prime
    v1 = subspace_from_rows(f3, 4, [[1, 2, 0, 1]])
    v2 = subspace_from_rows(f3, 4, [[1, 2, 0, 1], [0, 1, 1, 1], [0, 0, 1, 2]])
    rep = schubert_degree_report(Flag((v1, v2)))
    coord = schubert_degree_report(coordinate_flag(f3, 4, [1, 3]))
    assert rep["counts"] == coord["counts"]


# --- the loci {U' : dim(U cap U') >= s} ---


def test_special_schubert_dimension_values():
    assert special_schubert_dimension(4, 2, 0) == 4  # everything
    assert special_schubert_dimension(4, 2, 1) == 3
    assert special_schubert_dimension(4, 2, 2) == 0  # the single point U
    with pytest.raises(ValueError):
        special_schubert_dimension(4, 2, 3)
    with pytest.raises(ValueError):
        special_schubert_dimension(4, 3, 0)  # s0 = 2k - n = 2


def test_meets_at_least_and_nesting(f2):
    u = coordinate_subspace(f2, 4, [0, 1])
    members = {s: set() for s in (0, 1, 2)}
    for v in enumerate_grassmannian(4, 2, f2):
        for s in (0, 1, 2):
            if meets_at_least(v, u, s):
                members[s].add(v)
    assert members[2] == {u}
    assert members[1] < members[0]
    assert members[2] < members[1]
    # G_1 count: 35 total minus 2^4 complements of U = 19
    assert len(members[0]) == 35
    assert len(members[1]) == 19


def test_special_schubert_degree_report(f2):
    for s in (0, 1, 2):
        rep = special_schubert_degree_report(4, 2, s)
        assert rep["counted_degree"] == rep["formula_dim"], s


# --- point-count degree of G(k,n) itself ---


def test_grassmannian_degree_reports():
    for n, k in ((3, 1), (4, 2), (5, 2)):
        rep = grassmannian_degree_report(n, k)
        assert rep["degree"] == k * (n - k)
    # where the cap is small enough, blind interpolation agrees
    counts = {}
    for q in (2, 3, 5, 7, 11):
        counts[q] = gaussian_binomial(4, 2, q)
    assert polyfit.fitted_degree(counts, 4) == 4


def test_random_subspace_pair_hits_exact_intersection(f3):
    rng = random.Random("pairs")
    for (n, k, s) in ((4, 2, 1), (5, 3, 2), (6, 3, 0), (4, 3, 2)):
        u, v = random_subspace_pair(f3, n, k, s, rng)
        assert u.dim == v.dim == k
        assert u.intersection_dim(v) == s


def test_subspace_json_roundtrip(f7):
    from isotropica.grassmann import Subspace

    u = subspace_from_rows(f7, 4, [[1, 0, 2, 3], [0, 1, 4, 5]])
    assert Subspace.from_json(u.to_json()) == u
    p = pluecker_of(u)
    from isotropica.grassmann import PlueckerPoint

    assert PlueckerPoint.from_json(p.to_json()) == p


def test_pluecker_span_agrees_with_brute_force(f2):
    # canonical RREF rows span the same set as the original rows
    rows = [[1, 1, 0, 1], [0, 1, 1, 0]]
    u = subspace_from_rows(f2, 4, rows)
    assert brute_span([list(r) for r in u.basis.entries], 2) == brute_span(rows, 2)
