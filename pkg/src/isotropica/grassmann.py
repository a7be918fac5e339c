"""Subspaces of F^n as first-class values.

Canonical reduced-row-echelon bases (so subspace equality is tuple equality),
exhaustive enumeration of G(k, n) over small prime fields, the wedge-minor
embedding and its inverse, Schubert-style membership predicates, and
point-count degree checks for the classical dimension formulas
dim G(k, n) = k(n-k), dim W(V_1..V_k) = sum(a_i - i) and
dim {U' : dim(U cap U') >= s} = (k-s)(n-k+s).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import polyfit
from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    EmptyWedgeError,
    FormulaViolationError,
    NotDecomposableError,
)
from .exactfield import (
    FieldSpec,
    Matrix,
    kernel_basis,
    rank_mod,
    rank_of_stack,
    rref,
    scalar_from_json,
    scalar_to_json,
    stack,
)

DEFAULT_BUDGET = 10_000_000


def enumeration_budget(budget: int | None = None) -> int:
    "Explicit argument wins, then the ISOTROPICA_BUDGET env var, then the default."
    if budget is not None:
        return budget
    env = os.environ.get("ISOTROPICA_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# Subspaces


def _check_rref_basis(m: Matrix) -> None:
    "Exact structural check: unit pivots strictly increasing, pivot columns cleared, no zero rows."
    last = -1
    pivots = []
    for i, row in enumerate(m.entries):
        lead = next((c for c, x in enumerate(row) if x != 0), None)
        if lead is None:
            raise ValueError(f"basis row {i} is zero; rank below stated dimension")
        if lead <= last:
            raise ValueError("pivot columns are not strictly increasing")
        if row[lead] != m.field.one():
            raise ValueError("pivot entry is not 1")
        last = lead
        pivots.append(lead)
    for i, pc in enumerate(pivots):
        for j in range(m.rows):
            if j != i and m.entries[j][pc] != 0:
                raise ValueError(f"pivot column {pc} is not cleared")


@dataclass(frozen=True)
class Subspace:
    """A k-dimensional subspace of F^n, held as its unique RREF basis."""

    ambient_dim: int
    dim: int
    basis: Matrix
    field: FieldSpec

    def __post_init__(self):
        b = self.basis
        if b.rows != self.dim or b.cols != self.ambient_dim or b.field != self.field:
            raise DimensionMismatchError("basis shape disagrees with stated dimensions")
        _check_rref_basis(b)

    def pivot_columns(self) -> tuple:
        return tuple(
            next(c for c, x in enumerate(row) if x != 0) for row in self.basis.entries
        )

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError("ambient dimensions differ")
        if other.dim > self.dim:
            return False
        return rank_of_stack([self.basis, other.basis]) == self.dim

    def intersection_dim(self, other: "Subspace") -> int:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError("ambient dimensions differ")
        return self.dim + other.dim - rank_of_stack([self.basis, other.basis])

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "field": self.field.to_json(),
            "basis": self.basis.to_json(),
        }

    @staticmethod
    def from_json(d: dict) -> "Subspace":
        field = FieldSpec.from_json(d["field"])
        basis = Matrix.from_json(d["basis"], field)
        return Subspace(d["ambient_dim"], d["dim"], basis, field)


def subspace_from_rows(field: FieldSpec, n: int, rows: Sequence[Sequence]) -> Subspace:
    "Span of the given row vectors, canonicalized; zero rows contribute nothing."
    m = Matrix.from_rows(field, [list(r) for r in rows]) if rows else Matrix(0, n, (), field)
    if m.rows and m.cols != n:
        raise DimensionMismatchError(f"rows have length {m.cols}, ambient is {n}")
    red, pivots, rk = rref(m)
    basis = Matrix(rk, n, red.entries[:rk], field)
    return Subspace(n, rk, basis, field)


def coordinate_subspace(field: FieldSpec, n: int, cols: Sequence[int]) -> Subspace:
    "span(e_{c+1} : c in cols) with 0-based column indices."
    rows = []
    for c in sorted(cols):
        v = [field.zero()] * n
        v[c] = field.one()
        rows.append(v)
    return subspace_from_rows(field, n, rows)


def random_subspace(field: FieldSpec, n: int, k: int, rng) -> Subspace:
    "Uniformly-seeded k-dimensional subspace (resamples until full rank)."
    if k == 0:
        return subspace_from_rows(field, n, [])
    while True:
        if field.kind == "prime":
            rows = [[rng.randrange(field.p) for _ in range(n)] for _ in range(k)]
        else:
            rows = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(k)]
        u = subspace_from_rows(field, n, rows)
        if u.dim == k:
            return u


def random_subspace_pair(field: FieldSpec, n: int, k: int, s: int, rng) -> tuple:
    """Two seeded k-subspaces whose intersection has dimension exactly s
    (requires max(0, 2k - n) <= s <= k). Built by extending a common
    s-subspace independently and resampling until the stack has rank 2k - s."""
    if not (max(0, 2 * k - n) <= s <= k):
        raise ValueError(f"no pair of {k}-subspaces of F^{n} meets in dimension {s}")
    while True:
        core = random_subspace(field, n, s, rng)
        parts = []
        for _ in range(2):
            if field.kind == "prime":
                extra = [[rng.randrange(field.p) for _ in range(n)] for _ in range(k - s)]
            else:
                extra = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(k - s)]
            parts.append(subspace_from_rows(field, n, list(core.basis.entries) + extra))
        u, v = parts
        if u.dim == k and v.dim == k and u.intersection_dim(v) == s:
            return u, v


# ---------------------------------------------------------------------------
# Enumeration of G(k, n) over GF(q)


def gaussian_binomial_poly(n: int, k: int) -> tuple:
    """Integer coefficients (low degree first) of the q-binomial counting the
    k-subspaces of an n-space; degree k(n-k). Recurrence:
    [n k] = [n-1 k-1] + q^k [n-1 k]."""
    if k < 0 or k > n:
        return (0,)
    cache: dict = {}

    def gb(a: int, b: int) -> tuple:
        if b == 0 or b == a:
            return (1,)
        key = (a, b)
        if key in cache:
            return cache[key]
        left = gb(a - 1, b - 1)
        right = gb(a - 1, b)
        out = [0] * max(len(left), len(right) + b)
        for i, c in enumerate(left):
            out[i] += c
        for i, c in enumerate(right):
            out[i + b] += c
        res = tuple(out)
        cache[key] = res
        return res

    return gb(n, k)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    return polyfit.poly_eval(gaussian_binomial_poly(n, k), q)


def rref_matrices(n: int, k: int, q: int) -> Iterator[tuple]:
    """Raw enumeration of all k x n RREF matrices of rank k over GF(q), as
    tuples of row tuples, in lexicographic order of (pivot column set, free
    entries). Internal fast path; enumerate_grassmannian wraps it."""
    if k == 0:
        yield ()
        return
    if k > n:
        return
    for pivots in itertools.combinations(range(n), k):
        pivset = set(pivots)
        base = [[0] * n for _ in range(k)]
        for i, pc in enumerate(pivots):
            base[i][pc] = 1
        free = [
            (i, c)
            for i in range(k)
            for c in range(pivots[i] + 1, n)
            if c not in pivset
        ]
        if not free:
            yield tuple(tuple(r) for r in base)
            continue
        for combo in itertools.product(range(q), repeat=len(free)):
            rows = [r[:] for r in base]
            for (i, c), v in zip(free, combo):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


def enumerate_grassmannian(
    n: int, k: int, field: FieldSpec, budget: int | None = None
) -> Iterator[Subspace]:
    """Yield every k-subspace of GF(q)^n exactly once; total is the Gaussian
    binomial [n k]_q. Refuses upfront if that count exceeds the budget."""
    if field.kind != "prime":
        raise ValueError("enumeration requires a prime field")
    cap = enumeration_budget(budget)
    projected = gaussian_binomial(n, k, field.p)
    if projected > cap:
        raise BudgetExceededError(projected, cap, f"G({k},{n}) over GF({field.p})")
    for rows in rref_matrices(n, k, field.p):
        basis = Matrix(k, n, rows, field)
        yield Subspace(n, k, basis, field)


# ---------------------------------------------------------------------------
# Wedge-minor coordinates


@dataclass(frozen=True)
class PlueckerPoint:
    """Projective coordinates p_{i1..ik} of a k-subspace inside the k-th wedge
    power: the k x k minors of any basis matrix. Index tuples are 1-based and
    strictly increasing; the first nonzero coordinate in lexicographic order
    is scaled to 1."""

    n: int
    k: int
    coords: tuple  # ((idx tuple, value) for every increasing tuple, lex order)
    field: FieldSpec

    def coord_map(self) -> dict:
        return dict(self.coords)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "field": self.field.to_json(),
            "coords": [
                {"idx": list(idx), "val": scalar_to_json(v)}
                for idx, v in self.coords
                if v != 0
            ],
        }

    @staticmethod
    def from_json(d: dict) -> "PlueckerPoint":
        field = FieldSpec.from_json(d["field"])
        mapping = {
            tuple(e["idx"]): scalar_from_json(e["val"], field) for e in d["coords"]
        }
        return pluecker_point(field, d["n"], d["k"], mapping)


def pluecker_point(field: FieldSpec, n: int, k: int, mapping: dict) -> PlueckerPoint:
    "Build a normalized point from a (possibly partial) index->value mapping."
    coords = []
    first = None
    for idx in itertools.combinations(range(1, n + 1), k):
        v = field.of(mapping.get(idx, 0))
        if first is None and v != 0:
            first = v
        coords.append((idx, v))
    if first is None:
        raise ValueError("all coordinates are zero; not a projective point")
    if first != field.one():
        inv = field.inv(first)
        coords = [(idx, field.mul(inv, v)) for idx, v in coords]
    return PlueckerPoint(n, k, tuple(coords), field)


def _det(field: FieldSpec, rows: list) -> object:
    "Determinant by elimination; exact over either field."
    k = len(rows)
    rs = [list(r) for r in rows]
    det = field.one()
    for c in range(k):
        pr = next((i for i in range(c, k) if rs[i][c] != 0), None)
        if pr is None:
            return field.zero()
        if pr != c:
            rs[c], rs[pr] = rs[pr], rs[c]
            det = field.neg(det)
        det = field.mul(det, rs[c][c])
        inv = field.inv(rs[c][c])
        for i in range(c + 1, k):
            if rs[i][c] != 0:
                f = field.mul(rs[i][c], inv)
                rs[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rs[i], rs[c])]
    return det


def pluecker_of(u: Subspace) -> PlueckerPoint:
    """The point with coordinates the k x k minors of the basis matrix. With
    the RREF basis the pivot-column minor is 1, so the result is already in
    normalized scale."""
    if u.dim == 0:
        raise EmptyWedgeError("a 0-dimensional subspace has no wedge point")
    field = u.field
    b = u.basis.entries
    mapping = {}
    for idx in itertools.combinations(range(u.ambient_dim), u.dim):
        sub = [[row[c] for c in idx] for row in b]
        mapping[tuple(i + 1 for i in idx)] = _det(field, sub)
    return pluecker_point(field, u.ambient_dim, u.dim, mapping)


def _signed_coord(field: FieldSpec, cmap: dict, idx: tuple):
    """Coordinate for an arbitrary index tuple: zero on repeats, otherwise the
    sorted coordinate times the sign of the sorting permutation."""
    if len(set(idx)) != len(idx):
        return field.zero()
    inversions = 0
    m = len(idx)
    for a in range(m):
        for b in range(a + 1, m):
            if idx[a] > idx[b]:
                inversions += 1
    v = cmap[tuple(sorted(idx))]
    return v if inversions % 2 == 0 else field.neg(v)


def grassmann_relations_residual(point: PlueckerPoint) -> list:
    """Left sides of the quadratic relations

        sum_{r=1}^{k+1} (-1)^r p_{i_1..i_{k-1} j_r} p_{j_1..^j_r..j_{k+1}}

    over all strictly increasing index tuples i (length k-1) and j (length
    k+1) drawn from 1..n. The composite lookups inside each term are resolved
    by the alternating convention (zero on a repeat, otherwise sort and apply
    the permutation sign). All residuals vanish exactly when the point is the
    wedge of a subspace."""
    field = point.field
    n, k = point.n, point.k
    cmap = point.coord_map()
    residuals = []
    for i_tup in itertools.combinations(range(1, n + 1), k - 1):
        for j_tup in itertools.combinations(range(1, n + 1), k + 1):
            total = field.zero()
            for r in range(1, k + 2):
                jr = j_tup[r - 1]
                a = _signed_coord(field, cmap, i_tup + (jr,))
                if a == 0:
                    continue
                b = _signed_coord(field, cmap, j_tup[: r - 1] + j_tup[r:])
                if b == 0:
                    continue
                term = field.mul(a, b)
                total = field.sub(total, term) if r % 2 else field.add(total, term)
            residuals.append(total)
    return residuals


def subspace_of_pluecker(point: PlueckerPoint) -> Subspace:
    """The unique subspace whose wedge point this is. The lexicographically
    smallest nonzero coordinate marks the pivot columns T; basis row i is
    e_{T_i} plus, at each non-pivot column r, the entry

        (-1)^(k-i) p_{T_1..^T_i..T_k r} / p_T

    (composite index resolved by the alternating convention). Rejects points
    with a nonzero quadratic residual."""
    residuals = grassmann_relations_residual(point)
    if any(x != 0 for x in residuals):
        raise NotDecomposableError("quadratic relations fail; no subspace has these minors")
    field = point.field
    n, k = point.n, point.k
    cmap = point.coord_map()
    pivot = next(idx for idx, v in point.coords if v != 0)
    pv = cmap[pivot]
    inv_pv = field.inv(pv)
    rows = []
    for i, ti in enumerate(pivot, start=1):
        row = [field.zero()] * n
        row[ti - 1] = field.one()
        for r in range(1, n + 1):
            if r in pivot:
                continue
            val = _signed_coord(field, cmap, pivot[: i - 1] + pivot[i:] + (r,))
            if val != 0:
                a = field.mul(val, inv_pv)
                if (k - i) % 2:
                    a = field.neg(a)
                row[r - 1] = a
        rows.append(row)
    return subspace_from_rows(field, n, rows)


# ---------------------------------------------------------------------------
# Flags and Schubert-style conditions


@dataclass(frozen=True)
class Flag:
    "A strictly increasing chain V_1 < V_2 < ... of subspaces of one ambient space."

    subspaces: tuple

    def __post_init__(self):
        subs = self.subspaces
        if not subs:
            raise ValueError("a flag needs at least one subspace")
        amb = subs[0].ambient_dim
        field = subs[0].field
        for v in subs:
            if v.ambient_dim != amb or v.field != field:
                raise DimensionMismatchError("flag members must share ambient space and field")
        for a, b in zip(subs, subs[1:]):
            if not (a.dim < b.dim and b.contains(a)):
                raise ValueError("flag containments must be strict at every step")

    @property
    def ambient_dim(self) -> int:
        return self.subspaces[0].ambient_dim

    @property
    def field(self) -> FieldSpec:
        return self.subspaces[0].field

    def dims(self) -> tuple:
        return tuple(v.dim for v in self.subspaces)

    def is_coordinate(self) -> bool:
        "True when every member is the span of the first dim(V_i) basis vectors."
        for v in self.subspaces:
            ident = Matrix.identity(v.field, v.ambient_dim)
            want = Matrix(v.dim, v.ambient_dim, ident.entries[: v.dim], v.field)
            if v.basis != want:
                return False
        return True


def coordinate_flag(field: FieldSpec, n: int, dims: Sequence[int]) -> Flag:
    "The flag span(e_1..e_{a_1}) < span(e_1..e_{a_2}) < ..."
    return Flag(tuple(coordinate_subspace(field, n, range(a)) for a in dims))


def schubert_membership(u: Subspace, flag: Flag) -> bool:
    "True iff dim(U cap V_i) >= i for every member of the flag."
    if u.ambient_dim != flag.ambient_dim:
        raise DimensionMismatchError("ambient dimensions differ")
    if len(flag.subspaces) != u.dim:
        raise DimensionMismatchError("flag length must equal dim(U)")
    for i, v in enumerate(flag.subspaces, start=1):
        if u.intersection_dim(v) < i:
            return False
    return True


def schubert_formula_dim(dims: Sequence[int]) -> int:
    "sum(a_i - i) for the prescribed intersection pattern."
    return sum(a - i for i, a in enumerate(dims, start=1))


def _rank_tail_cols(rows: tuple, start: int, q: int) -> int:
    "Rank of the submatrix of columns start.. (rows are int tuples)."
    sub = [r[start:] for r in rows if any(r[start:])]
    if not sub:
        return 0
    return rank_mod(sub, q)


def _count_flag_members(k: int, dims: Sequence[int], q: int, budget: int) -> int:
    """Count k-subspaces meeting a coordinate flag with dims (a_1..a_k) in the
    prescribed pattern. Every member lies inside V_{a_k}, so the enumeration
    runs over subspaces of an a_k-space; the conditions for i < k reduce to
    rank bounds on trailing column blocks (dim(U cap span(e_1..e_a)) =
    k - rank of the columns past a)."""
    ak = dims[-1]
    projected = gaussian_binomial(ak, k, q)
    if projected > budget:
        raise BudgetExceededError(projected, budget, f"G({k},{ak}) over GF({q})")
    inner = dims[:-1]
    count = 0
    for rows in rref_matrices(ak, k, q):
        ok = True
        for i, a in enumerate(inner, start=1):
            if k - _rank_tail_cols(rows, a, q) < i:
                ok = False
                break
        if ok:
            count += 1
    return count


def _count_flag_members_general(flag: Flag, k: int, budget: int) -> int:
    "Literal count over all of G(k, n) with the rank-based membership test."
    n = flag.ambient_dim
    field = flag.field
    count = 0
    for u in enumerate_grassmannian(n, k, field, budget):
        if schubert_membership(u, flag):
            count += 1
    return count


def _sample_primes(q_list: Sequence[int] | None, needed: int) -> list:
    "Given primes kept, extended with the smallest absent primes up to `needed`."
    primes = list(dict.fromkeys(q_list or []))
    for p in polyfit.primes_first(needed + len(primes)):
        if len(primes) >= needed:
            break
        if p not in primes:
            primes.append(p)
    return sorted(primes)


def schubert_degree_report(
    flag: Flag, q_list: Sequence[int] | None = None, budget: int | None = None
) -> dict:
    """Compare the formula dimension sum(a_i - i) with the degree of the
    point-count polynomial q -> #{U : dim(U cap V_i) >= i}.

    Counts are taken at enough primes to pin the interpolating polynomial
    under the cap k(a_k - k) (members live inside V_{a_k}, so their number is
    at most the Gaussian binomial [a_k k]_q of that degree). Auxiliary primes
    count against a coordinate flag with the same dimension vector; the
    flag's own prime counts against the flag as given."""
    dims = flag.dims()
    k = len(dims)
    cap_budget = enumeration_budget(budget)
    deg_cap = k * (dims[-1] - k)
    primes = _sample_primes(q_list, deg_cap + 1)
    own_q = flag.field.p if flag.field.kind == "prime" else None
    counts = {}
    for q in primes:
        if q == own_q and not flag.is_coordinate():
            counts[q] = _count_flag_members_general(flag, k, cap_budget)
        else:
            counts[q] = _count_flag_members(k, dims, q, cap_budget)
    degree = polyfit.fitted_degree(counts, deg_cap)
    return {
        "flag_dims": list(dims),
        "formula_dim": schubert_formula_dim(dims),
        "counted_degree": degree,
        "counts": counts,
        "primes": primes,
    }


def schubert_dimension_check(
    flag: Flag, q_list: Sequence[int] | None = None, budget: int | None = None
) -> tuple:
    "Returns (formula_dim, counted_degree) for the flag's intersection pattern."
    rep = schubert_degree_report(flag, q_list, budget)
    return rep["formula_dim"], rep["counted_degree"]


# ---------------------------------------------------------------------------
# The loci G_s = {U' : dim(U cap U') >= s}


def _check_s_range(n: int, k: int, s: int) -> None:
    lo = max(0, 2 * k - n)
    if not (lo <= s <= k):
        raise ValueError(f"s must lie in [{lo}, {k}], got {s}")


def special_schubert_dimension(n: int, k: int, s: int) -> int:
    "(k - s)(n - k + s), the dimension of {U' in G(k,n) : dim(U cap U') >= s}."
    _check_s_range(n, k, s)
    return (k - s) * (n - k + s)


def meets_at_least(u_prime: Subspace, u: Subspace, s: int) -> bool:
    "True iff dim(U cap U') >= s."
    _check_s_range(u.ambient_dim, u.dim, s)
    return u.intersection_dim(u_prime) >= s


def special_schubert_degree_report(
    n: int, k: int, s: int, q_list: Sequence[int] | None = None, budget: int | None = None
) -> dict:
    """Point-count degree of q -> #{U' : dim(U cap U') >= s} against the
    formula (k-s)(n-k+s). U is taken as the coordinate k-subspace at every
    sampled prime; the count depends only on (n, k, s) by a change of basis.
    Cap for the fit is k(n-k)."""
    _check_s_range(n, k, s)
    cap_budget = enumeration_budget(budget)
    deg_cap = k * (n - k)
    primes = _sample_primes(q_list, deg_cap + 1)
    counts = {}
    for q in primes:
        projected = gaussian_binomial(n, k, q)
        if projected > cap_budget:
            raise BudgetExceededError(projected, cap_budget, f"G({k},{n}) over GF({q})")
        # dim(U' cap span(e_1..e_k)) = k - rank of the trailing columns
        count = 0
        for rows in rref_matrices(n, k, q):
            if k - _rank_tail_cols(rows, k, q) >= s:
                count += 1
        counts[q] = count
    degree = polyfit.fitted_degree(counts, deg_cap)
    return {
        "n": n,
        "k": k,
        "s": s,
        "formula_dim": special_schubert_dimension(n, k, s),
        "counted_degree": degree,
        "counts": counts,
        "primes": primes,
    }


# ---------------------------------------------------------------------------
# Point-count degree of the whole Grassmannian


def grassmannian_degree_report(
    n: int, k: int, q_list: Sequence[int] = (2, 3), budget: int | None = None
) -> dict:
    """Verify that the Gaussian binomial polynomial explains the enumerated
    sizes of G(k, n) at the sampled primes, and report its degree (which the
    formula says is k(n-k)). Blind interpolation is used too whenever the
    degree cap is small enough to sample."""
    cap_budget = enumeration_budget(budget)
    counts = {}
    for q in q_list:
        projected = gaussian_binomial(n, k, q)
        if projected > cap_budget:
            raise BudgetExceededError(projected, cap_budget, f"G({k},{n}) over GF({q})")
        counts[q] = sum(1 for _ in rref_matrices(n, k, q))
    poly = gaussian_binomial_poly(n, k)
    degree = polyfit.verified_poly_degree(poly, counts)
    expected = k * (n - k)
    if degree != expected:
        raise FormulaViolationError(f"dim G({k},{n})", expected, degree)
    return {"n": n, "k": k, "counts": counts, "degree": degree}
