"""Class-2 nilpotent Lie and associative algebras as structure constants.

An algebra is V + Z with dim V = n, dim Z = t; products of V-elements land in
Z via a tuple of bilinear forms (alternating for the Lie bracket, arbitrary
for the associative product), and Z annihilates everything. Elements are
coefficient vectors of length n + t (V coordinates first).

A subalgebra is abelian iff its image in V is simultaneously isotropic for
all the forms (for the associative kind: for all their skew-symmetrizations,
since x and y commute iff x^T (C - C^T) y = 0). The maximal-abelian search
therefore reduces to the largest isotropic/commuting subspace of V, shifted
by t; abelian subalgebras always extend to ones containing Z.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass

from .errors import BudgetExceededError, DimensionMismatchError
from .exactfield import FieldSpec, Matrix, rank_of_stack, stack
from .forms import FormTuple, evaluate, form_tuple, is_isotropic, skew_symmetrize
from .grassmann import Subspace, enumeration_budget, subspace_from_rows
from .search import find_isotropic_rows, greedy_isotropic


@dataclass(frozen=True)
class Class2Algebra:
    """Structure constants of a class-2 nilpotent algebra on V + Z."""

    kind: str  # "lie" | "associative"
    n: int
    t: int
    field: FieldSpec
    forms: FormTuple | None = None  # lie kind
    psi: tuple | None = None  # associative kind: t arbitrary n x n matrices

    def __post_init__(self):
        if self.kind == "lie":
            if self.forms is None or self.psi is not None:
                raise ValueError("lie kind is built from a FormTuple")
            if (self.forms.n, self.forms.t, self.forms.field) != (self.n, self.t, self.field):
                raise DimensionMismatchError("form tuple shape disagrees with the algebra")
        elif self.kind == "associative":
            if self.psi is None or self.forms is not None:
                raise ValueError("associative kind is built from product matrices")
            if len(self.psi) != self.t:
                raise DimensionMismatchError("need t product matrices")
            for m in self.psi:
                if m.rows != self.n or m.cols != self.n or m.field != self.field:
                    raise DimensionMismatchError("product matrices must be n x n over the field")
        else:
            raise ValueError(f"unknown algebra kind {self.kind!r}")

    @property
    def dim(self) -> int:
        return self.n + self.t

    def to_json(self) -> dict:
        out = {"kind": self.kind, "n": self.n, "t": self.t, "field": self.field.to_json()}
        if self.kind == "lie":
            out["forms"] = [m.to_json() for m in self.forms.matrices]
        else:
            out["psi"] = [m.to_json() for m in self.psi]
        return out

    @staticmethod
    def from_json(d: dict) -> "Class2Algebra":
        field = FieldSpec.from_json(d["field"])
        if d["kind"] == "lie":
            mats = tuple(Matrix.from_json(m, field) for m in d["forms"])
            return make_lie(FormTuple(d["n"], d["t"], mats, field))
        mats = [Matrix.from_json(m, field) for m in d["psi"]]
        return make_associative(mats)


def algebra_checksum(a: Class2Algebra) -> str:
    "Stable short identifier derived from the canonical JSON form."
    blob = json.dumps(a.to_json(), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


# --- element arithmetic (coefficient vectors of length n + t) ---


def multiply(a: Class2Algebra, x, y) -> tuple:
    "The product (bracket for lie kind); lands in the Z coordinates."
    if len(x) != a.dim or len(y) != a.dim:
        raise DimensionMismatchError("elements have the wrong length")
    fs = a.field
    xv, yv = x[: a.n], y[: a.n]
    if a.kind == "lie":
        zs = evaluate(a.forms, xv, yv)
    else:
        zs = []
        for m in a.psi:
            s = fs.zero()
            for i, xi in enumerate(xv):
                if xi == 0:
                    continue
                row = m.entries[i]
                for j, yj in enumerate(yv):
                    if yj != 0 and row[j] != 0:
                        s = fs.add(s, fs.mul(xi, fs.mul(row[j], yj)))
            zs.append(s)
    return tuple([fs.zero()] * a.n + list(zs))


def commutes(a: Class2Algebra, x, y) -> bool:
    "x y = y x (trivially [x,y] = 0 for the lie kind)."
    return multiply(a, x, y) == multiply(a, y, x)


def _basis_vector(a: Class2Algebra, i: int) -> tuple:
    v = [a.field.zero()] * a.dim
    v[i] = a.field.one()
    return tuple(v)


def _verify_class2(a: Class2Algebra) -> None:
    "All double products vanish, exhaustively over basis triples."
    zero = tuple([a.field.zero()] * a.dim)
    basis = [_basis_vector(a, i) for i in range(a.dim)]
    for x in basis:
        for y in basis:
            xy = multiply(a, x, y)
            for w in basis:
                if multiply(a, xy, w) != zero or multiply(a, w, xy) != zero:
                    raise AssertionError("double product does not vanish; not class 2")


def _random_element(a: Class2Algebra, rng) -> tuple:
    if a.field.kind == "prime":
        return tuple(a.field.of(rng.randrange(a.field.p)) for _ in range(a.dim))
    return tuple(a.field.of(rng.randrange(-5, 6)) for _ in range(a.dim))


def make_lie(phi: FormTuple) -> Class2Algebra:
    """The Lie algebra with bracket [x, y] = sum_l phi_l(x_V, y_V) z_l.
    Construction re-checks the class-2 law exhaustively on basis triples and
    the Jacobi identity on a few deterministic random triples."""
    a = Class2Algebra("lie", phi.n, phi.t, phi.field, forms=phi)
    _verify_class2(a)
    rng = random.Random("jacobi-spot-check")
    zero = tuple([a.field.zero()] * a.dim)
    fs = a.field
    for _ in range(5):
        x, y, w = (_random_element(a, rng) for _ in range(3))
        total = [fs.zero()] * a.dim
        for u, v, z in ((x, y, w), (y, w, x), (w, x, y)):
            term = multiply(a, u, multiply(a, v, z))
            total = [fs.add(p, q) for p, q in zip(total, term)]
        if tuple(total) != zero:
            raise AssertionError("Jacobi identity failed on a random triple")
    return a


def make_associative(psi_matrices) -> Class2Algebra:
    """The associative algebra with x . y = sum_l psi_l(x_V, y_V) z_l.
    Associativity holds because every triple product vanishes; construction
    asserts that on basis triples and random triples."""
    psi = tuple(psi_matrices)
    if not psi:
        raise ValueError("need at least one product matrix")
    field = psi[0].field
    n = psi[0].rows
    a = Class2Algebra("associative", n, len(psi), field, psi=psi)
    _verify_class2(a)
    rng = random.Random("assoc-spot-check")
    for _ in range(5):
        x, y, w = (_random_element(a, rng) for _ in range(3))
        if multiply(a, multiply(a, x, y), w) != multiply(a, x, multiply(a, y, w)):
            raise AssertionError("associativity failed on a random triple")
    return a


def lie_shadow(a: Class2Algebra) -> Class2Algebra:
    """The Lie algebra on the same space whose forms are the
    skew-symmetrizations C_l - C_l^T of the product matrices; it has the same
    dimension and the same maximal abelian subalgebra dimension."""
    if a.kind != "associative":
        raise ValueError("lie_shadow applies to associative algebras")
    return make_lie(skew_symmetrize(list(a.psi)))


def standard_symplectic_matrix(field: FieldSpec, m: int) -> Matrix:
    "Block diagonal of m copies of ((0, 1), (-1, 0))."
    n = 2 * m
    grid = [[field.zero()] * n for _ in range(n)]
    for b in range(m):
        grid[2 * b][2 * b + 1] = field.one()
        grid[2 * b + 1][2 * b] = field.neg(field.one())
    return Matrix.from_rows(field, grid)


def heisenberg(m: int, field: FieldSpec) -> Class2Algebra:
    "The (2m+1)-dimensional algebra of the standard nondegenerate alternating form."
    if m < 1:
        raise ValueError("m must be >= 1")
    return make_lie(form_tuple(field, [standard_symplectic_matrix(field, m)]))


def center_dim(a: Class2Algebra) -> int:
    """t plus the dimension of the joint kernel in V: vectors on which every
    form vanishes (for the associative kind, joint left and right kernels of
    every product matrix)."""
    if a.kind == "lie":
        blocks = list(a.forms.matrices)
    else:
        blocks = [m for c in a.psi for m in (c, c.transpose())]
    rk = rank_of_stack(blocks) if blocks else 0
    return a.t + (a.n - rk)


# ---------------------------------------------------------------------------
# maximal abelian subalgebras


@dataclass(frozen=True)
class AbelianReport:
    """Largest found abelian subalgebra: its dimension, the witness subspace
    of V (the subalgebra is Z + witness), how it was found, and whether the
    search was a complete certification."""

    algebra_id: str
    max_abelian_dim: int
    witness: Subspace | None
    method: str  # "exhaustive" | "greedy" | "randomized"
    exhaustive_certified: bool
    note: str | None = None

    def to_json(self) -> dict:
        return {
            "algebra_id": self.algebra_id,
            "max_abelian_dim": self.max_abelian_dim,
            "witness": self.witness.to_json() if self.witness else None,
            "method": self.method,
            "exhaustive_certified": self.exhaustive_certified,
            "note": self.note,
        }


def _shadow_forms(a: Class2Algebra) -> FormTuple:
    return a.forms if a.kind == "lie" else skew_symmetrize(list(a.psi))


def _pair_commutes_raw(rows, psi_raw, n, p) -> bool:
    "x^T C y = y^T C x for every product matrix and every basis pair (ints mod p)."
    k = len(rows)
    for m in psi_raw:
        for i in range(k):
            ri = rows[i]
            for j in range(i + 1, k):
                rj = rows[j]
                fwd = 0
                bwd = 0
                for aa in range(n):
                    xa, ya = ri[aa], rj[aa]
                    if xa == 0 and ya == 0:
                        continue
                    row = m[aa]
                    for bb in range(n):
                        c = row[bb]
                        if c:
                            if xa:
                                fwd += xa * c * rj[bb]
                            if ya:
                                bwd += ya * c * ri[bb]
                if (fwd - bwd) % p:
                    return False
    return True


def max_abelian(a: Class2Algebra, budget: int | None = None) -> AbelianReport:
    """Exhaustive maximal-abelian search: t plus the largest k such that some
    k-subspace of V is isotropic (lie) or pairwise commuting (associative).
    Levels are tried downward from k = n until a witness appears; each level
    is a certified search. On budget refusal the result degrades to the
    greedy lower bound with exhaustive_certified = False."""
    ident = algebra_checksum(a)
    if a.field.kind != "prime":
        u = greedy_isotropic(_shadow_forms(a))
        return AbelianReport(ident, a.t + u.dim, u, "greedy", False,
                             note="enumeration needs a prime field; greedy lower bound only")
    q = a.field.p
    n = a.n
    if a.kind == "lie":
        mats = a.forms.raw()
        pair_ok = None
    else:
        psi_raw = tuple(m.entries for m in a.psi)
        mats = _shadow_forms(a).raw()
        pair_ok = lambda rows: _pair_commutes_raw(rows, psi_raw, n, q)
    try:
        for k in range(n, 0, -1):
            rows, _ = find_isotropic_rows(n, k, q, mats, budget, pair_ok=pair_ok)
            if rows is not None:
                witness = subspace_from_rows(a.field, n, rows)
                if not is_isotropic(_shadow_forms(a), witness):
                    raise AssertionError("witness fails the isotropy cross-check")
                return AbelianReport(ident, a.t + k, witness, "exhaustive", True)
        witness = subspace_from_rows(a.field, n, [])
        return AbelianReport(ident, a.t, witness, "exhaustive", True)
    except BudgetExceededError as e:
        u = greedy_isotropic(_shadow_forms(a))
        return AbelianReport(ident, a.t + u.dim, u, "greedy", False,
                             note=f"budget refusal ({e}); greedy lower bound only")
