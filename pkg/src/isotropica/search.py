"""Finding common isotropic subspaces, and hunting for tuples without them.

Three strategies:

* greedy: deterministic constructive builder with the unconditional floor
  dim >= ceil(n / (t+1)) (each adjoined vector adds at most t linear
  constraints, so the solution space stays big enough to extend that far);
* randomized: seeded restarts of greedy with random vector choices;
* exhaustive: finite-field certification. Small Grassmannians are scanned in
  enumeration order; past a size threshold the engine switches to a complete
  depth-first walk of the isotropic-subspace lattice (every isotropic
  k-subspace contains isotropic subspaces of every smaller dimension, so
  extending kernel-by-kernel with canonical-form dedup visits a witness iff
  one exists). Both engines compute the same predicate; only cost differs.

Over GF(q) a tuple may lack the k-dimensional isotropic subspace that exists
over the algebraic closure; such negatives are data, not errors, and the hunt
below searches for them on purpose.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import BudgetExceededError, DimensionMismatchError
from .exactfield import FieldSpec, Matrix, kernel_basis, kernel_mod, rref_mod
from .forms import FormTuple, evaluate, is_isotropic, random_form_tuple
from .grassmann import (
    Subspace,
    enumeration_budget,
    gaussian_binomial,
    rref_matrices,
    subspace_from_rows,
)

SCAN_THRESHOLD = 600_000


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a k-dimensional isotropic-subspace search. `trials` counts
    subspaces tested (scan), lattice nodes visited (dfs) or restarts
    (randomized)."""

    found: bool
    witness: Subspace | None
    k_target: int
    method: str
    trials: int
    seed: object = None

    def __post_init__(self):
        if self.found and (self.witness is None or self.witness.dim != self.k_target):
            raise ValueError("a positive outcome needs a witness of the target dimension")


# ---------------------------------------------------------------------------
# level engines over raw rows (ints mod p)


def _pairs_vanish(rows, mats, n: int, p: int) -> bool:
    "True iff r_i M r_j = 0 mod p for every form matrix and every pair i < j."
    k = len(rows)
    if k < 2:
        return True
    for m in mats:
        for i in range(k - 1):
            ri = rows[i]
            w = None
            for a in range(n):
                c = ri[a]
                if c:
                    ma = m[a]
                    if w is None:
                        w = list(ma) if c == 1 else [c * x for x in ma]
                    elif c == 1:
                        w = [u + v for u, v in zip(w, ma)]
                    else:
                        w = [u + c * v for u, v in zip(w, ma)]
            if w is None:
                continue
            for j in range(i + 1, k):
                rj = rows[j]
                s = 0
                for b in range(n):
                    x = w[b]
                    if x:
                        y = rj[b]
                        if y:
                            s += x * y
                if s % p:
                    return False
    return True


def _scan_level(n: int, k: int, p: int, pair_ok: Callable) -> tuple:
    "Linear scan of G(k, n)(GF(p)) in enumeration order. Returns (rows|None, tested)."
    tested = 0
    for rows in rref_matrices(n, k, p):
        tested += 1
        if pair_ok(rows):
            return rows, tested
    return None, tested


def _constraint_rows(rows, mats, n: int, p: int) -> list:
    "One linear condition (b_i M_l) . y = 0 per basis row and form."
    out = []
    for m in mats:
        for b in rows:
            w = [0] * n
            for a in range(n):
                c = b[a]
                if c:
                    ma = m[a]
                    w = [u + c * v for u, v in zip(w, ma)]
            out.append([x % p for x in w])
    return out


def _dfs_level(n: int, k: int, p: int, mats, node_budget: int) -> tuple:
    """Complete pruned search for an isotropic k-subspace: depth-first
    extension through the lattice of isotropic subspaces, deduplicated by
    canonical RREF keys. Returns (rows|None, nodes_visited)."""
    if k == 0:
        return (), 0
    if k > n:
        return None, 0
    visited: set = set()
    nodes = 0

    def children(rows):
        crows = _constraint_rows(rows, mats, n, p)
        ker = kernel_mod(crows, n, p)
        pivots = [next(c for c, x in enumerate(r) if x) for r in rows]
        comp = []
        for v in ker:
            v = list(v)
            for r, pc in zip(rows, pivots):
                f = v[pc]
                if f:
                    v = [(x - f * y) % p for x, y in zip(v, r)]
            if any(v):
                comp.append(v)
        comp, _ = rref_mod(comp, p)
        return [r for r in comp if any(r)]

    def visit(rows):
        nonlocal nodes
        if len(rows) == k:
            return rows
        comp = children(rows)
        if not comp:
            return None
        d = len(comp)
        for (coeffs,) in rref_matrices(d, 1, p):
            y = [0] * n
            for c, row in zip(coeffs, comp):
                if c:
                    y = [(u + c * v) % p for u, v in zip(y, row)]
            child_rows, _ = rref_mod(list(rows) + [y], p)
            child = tuple(tuple(r) for r in child_rows if any(r))
            if child in visited:
                continue
            visited.add(child)
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceededError(nodes, node_budget, "isotropic lattice walk")
            got = visit(child)
            if got is not None:
                return got
        return None

    for start in rref_matrices(n, 1, p):
        if start in visited:
            continue
        visited.add(start)
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(nodes, node_budget, "isotropic lattice walk")
        got = visit(start)
        if got is not None:
            return got, nodes
    return None, nodes


def find_isotropic_rows(
    n: int,
    k: int,
    q: int,
    mats,
    budget: int | None = None,
    pair_ok: Callable | None = None,
) -> tuple:
    """Engine dispatch: certified search for k raw basis rows whose pairs all
    vanish. `mats` are entry grids of alternating matrices; a custom pair_ok
    replaces the vanishing test in scan mode (the lattice walk always
    constrains through `mats`). Returns (rows|None, work)."""
    cap = enumeration_budget(budget)
    projected = gaussian_binomial(n, k, q)
    if projected > cap:
        raise BudgetExceededError(projected, cap, f"G({k},{n}) over GF({q})")
    if pair_ok is None:
        pair_ok = lambda rows: _pairs_vanish(rows, mats, n, q)
    if projected <= SCAN_THRESHOLD:
        return _scan_level(n, k, q, pair_ok)
    return _dfs_level(n, k, q, mats, cap)


# ---------------------------------------------------------------------------
# public searches


def greedy_isotropic(phi: FormTuple, seed=None) -> Subspace:
    """Deterministic isotropic builder: repeatedly solve the linear system
    {phi_l(u_j, y) = 0 for all l, j} and adjoin a solution outside the current
    span -- the lexicographically smallest kernel-basis row without a seed, a
    seeded random kernel vector with one. Output dimension is always at least
    ceil(n / (t+1))."""
    fs = phi.field
    n = phi.n
    rng = random.Random(f"greedy:{seed}") if seed is not None else None
    current = subspace_from_rows(fs, n, [])
    while True:
        crows = []
        for m in phi.matrices:
            for b in current.basis.entries:
                crows.append(m.transpose().matvec(b))
        sysm = Matrix.from_rows(fs, crows) if crows else Matrix(0, n, (), fs)
        ker = kernel_basis(sysm)
        outside = [
            r
            for r in ker.entries
            if subspace_from_rows(fs, n, list(current.basis.entries) + [r]).dim > current.dim
        ]
        if not outside:
            return current
        if rng is None:
            pick = min(outside)
        else:
            pick = None
            for _ in range(8):
                cand = [fs.zero()] * n
                for r in ker.entries:
                    c = fs.of(rng.randrange(fs.p)) if fs.kind == "prime" else fs.of(rng.randrange(-3, 4))
                    if c != 0:
                        cand = [fs.add(u, fs.mul(c, v)) for u, v in zip(cand, r)]
                trial = subspace_from_rows(fs, n, list(current.basis.entries) + [cand])
                if trial.dim > current.dim:
                    pick = cand
                    break
            if pick is None:
                pick = min(outside)
        current = subspace_from_rows(fs, n, list(current.basis.entries) + [pick])


def greedy_floor(n: int, t: int) -> int:
    "ceil(n / (t+1)), the guaranteed greedy output dimension."
    return -(-n // (t + 1))


def randomized_isotropic(phi: FormTuple, k: int, trials: int, seed) -> SearchOutcome:
    """Seeded greedy restarts; found as soon as one restart reaches dimension
    k (the witness is the first k basis rows, a subspace of an isotropic
    space being isotropic)."""
    for i in range(trials):
        u = greedy_isotropic(phi, seed=f"{seed}:{i}")
        if u.dim >= k:
            witness = subspace_from_rows(phi.field, phi.n, u.basis.entries[:k])
            if not is_isotropic(phi, witness):
                raise AssertionError("randomized search produced a non-isotropic witness")
            return SearchOutcome(True, witness, k, "randomized", i + 1, seed)
    return SearchOutcome(False, None, k, "randomized", trials, seed)


def exhaustive_isotropic(phi: FormTuple, k: int, budget: int | None = None) -> SearchOutcome:
    """Certified finite-field answer: found iff some k-dimensional subspace of
    GF(q)^n is isotropic for the whole tuple. A negative here contradicts
    nothing about algebraically closed fields; it is recorded as data."""
    if phi.field.kind != "prime":
        raise ValueError("exhaustive search needs a prime field")
    q = phi.field.p
    rows, work = find_isotropic_rows(phi.n, k, q, phi.raw(), budget)
    if rows is None:
        return SearchOutcome(False, None, k, "exhaustive", work)
    witness = subspace_from_rows(phi.field, phi.n, rows)
    if not is_isotropic(phi, witness):
        raise AssertionError("search engine returned a non-isotropic witness")
    return SearchOutcome(True, witness, k, "exhaustive", work)


def existence_threshold_holds(n: int, t: int, k: int) -> bool:
    """Whether 2n >= t(k-1) + 2k and t >= 2 both hold -- the inequalities
    under which a common isotropic k-subspace always exists over an
    algebraically closed field."""
    if min(n, t, k) < 1:
        raise ValueError("n, t, k must be positive")
    return t >= 2 and 2 * n >= t * (k - 1) + 2 * k


@dataclass(frozen=True)
class HuntResult:
    """Outcome of sampling random tuples in search of one with NO k-dimensional
    common isotropic subspace over GF(q). `found` means such a tuple was hit;
    it certifies (over GF(q)) an algebra whose abelian subalgebras all have
    dimension at most k - 1 + t."""

    n: int
    t: int
    k: int
    q: int
    seed: object
    trials_run: int
    found: bool
    tuple: FormTuple | None
    success_rate: Fraction

    @property
    def abelian_cap(self) -> int:
        return self.k - 1 + self.t


def hunt_isotropic_free_tuple(
    n: int, t: int, k: int, q: int, trials: int, seed, budget: int | None = None
) -> HuntResult:
    """Sample seeded random tuples, certify each with the exhaustive search at
    level k, stop at the first having no witness. Per-trial tuples are
    reconstructible as random_form_tuple(n, t, GF(q), f"{seed}:{index}")."""
    field = FieldSpec("prime", q)
    free_hits = 0
    for i in range(trials):
        tup = random_form_tuple(n, t, field, f"{seed}:{i}")
        outcome = exhaustive_isotropic(tup, k, budget)
        if not outcome.found:
            free_hits += 1
            return HuntResult(n, t, k, q, seed, i + 1, True, tup, Fraction(free_hits, i + 1))
    return HuntResult(n, t, k, q, seed, trials, False, None, Fraction(0, 1))


def witness_rate_table(
    n_max: int = 6,
    t_values: Sequence[int] = (2, 3),
    q_list: Sequence[int] = (2, 3, 5),
    samples: int = 100,
    seed=0,
    budget: int | None = None,
) -> dict:
    """Empirical companion to the existence threshold: for every (n, t, k)
    satisfying it with n <= n_max, the fraction of seeded random tuples over
    each GF(q) that do have a k-dimensional common isotropic subspace.

    Nothing is asserted about the fractions themselves. What is enforced (and
    counted in the returned violation fields): every positive outcome's
    witness passes is_isotropic, and found is monotone in k per tuple (a
    witness at level k restricts to every lower level). Per-tuple seeds are
    f"{seed}:{n}:{t}:{q}:{i}" for reconstruction."""
    rows = []
    monotone_violations = 0
    bad_witnesses = 0
    for n in range(1, n_max + 1):
        for t in t_values:
            ks = [k for k in range(1, n + 1) if existence_threshold_holds(n, t, k)]
            if not ks:
                continue
            for q in q_list:
                field = FieldSpec("prime", q)
                found_by_k = {}
                for k in ks:
                    flags = []
                    for i in range(samples):
                        tup = random_form_tuple(n, t, field, f"{seed}:{n}:{t}:{q}:{i}")
                        out = exhaustive_isotropic(tup, k, budget)
                        if out.found and not is_isotropic(tup, out.witness):
                            bad_witnesses += 1
                        flags.append(out.found)
                    found_by_k[k] = flags
                    rows.append(
                        {
                            "n": n,
                            "t": t,
                            "k": k,
                            "q": q,
                            "samples": samples,
                            "found": sum(flags),
                            "rate": Fraction(sum(flags), samples),
                        }
                    )
                ks_sorted = sorted(ks)
                for i in range(samples):
                    prev = True
                    for k in ks_sorted:
                        cur = found_by_k[k][i]
                        if cur and not prev:
                            monotone_violations += 1
                        prev = cur
    return {
        "rows": rows,
        "monotone_violations": monotone_violations,
        "non_isotropic_witnesses": bad_witnesses,
    }
