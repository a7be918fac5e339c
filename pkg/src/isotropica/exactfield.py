"""Exact scalar and matrix arithmetic over small prime fields and the rationals.

Every other module computes in these types; there is no floating point
anywhere in the package. Prime-field scalars are plain ints reduced to
0..p-1, rational scalars are `fractions.Fraction` (always in lowest terms).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatchError

MAX_PRIME = 97


def is_prime(p: int) -> bool:
    "Deterministic trial division; fine for the sizes this package admits."
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: GF(p) for a small prime p, or the rationals."""

    kind: str  # "prime" | "rational"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not (2 <= self.p <= MAX_PRIME) or not is_prime(self.p):
                raise ValueError(
                    f"modulus must be a prime in [2, {MAX_PRIME}], got {self.p!r}"
                )
        elif self.kind == "rational":
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # --- scalar arithmetic, always on canonical representatives ---

    def of(self, x):
        "Coerce x to its canonical representative in this field."
        if self.kind == "prime":
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    def zero(self):
        return 0 if self.kind == "prime" else Fraction(0)

    def one(self):
        return 1 if self.kind == "prime" else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "prime" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "prime" else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "prime" else a * b

    def neg(self, a):
        return (-a) % self.p if self.kind == "prime" else -a

    def inv(self, a):
        if self.kind == "prime":
            return pow(int(a), -1, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def to_json(self) -> dict:
        return {"kind": self.kind} if self.p is None else {"kind": self.kind, "p": self.p}

    @staticmethod
    def from_json(d: dict) -> "FieldSpec":
        return FieldSpec(d["kind"], d.get("p"))


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime", p)


QQ = FieldSpec("rational")


def scalar_to_json(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return int(x)


def scalar_from_json(v, field: FieldSpec):
    if isinstance(v, str):
        num, den = v.split("/")
        return field.of(Fraction(int(num), int(den)))
    return field.of(v)


@dataclass(frozen=True)
class Matrix:
    """An immutable rows x cols matrix with canonical entries."""

    rows: int
    cols: int
    entries: tuple  # tuple of row tuples
    field: FieldSpec

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatchError(
                f"entry grid is not {self.rows}x{self.cols}"
            )

    @staticmethod
    def from_rows(field: FieldSpec, rows: Iterable[Sequence]) -> "Matrix":
        ent = tuple(tuple(field.of(x) for x in row) for row in rows)
        nr = len(ent)
        nc = len(ent[0]) if nr else 0
        return Matrix(nr, nc, ent, field)

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return Matrix(rows, cols, tuple((z,) * cols for _ in range(rows)), field)

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return Matrix(
            n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), field
        )

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def transpose(self) -> "Matrix":
        ent = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return Matrix(self.cols, self.rows, ent, self.field)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows or self.field != other.field:
            raise DimensionMismatchError("matmul shape or field mismatch")
        fs = self.field
        bt = other.transpose().entries
        ent = []
        for r in self.entries:
            out = []
            for c in bt:
                s = fs.zero()
                for a, b in zip(r, c):
                    if a != 0 and b != 0:
                        s = fs.add(s, fs.mul(a, b))
                out.append(s)
            ent.append(tuple(out))
        return Matrix(self.rows, other.cols, tuple(ent), fs)

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatchError("matvec length mismatch")
        fs = self.field
        out = []
        for r in self.entries:
            s = fs.zero()
            for a, b in zip(r, v):
                if a != 0 and b != 0:
                    s = fs.add(s, fs.mul(a, b))
            out.append(s)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def to_json(self) -> list:
        return [[scalar_to_json(x) for x in row] for row in self.entries]

    @staticmethod
    def from_json(rows: list, field: FieldSpec) -> "Matrix":
        return Matrix.from_rows(field, [[scalar_from_json(x, field) for x in row] for row in rows])


class RrefResult(NamedTuple):
    matrix: Matrix
    pivot_columns: tuple
    rank: int


def rref(m: Matrix) -> RrefResult:
    """Unique reduced row echelon form: unit pivots, pivot columns cleared,
    pivot positions strictly increasing, zero rows at the bottom."""
    fs = m.field
    rows = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = None
        for i in range(r, nr):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        head = rows[r][c]
        if head != fs.one():
            inv = fs.inv(head)
            rows[r] = [fs.mul(inv, x) for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [fs.sub(x, fs.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return RrefResult(Matrix.from_rows(fs, rows) if nr else m, tuple(pivots), len(pivots))


def rank(m: Matrix) -> int:
    return rref(m).rank


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of the right null space {x : m x = 0}, one row per basis vector.

    Row count is cols - rank(m); a 0-row matrix for injective m. Each basis
    row has a 1 at one free column (free columns in ascending order).
    """
    fs = m.field
    red, pivots, rk = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    rows = []
    for f in free:
        v = [fs.zero()] * m.cols
        v[f] = fs.one()
        for i, pc in enumerate(pivots):
            v[pc] = fs.neg(red.entries[i][f])
        rows.append(v)
    if not rows:
        return Matrix(0, m.cols, (), fs)
    return Matrix.from_rows(fs, rows)


def stack(blocks: Sequence[Matrix]) -> Matrix:
    blocks = list(blocks)
    if not blocks:
        raise DimensionMismatchError("cannot stack an empty list without a column count")
    cols = blocks[0].cols
    field = blocks[0].field
    for b in blocks:
        if b.cols != cols or b.field != field:
            raise DimensionMismatchError("stacked blocks must share column count and field")
    ent = tuple(row for b in blocks for row in b.entries)
    return Matrix(sum(b.rows for b in blocks), cols, ent, field)


def rank_of_stack(blocks: Sequence[Matrix], *, cols: int | None = None) -> int:
    """Rank of the vertical concatenation of the blocks.

    An empty list has rank 0 (pass cols to record the intended width)."""
    blocks = list(blocks)
    if not blocks:
        return 0
    if cols is not None and any(b.cols != cols for b in blocks):
        raise DimensionMismatchError("declared column count disagrees with blocks")
    return rref(stack(blocks)).rank


# --- fast private paths over GF(p), used by enumeration-heavy callers ---


def rref_mod(rows: Sequence[Sequence[int]], p: int):
    """Row-reduce integer rows mod p. Returns (rows, pivot_cols) with rows a
    list of lists (zero rows kept at the bottom)."""
    rs = [[x % p for x in row] for row in rows]
    if not rs:
        return [], []
    nc = len(rs[0])
    nr = len(rs)
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = None
        for i in range(r, nr):
            if rs[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rs[r], rs[pr] = rs[pr], rs[r]
        head = rs[r][c]
        if head != 1:
            inv = pow(head, -1, p)
            rs[r] = [(inv * x) % p for x in rs[r]]
        rr = rs[r]
        for i in range(nr):
            if i != r:
                f = rs[i][c]
                if f:
                    rs[i] = [(x - f * y) % p for x, y in zip(rs[i], rr)]
        pivots.append(c)
        r += 1
    return rs, pivots


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod(rows, p)[1])


def kernel_mod(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list:
    "Basis rows of {x : rows . x = 0 mod p}."
    red, pivots = rref_mod(rows, p)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-red[i][f]) % p
        out.append(v)
    return out
