"""The exact growth bound for class-2 nilpotent algebras with bounded abelian
subalgebras, and the envelopes that pin it.

max_algebra_dim(s) is the largest dimension of a class-2 nilpotent Lie (or
associative) algebra over an algebraically closed field all of whose abelian
subalgebras have dimension at most s:

    2s - 1              for 1 <= s <= 7,
    floor((s^2+4)/8)+s  for s >= 8,

equivalently max(2s - 1, floor((s^2+4)/8) + s) for every s >= 1. It is pinned
between the quadratic lower bound (s^2-1)/8 + s (and the Heisenberg value
2s - 1) and the upper bound max((s^2+4)/8 + s, 2s - 1): the rational gap is
5/8 < 1, so exactly one integer fits. All bound arithmetic stays in exact
rationals; floors appear only where the formulas place them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import FormulaViolationError


def max_algebra_dim(s: int) -> int:
    "The piecewise formula above."
    if s < 1:
        raise ValueError("s must be >= 1")
    if s <= 7:
        return 2 * s - 1
    return (s * s + 4) // 8 + s


def heisenberg_lower_bound(s: int) -> int:
    "2s - 1, realized by the Heisenberg algebra of dimension 2(s-1)+1."
    if s < 1:
        raise ValueError("s must be >= 1")
    return 2 * s - 1


def upper_bound(s: int) -> Fraction:
    "max((s^2+4)/8 + s, 2s - 1) as an exact rational."
    if s < 1:
        raise ValueError("s must be >= 1")
    return max(Fraction(s * s + 4, 8) + s, Fraction(2 * s - 1))


def quadratic_lower_bound(s: int) -> Fraction:
    "(s^2-1)/8 + s as an exact rational."
    if s < 1:
        raise ValueError("s must be >= 1")
    return Fraction(s * s - 1, 8) + s


def sandwich_check(s: int) -> int:
    """The unique integer between max(2s-1, ceil((s^2-1)/8 + s)) and
    floor(max((s^2+4)/8 + s, 2s-1)); raises if the window is not a single
    integer, and that integer must be max_algebra_dim(s)."""
    lo = max(heisenberg_lower_bound(s), math.ceil(quadratic_lower_bound(s)))
    hi = math.floor(upper_bound(s))
    if lo != hi:
        raise FormulaViolationError(f"integer sandwich at s={s}", "a single integer", (lo, hi))
    if lo != max_algebra_dim(s):
        raise FormulaViolationError(f"sandwich vs formula at s={s}", max_algebra_dim(s), lo)
    return lo


@dataclass(frozen=True)
class BoundRow:
    """One table row: the exact value with its envelopes. regime records which
    branch wins (the linear Heisenberg one through s = 7, the quadratic one
    from s = 8 on)."""

    s: int
    l_value: int
    upper6: int  # floor of the rational upper bound (valid for integer values)
    lower7: int
    lower8: Fraction
    regime: str

    def __post_init__(self):
        expected = max(2 * self.s - 1, (self.s * self.s + 4) // 8 + self.s)
        if self.l_value != expected:
            raise FormulaViolationError(f"table value at s={self.s}", expected, self.l_value)
        if not (self.lower7 <= self.l_value <= self.upper6):
            raise FormulaViolationError(
                f"envelope ordering at s={self.s}",
                f"{self.lower7} <= l <= {self.upper6}",
                self.l_value,
            )


def bound_table(s_max: int) -> list:
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    rows = []
    for s in range(1, s_max + 1):
        rows.append(
            BoundRow(
                s=s,
                l_value=max_algebra_dim(s),
                upper6=math.floor(upper_bound(s)),
                lower7=heisenberg_lower_bound(s),
                lower8=quadratic_lower_bound(s),
                regime="heisenberg" if s <= 7 else "quadratic",
            )
        )
    return rows


@dataclass(frozen=True)
class QuadraticWitnessParams:
    """Parameters (t, k, n) of the tuple construction realizing the quadratic
    lower bound at abelian cap s: a t-tuple on an n-space with no k-dimensional
    common isotropic subspace gives an algebra of dimension n + t whose abelian
    subalgebras have dimension at most k - 1 + t = s."""

    s: int
    t: int
    k: int
    n: int
    dim_achieved: int

    def __post_init__(self):
        if self.dim_achieved != self.n + self.t:
            raise ValueError("dim_achieved must be n + t")
        lhs, rhs = 2 * self.n, self.t * (self.k - 1) + 2 * self.k
        if not lhs < rhs:
            raise FormulaViolationError(
                f"strict inequality 2n < t(k-1)+2k at s={self.s}", f"{lhs} < {rhs}", "violated"
            )
        if Fraction(self.dim_achieved) < quadratic_lower_bound(self.s):
            raise FormulaViolationError(
                f"achieved dimension at s={self.s}",
                f">= {quadratic_lower_bound(self.s)}",
                self.dim_achieved,
            )


def quadratic_witness_params(s: int) -> QuadraticWitnessParams:
    """The parity-split parameter choice: for even s, (t, k, n) =
    (s/2, s/2 + 1, floor((s^2+4s+7)/8)); for odd s, ((s+1)/2, (s+1)/2,
    floor((s^2+4s+2)/8)). Construction re-checks the strict inequality and the
    achieved dimension."""
    if s < 2:
        raise ValueError("the construction needs s >= 2")
    if s % 2 == 0:
        t, k, n = s // 2, s // 2 + 1, (s * s + 4 * s + 7) // 8
    else:
        t = k = (s + 1) // 2
        n = (s * s + 4 * s + 2) // 8
    return QuadraticWitnessParams(s, t, k, n, n + t)
