"""Exact polynomial interpolation used by the point-count degree checks.

Coefficient lists are low-degree first. All arithmetic is over Fraction (or
plain int where the inputs are integral); there is no floating point, so a
fitted degree is a statement about exact integers, never about residuals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def poly_degree(coeffs: Sequence) -> int:
    "Degree with trailing zeros ignored; the zero polynomial has degree -1."
    d = -1
    for i, c in enumerate(coeffs):
        if c != 0:
            d = i
    return d


def poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            if cb != 0:
                out[i + j] += ca * cb
    return out


def lagrange_interpolate(points: Sequence[tuple]) -> list:
    """Coefficients of the unique polynomial of degree < len(points) through
    the given (x, y) pairs, as exact Fractions."""
    xs = [p[0] for p in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        # basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = poly_mul(basis, [Fraction(-xj), Fraction(1)])
            denom *= Fraction(xi) - Fraction(xj)
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    return coeffs


def fitted_degree(samples: dict, cap: int) -> int:
    """Degree of the unique interpolating polynomial of degree <= cap.

    Requires at least cap + 1 samples {x: value}; the first cap + 1 nodes (in
    ascending x) pin the polynomial and any extra samples must be reproduced
    exactly, else ValueError.
    """
    items = sorted(samples.items())
    if len(items) < cap + 1:
        raise ValueError(f"need {cap + 1} samples to resolve degree <= {cap}, got {len(items)}")
    coeffs = lagrange_interpolate(items[: cap + 1])
    for x, y in items[cap + 1 :]:
        if poly_eval(coeffs, x) != y:
            raise ValueError(f"sample at x={x} is not explained by the degree-{cap} fit")
    return poly_degree(coeffs)


def verified_poly_degree(coeffs: Sequence, samples: dict) -> int:
    """Degree of a closed-form polynomial after checking it reproduces every
    sample exactly. Used where the degree is too large to pin by blind
    interpolation at enumerable field sizes."""
    for x, y in sorted(samples.items()):
        got = poly_eval(coeffs, x)
        if got != y:
            raise ValueError(f"closed-form polynomial gives {got} at x={x}, counted {y}")
    return poly_degree(coeffs)


def primes_first(count: int) -> list:
    "The first `count` primes, smallest first."
    out = []
    cand = 2
    while len(out) < count:
        if all(cand % q for q in out):
            out.append(cand)
        cand += 1
    return out
