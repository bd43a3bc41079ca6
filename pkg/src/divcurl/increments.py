"""Admissible degree increments.

For n variables and derivative order k there are m = C(n-1+k, k)
multi-indices.  A degree increment ell in {1, ..., k} is admissible when
some integer N satisfies C(N, ell) = m together with the dimension
constraint N >= n - 1 + ell.  Solutions are found by exact integer search;
binomials never overflow because Python integers are unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

__all__ = ["binom", "IncrementSolution", "admissible_increments", "increment_scan"]


def binom(a: int, b: int) -> int:
    """C(a, b) with exact integers; 0 when b > a, error on negatives."""
    if a < 0 or b < 0:
        raise ValueError("binomial arguments must be non-negative")
    return comb(a, b)


@dataclass(frozen=True)
class IncrementSolution:
    """One admissible increment: C(N, ell) = m and N >= n - 1 + ell."""

    ell: int
    N: int
    m: int


def _solve_binomial(m: int, ell: int):
    """Smallest N with C(N, ell) = m, or None.  C(N, ell) is strictly
    increasing in N for N >= ell, so a linear climb terminates."""
    N = ell
    while True:
        c = comb(N, ell)
        if c == m:
            return N
        if c > m:
            return None
        N += 1


def increment_scan(n: int, k: int):
    """All ell in {1..k} with an integer solution, split by the dimension
    constraint.  Returns (admissible, rejected) lists of IncrementSolution;
    rejected entries solve C(N, ell) = m but fail N >= n - 1 + ell."""
    if n < 2:
        raise ValueError("need n >= 2")
    if k < 1:
        raise ValueError("need k >= 1")
    m = binom(n - 1 + k, k)
    admissible, rejected = [], []
    for ell in range(1, k + 1):
        N = _solve_binomial(m, ell)
        if N is None:
            continue
        sol = IncrementSolution(ell=ell, N=N, m=m)
        if N >= n - 1 + ell:
            admissible.append(sol)
        else:
            rejected.append(sol)
    return admissible, rejected


def admissible_increments(n: int, k: int):
    """Admissible increments for (n, k), ascending in ell.

    Examples: (2, 9) yields ell in {1, 2, 3, 9} with N in {10, 5, 5, 10};
    (n, 1) yields only (ell=1, N=n).  For (2, 29) the set is exactly
    {1, 29}: C(N, 2) = 30 has no integer solution since 7*8 < 60 < 8*9.
    """
    return increment_scan(n, k)[0]
