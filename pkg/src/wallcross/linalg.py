"""Small exact linear algebra over Q used by the arrangement and
subdivision code: fraction-free rank and reduced row echelon form.
Everything works on sequences of ints or fractions.Fraction; nothing here
ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Row = Sequence[Fraction]


def _integer_rows(rows: Sequence[Row]) -> list[list[int]]:
    """Clear denominators row by row: rank is invariant under row scaling."""
    out = []
    for row in rows:
        if all(isinstance(x, int) for x in row):
            out.append(list(row))
            continue
        lcm = 1
        for x in row:
            d = Fraction(x).denominator
            lcm = lcm * d // gcd(lcm, d)
        out.append([int(x * lcm) for x in row])
    return out


def bareiss_rank(rows: Sequence[Row]) -> int:
    """Matrix rank by fraction-free (Bareiss) elimination on integer rows."""
    m = _integer_rows(rows)
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    col = 0
    while rank < n_rows and col < n_cols:
        pivot_row = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if pivot_row is None:
            col += 1
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        piv = m[rank][col]
        for r in range(rank + 1, n_rows):
            for c in range(col + 1, n_cols):
                m[r][c] = (m[r][c] * piv - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = piv
        rank += 1
        col += 1
    return rank


def rref(rows: Sequence[Row]) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon form with zero rows dropped.

    The result is a canonical basis of the row space, usable as a
    dictionary key for deduplicating subspaces.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return ()
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return tuple(tuple(row) for row in m[:r])


