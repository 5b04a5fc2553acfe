"""Exact linear algebra over the rationals.

Matrices are lists of rows of Fractions.  Elimination clears denominators
and works on integer rows with content reduction (fraction-free), so no
rounding ever happens; ranks, kernels and solutions are exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional


def _int_rows(rows):
    """Scale each row to integers and divide out the content."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            f = Fraction(x)
            den = den * f.denominator // gcd(den, f.denominator)
        ints = [int(Fraction(x) * den) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def echelon(rows):
    """Row echelon form of an exact matrix.

    Returns (rows, pivot_cols) where rows are integer rows with the
    pivot entries nonzero and zeros below each pivot.
    """
    m = _int_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            q = m[i][c]
            if not q:
                continue
            row = [p * a - q * b for a, b in zip(m[i], m[r])]
            g = 0
            for v in row:
                g = gcd(g, v)
            if g > 1:
                row = [v // g for v in row]
            m[i] = row
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    _, pivots = echelon(rows)
    return len(pivots)


def kernel_basis(rows, ncols: Optional[int] = None):
    """Basis of the right kernel {v : A v = 0}, as lists of Fractions."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        basis = []
        for c in range(ncols):
            v = [Fraction(0)] * ncols
            v[c] = Fraction(1)
            basis.append(v)
        return basis
    ech, pivots = echelon(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        # back substitution over pivot rows, highest pivot first
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((Fraction(ech[r][c]) * v[c] for c in range(pc + 1, ncols)),
                    Fraction(0))
            v[pc] = -s / ech[r][pc]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One exact solution x of A x = b, or None when inconsistent.

    rows: the columns of A are the unknowns; rhs: the target vector.
    """
    if not rows:
        return [] if not any(rhs) else None
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    ech, pivots = echelon(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r in range(len(pivots) - 1, -1, -1):
        pc = pivots[r]
        s = Fraction(ech[r][ncols])
        for c in range(pc + 1, ncols):
            if ech[r][c]:
                s -= Fraction(ech[r][c]) * x[c]
        x[pc] = s / ech[r][pc]
    return x
