"""Exact linear algebra over Q (Fraction) plus a modular rank bound."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

# largest prime below 2**31; products of two residues fit in int64
PRIME = 2147483629


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(m, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of a @ x = b, or None if inconsistent."""
    ncols = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(m, pivots):
        x[p] = row[ncols]
    return x


def det(a: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def rank_mod_p(entries: dict[tuple[int, int], int], nrows: int, ncols: int,
               p: int = PRIME) -> int:
    """Rank of a sparse integer matrix reduced mod p.

    Never exceeds the rank over Q, so ``ncols - rank_mod_p`` is an upper
    bound on the rational kernel dimension.  A zero bound is a proof that
    the kernel is trivial.
    """
    if nrows == 0 or ncols == 0:
        return 0
    m = np.zeros((nrows, ncols), dtype=np.int64)
    for (i, j), v in entries.items():
        m[i, j] = v % p
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        below = r + 1 + np.nonzero(m[r + 1:, c])[0]
        if below.size:
            factors = m[below, c].reshape(-1, 1)
            m[below] = (m[below] - (factors * m[r]) % p) % p
        r += 1
    return r
