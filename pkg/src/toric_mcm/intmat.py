"""Exact integer and rational matrix helpers.

Matrices are plain lists of rows.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for a in v:
        g = gcd(g, a)
    if g == 0:
        return tuple(v)
    return tuple(a // g for a in v)


def integral_direction(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest integer vector positively proportional to a rational vector."""
    den = 1
    for a in v:
        a = Fraction(a)
        den = den * a.denominator // gcd(den, a.denominator)
    return primitive([int(Fraction(a) * den) for a in v])


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def rank(rows: Sequence[Sequence], p: int = 0) -> int:
    """Rank over Q (``p == 0``) or over GF(p).

    Over Q this is fraction-free (Bareiss) elimination on integers, so the
    input must be integral.
    """
    if p:
        return _rank_mod_p(rows, p)
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        pc = pr[c]
        for i in range(r + 1, len(m)):
            row = m[i]
            f = row[c]
            if f:
                m[i] = [(pc * row[j] - f * pr[j]) // prev for j in range(ncols)]
            else:
                m[i] = [(pc * row[j]) // prev for j in range(ncols)]
        prev = pc
        r += 1
        if r == len(m):
            break
    return r


def _rank_mod_p(rows, p):
    m = [[a % p for a in r] for r in rows]
    m = [r for r in m if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        pr = [(a * inv) % p for a in m[r]]
        m[r] = pr
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], pr)]
        r += 1
        if r == len(m):
            break
    return r


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(a) for a in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [a / pv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Basis of the rational kernel {x : rows . x = 0}, as primitive integer vectors."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in zip(red, pivots):
            v[pc] = -r[f]
        basis.append(integral_direction(v))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of a square system, or None when singular."""
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def hnf_with_transform(rows: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form with its unimodular transform.

    Returns ``(h, u)`` with ``u @ rows == h``.  The nonzero rows of ``h`` come
    first, are in echelon form with positive pivots, and entries above each
    pivot are reduced into ``[0, pivot)``.  Zero rows are kept at the bottom
    so that ``u`` stays square.
    """
    h = [list(r) for r in rows]
    m = len(h)
    ncols = len(h[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    pivot_cols = []
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            a, b = h[r][c], h[i][c]
            if b == 0:
                continue
            if a == 0:
                h[r], h[i] = h[i], h[r]
                u[r], u[i] = u[i], u[r]
                continue
            x, y, g = xgcd(a, b)
            ag, bg = a // g, b // g
            hr, hi = h[r], h[i]
            h[r] = [x * p + y * q for p, q in zip(hr, hi)]
            h[i] = [-bg * p + ag * q for p, q in zip(hr, hi)]
            ur, ui = u[r], u[i]
            u[r] = [x * p + y * q for p, q in zip(ur, ui)]
            u[i] = [-bg * p + ag * q for p, q in zip(ur, ui)]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-a for a in h[r]]
            u[r] = [-a for a in u[r]]
        pv = h[r][c]
        for i in range(r):
            q = h[i][c] // pv
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                u[i] = [a - q * b for a, b in zip(u[i], u[r])]
        pivot_cols.append(c)
        r += 1
    return h, u


def hnf(rows: Sequence[Sequence[int]]) -> Matrix:
    """Nonzero rows of the row Hermite normal form."""
    h, _ = hnf_with_transform(rows)
    return [row for row in h if any(row)]


def reduce_mod_lattice(v: Sequence[int], basis_hnf: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical representative of ``v`` modulo the lattice spanned by an HNF basis.

    Each pivot coordinate of the result lies in ``[0, pivot)``.
    """
    out = list(v)
    for row in basis_hnf:
        c = next(j for j, a in enumerate(row) if a)
        q = out[c] // row[c]
        if q:
            out = [a - q * b for a, b in zip(out, row)]
    return tuple(out)


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]
