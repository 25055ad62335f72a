"""Exact two-phase simplex method over the rationals.

The tableau is kept in integer form: every entry is an integer numerator over a
single shared denominator (the current basis determinant), and pivots use the
fraction-free update ``t[i][j] = (t[i][j]*p - t[i][c]*t[r][j]) // prev``.  The
divisions are exact, so no gcd work is done per entry.  Bland's rule guarantees
termination.

Problems are posed over free variables::

    maximize c.x  subject to  A_ub x <= b_ub,  A_eq x == b_eq

with integer data.  Free variables are split as ``x = u - v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


class _Tableau:
    __slots__ = ("rows", "obj", "basis", "den", "ncols")

    def __init__(self, rows, obj, basis, den, ncols):
        self.rows = rows
        self.obj = obj
        self.basis = basis
        self.den = den
        self.ncols = ncols

    def copy(self):
        return _Tableau([r[:] for r in self.rows], self.obj[:], self.basis[:],
                        self.den, self.ncols)

    def pivot(self, r, c):
        prow = self.rows[r]
        p = prow[c]
        if p < 0:
            # Only reached when driving out zero-level artificials; the row
            # is an equation with rhs 0, so negating it is harmless.
            prow = [-a for a in prow]
            self.rows[r] = prow
            p = -p
        prev = self.den
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                self.rows[i] = [(a * p - f * b) // prev for a, b in zip(row, prow)]
            else:
                self.rows[i] = [(a * p) // prev for a in row]
        f = self.obj[c]
        if f:
            self.obj = [(a * p - f * b) // prev for a, b in zip(self.obj, prow)]
        else:
            self.obj = [(a * p) // prev for a in self.obj]
        self.den = p
        self.basis[r] = c

    def run(self, allowed=None):
        """Maximize; ``obj`` holds reduced costs of ``z - c.x``."""
        ncols = self.ncols
        while True:
            obj = self.obj
            enter = None
            for j in range(ncols):
                if obj[j] < 0 and (allowed is None or allowed[j]):
                    enter = j
                    break
            if enter is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    rhs = row[-1]
                    if best is None:
                        best = (i, rhs, a)
                        continue
                    _, brhs, ba = best
                    lhs, rhs_cmp = rhs * ba, brhs * a
                    if lhs < rhs_cmp or (lhs == rhs_cmp and self.basis[i] < self.basis[best[0]]):
                        best = (i, rhs, a)
            if best is None:
                return UNBOUNDED
            self.pivot(best[0], enter)

    def values(self, nvars):
        out = [Fraction(0)] * nvars
        for i, b in enumerate(self.basis):
            if b < nvars:
                out[b] = Fraction(self.rows[i][-1], self.den)
        return out


class ExactLP:
    """A fixed feasible region; phase one runs once, objectives are cheap.

    ``feasible`` tells whether the region is nonempty.  ``maximize(c)`` and
    ``minimize(c)`` reuse the phase-one basis.
    """

    def __init__(self, a_ub: Sequence[Sequence[int]] = (), b_ub: Sequence[int] = (),
                 a_eq: Sequence[Sequence[int]] = (), b_eq: Sequence[int] = (),
                 nvars: int | None = None):
        if nvars is None:
            first = list(a_ub) + list(a_eq)
            nvars = len(first[0]) if first else 0
        self.nvars = nvars
        n = nvars
        m_ub, m_eq = len(a_ub), len(a_eq)
        # columns: u (n), v (n), slacks (m_ub), artificials (<= m_ub + m_eq)
        nslack = m_ub
        rows = []
        needs_art = []
        for a, b in zip(a_ub, b_ub):
            row = list(a) + [-x for x in a]
            if b >= 0:
                rows.append((row, b, 1))
                needs_art.append(False)
            else:
                rows.append(([-x for x in row], -b, -1))
                needs_art.append(True)
        for a, b in zip(a_eq, b_eq):
            row = list(a) + [-x for x in a]
            if b >= 0:
                rows.append((row, b, 0))
            else:
                rows.append(([-x for x in row], -b, 0))
            needs_art.append(True)
        nart = sum(needs_art)
        ncols = 2 * n + nslack + nart
        self._art_start = 2 * n + nslack
        tab_rows = []
        basis = []
        art = self._art_start
        for i, ((row, b, sgn), na) in enumerate(zip(rows, needs_art)):
            full = row + [0] * (nslack + nart) + [b]
            if i < m_ub:
                full[2 * n + i] = sgn
            if na:
                full[art] = 1
                basis.append(art)
                art += 1
            else:
                basis.append(2 * n + i)
            tab_rows.append(full)
        obj = [0] * (ncols + 1)
        for j in range(self._art_start, ncols):
            obj[j] = 1
        for row, b in zip(tab_rows, basis):
            if b >= self._art_start:
                obj = [o - x for o, x in zip(obj, row)]
        tab = _Tableau(tab_rows, obj, basis, 1, ncols)
        tab.run()
        self.feasible = tab.obj[-1] == 0
        self._tab = None
        if not self.feasible:
            return
        # drive artificials out of the basis
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= self._art_start:
                row = tab.rows[i]
                c = next((j for j in range(self._art_start) if row[j]), None)
                if c is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, c)
            i += 1
        # drop artificial columns
        a0 = self._art_start
        tab.rows = [r[:a0] + [r[-1]] for r in tab.rows]
        tab.ncols = a0
        tab.obj = [0] * (a0 + 1)
        self._tab = tab

    def point(self) -> tuple[Fraction, ...] | None:
        """A basic feasible point (the phase-one vertex)."""
        if not self.feasible:
            return None
        vals = self._tab.values(2 * self.nvars)
        n = self.nvars
        return tuple(vals[j] - vals[n + j] for j in range(n))

    def maximize(self, c: Sequence) -> LPResult:
        if not self.feasible:
            return LPResult(INFEASIBLE)
        n = self.nvars
        c = [Fraction(x) for x in c]
        den = 1
        for x in c:
            den = den * x.denominator // _gcd(den, x.denominator)
        ci = [int(x * den) for x in c]
        tab = self._tab.copy()
        full = ci + [-x for x in ci] + [0] * (tab.ncols - 2 * n)
        obj = [-x * tab.den for x in full] + [0]
        for row, b in zip(tab.rows, tab.basis):
            cb = full[b]
            if cb:
                obj = [o + cb * x for o, x in zip(obj, row)]
        tab.obj = obj
        status = tab.run()
        if status == UNBOUNDED:
            return LPResult(UNBOUNDED)
        vals = tab.values(2 * n)
        x = tuple(vals[j] - vals[n + j] for j in range(n))
        value = Fraction(tab.obj[-1], tab.den) / den
        return LPResult(OPTIMAL, x, value)

    def minimize(self, c: Sequence) -> LPResult:
        res = self.maximize([-Fraction(x) for x in c])
        if res.status != OPTIMAL:
            return res
        return LPResult(OPTIMAL, res.x, -res.value)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def linprog(c, a_ub=(), b_ub=(), a_eq=(), b_eq=(), nvars=None) -> LPResult:
    """Maximize ``c.x`` over free ``x``; integer constraint data."""
    return ExactLP(a_ub, b_ub, a_eq, b_eq, nvars=nvars if nvars is not None else len(c)).maximize(c)
