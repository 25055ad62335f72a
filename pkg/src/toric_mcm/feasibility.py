"""Exact real and integer feasibility of mixed strict/weak linear systems over M.

Everything is exact rational arithmetic.  Real feasibility with strict rows
maximizes a common slack ``t``; infeasibility is certified by a Motzkin-type
multiplier vector found from the alternative system.  Integer feasibility
tightens strict rows by one, normalizes each row by the gcd of its normal,
splits off the lineality space with a unimodular change of coordinates and then
runs a depth-first search with LP bound propagation inside a box that provably
contains a solution whenever one exists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, factorial, floor, gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .intmat import dot, hnf_with_transform, nullspace, rank, solve, transpose
from .simplex import OPTIMAL, UNBOUNDED, ExactLP

RELATIONS = ("<", "<=", ">=", ">", "=")


@dataclass(frozen=True)
class Row:
    normal: tuple[int, ...]
    relation: str
    rhs: int

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    def holds(self, x: Sequence) -> bool:
        v = dot(self.normal, x)
        b = self.rhs
        return {"<": v < b, "<=": v <= b, ">=": v >= b, ">": v > b, "=": v == b}[self.relation]

    @property
    def strict(self) -> bool:
        return self.relation in ("<", ">")

    def oriented(self) -> tuple[tuple[int, ...], int]:
        """(a, b) such that the row reads a.x <= b, or a.x < b when strict."""
        if self.relation in ("<", "<=", "="):
            return self.normal, self.rhs
        return tuple(-a for a in self.normal), -self.rhs

    def __str__(self):
        terms = " + ".join(f"{a}*x{i}" for i, a in enumerate(self.normal) if a) or "0"
        return f"{terms} {self.relation} {self.rhs}"


@dataclass(frozen=True)
class InequalitySystem:
    dim: int
    rows: tuple[Row, ...] = ()

    def __post_init__(self):
        rows = tuple(r if isinstance(r, Row) else Row(tuple(r[0]), r[1], r[2]) for r in self.rows)
        for i, r in enumerate(rows):
            if len(r.normal) != self.dim:
                raise DimensionMismatch(
                    f"row {i} has {len(r.normal)} coefficients, system dimension is {self.dim}",
                    index=i)
            if not all(isinstance(a, int) for a in r.normal) or not isinstance(r.rhs, int):
                raise TypeError(f"row {i} has non-integer data")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def build(cls, dim: int, rows: Iterable[tuple[Sequence[int], str, int]]) -> InequalitySystem:
        return cls(dim, tuple(Row(tuple(int(a) for a in n), rel, int(b)) for n, rel, b in rows))

    def satisfied_by(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            return False
        return all(r.holds(x) for r in self.rows)

    def closed(self) -> InequalitySystem:
        rel = {"<": "<=", ">": ">="}
        return InequalitySystem(self.dim, tuple(Row(r.normal, rel.get(r.relation, r.relation), r.rhs)
                                                for r in self.rows))

    def tightened(self) -> InequalitySystem:
        """Same integer points, no strict rows: a.x < b  becomes  a.x <= b - 1."""
        out = []
        for r in self.rows:
            if r.relation == "<":
                out.append(Row(r.normal, "<=", r.rhs - 1))
            elif r.relation == ">":
                out.append(Row(r.normal, ">=", r.rhs + 1))
            else:
                out.append(r)
        return InequalitySystem(self.dim, tuple(out))

    def max_abs_entry(self) -> int:
        return max([1] + [abs(a) for r in self.rows for a in r.normal] + [abs(r.rhs) for r in self.rows])


class Status(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers ``y`` on the rows, each row read in its ``<=``/``<`` orientation.

    Inequality multipliers are nonnegative, equality multipliers are free.  They
    combine the normals to zero and the right-hand sides to something negative,
    or to zero while putting positive weight on a strict row.
    """

    multipliers: tuple[Fraction, ...]

    def verify(self, system: InequalitySystem) -> bool:
        y = self.multipliers
        if len(y) != len(system.rows):
            return False
        combo = [Fraction(0)] * system.dim
        rhs = Fraction(0)
        strict_weight = Fraction(0)
        for yi, row in zip(y, system.rows):
            if row.relation != "=" and yi < 0:
                return False
            a, b = row.oriented()
            for j in range(system.dim):
                combo[j] += yi * a[j]
            rhs += yi * b
            if row.strict:
                strict_weight += yi
        if any(combo):
            return False
        return rhs < 0 or (rhs == 0 and strict_weight > 0)


@dataclass(frozen=True)
class SearchCertificate:
    """Record of an exhausted integer search.

    ``box`` is the searched box in the search coordinates (the original ones
    unless ``reduced_dim < dim``); ``classical_bound`` is the determinant-type
    bound ``(d+1) d! A^d`` for reference.
    """

    classical_bound: int
    box: tuple[tuple[int, int], ...] | None
    reduced_dim: int
    nodes: int
    reason: str
    farkas: FarkasCertificate | None = None


@dataclass(frozen=True)
class FeasibilityVerdict:
    status: Status
    witness: tuple | None = None
    certificate: FarkasCertificate | SearchCertificate | None = None

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE

    def __bool__(self) -> bool:
        return self.feasible


def _oriented(system: InequalitySystem):
    a_ub, b_ub, a_eq, b_eq, strict = [], [], [], [], []
    for r in system.rows:
        a, b = r.oriented()
        if r.relation == "=":
            a_eq.append(list(a))
            b_eq.append(b)
        else:
            a_ub.append(list(a))
            b_ub.append(b)
            strict.append(r.strict)
    return a_ub, b_ub, a_eq, b_eq, strict


def farkas_certificate(system: InequalitySystem) -> FarkasCertificate | None:
    """Search the alternative system; a certificate exists iff ``system`` has no real point."""
    rows = system.rows
    k = len(rows)
    d = system.dim
    if k == 0:
        return None
    # variables: y_i >= 0 for inequality rows; equality rows get y+ and y-
    cols = []
    for i, r in enumerate(rows):
        cols.append((i, 1))
        if r.relation == "=":
            cols.append((i, -1))
    nv = len(cols)
    oriented = [r.oriented() for r in rows]
    a_eq = [[sgn * oriented[i][0][j] for i, sgn in cols] for j in range(d)]
    b_eq = [0] * d
    a_ub = [[-int(p == q) for q in range(nv)] for p in range(nv)]
    b_ub = [0] * nv
    a_ub.append([1] * nv)
    b_ub.append(1)
    a_ub.append([sgn * oriented[i][1] for i, sgn in cols])
    b_ub.append(0)
    obj = [-sgn * oriented[i][1] + (1 if rows[i].strict else 0) for i, sgn in cols]
    res = ExactLP(a_ub, b_ub, a_eq, b_eq, nvars=nv).maximize(obj)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    y = [Fraction(0)] * k
    for (i, sgn), v in zip(cols, res.x):
        y[i] += sgn * v
    cert = FarkasCertificate(tuple(y))
    assert cert.verify(system)
    return cert


def real_feasible(system: InequalitySystem) -> FeasibilityVerdict:
    """Decide whether a rational point satisfies every row, strict rows strictly."""
    d = system.dim
    a_ub, b_ub, a_eq, b_eq, strict = _oriented(system)
    witness = None
    if not any(strict):
        lp = ExactLP(a_ub, b_ub, a_eq, b_eq, nvars=d)
        if lp.feasible:
            witness = lp.point()
    else:
        # maximize t with a.x + t <= b on strict rows, capped at t <= 1
        a2 = [row + [1 if s else 0] for row, s in zip(a_ub, strict)]
        a2.append([0] * d + [1])
        b2 = list(b_ub) + [1]
        e2 = [row + [0] for row in a_eq]
        res = ExactLP(a2, b2, e2, b_eq, nvars=d + 1).maximize([0] * d + [1])
        if res.status == OPTIMAL and res.value > 0:
            witness = res.x[:d]
    if witness is not None:
        assert system.satisfied_by(witness)
        return FeasibilityVerdict(Status.FEASIBLE, tuple(witness))
    cert = farkas_certificate(system)
    assert cert is not None, "primal and alternative systems both failed"
    return FeasibilityVerdict(Status.INFEASIBLE, None, cert)


def classical_bound(system: InequalitySystem) -> int:
    """(d+1) * d! * A**d with A the largest absolute entry (at least 1)."""
    d = system.dim
    a = system.max_abs_entry()
    return (d + 1) * factorial(d) * a ** d


def _normalize(system: InequalitySystem):
    """gcd-normalized ``<=``/``=`` rows; returns None when trivially infeasible."""
    ub, eq = [], []
    for r in system.rows:
        a, b = r.oriented()
        g = 0
        for x in a:
            g = gcd(g, x)
        if g == 0:
            if (r.relation == "=" and b != 0) or (r.relation != "=" and b < 0):
                return None
            continue
        if r.relation == "=":
            if b % g:
                return None
            eq.append((tuple(x // g for x in a), b // g))
        else:
            ub.append((tuple(x // g for x in a), b // g))
    return list(dict.fromkeys(ub)), list(dict.fromkeys(eq))


class _Search:
    def __init__(self, ub, eq, dim):
        self.ub = ub
        self.eq = eq
        self.dim = dim
        self.nodes = 0

    def lp(self, lo, hi):
        a_ub = [list(a) for a, _ in self.ub]
        b_ub = [b for _, b in self.ub]
        for j in range(self.dim):
            if lo[j] == hi[j]:
                continue
            e = [0] * self.dim
            e[j] = 1
            a_ub.append(e)
            b_ub.append(hi[j])
            a_ub.append([-x for x in e])
            b_ub.append(-lo[j])
        a_eq = [list(a) for a, _ in self.eq]
        b_eq = [b for _, b in self.eq]
        for j in range(self.dim):
            if lo[j] == hi[j]:
                e = [0] * self.dim
                e[j] = 1
                a_eq.append(e)
                b_eq.append(lo[j])
        return ExactLP(a_ub, b_ub, a_eq, b_eq, nvars=self.dim)

    def satisfied(self, x):
        return (all(dot(a, x) <= b for a, b in self.ub)
                and all(dot(a, x) == b for a, b in self.eq))

    def run(self, lo, hi):
        self.nodes += 1
        lp = self.lp(lo, hi)
        if not lp.feasible:
            return None
        pt = lp.point()
        if all(v.denominator == 1 for v in pt):
            return tuple(int(v) for v in pt)
        lo, hi = list(lo), list(hi)
        for j in range(self.dim):
            if lo[j] == hi[j]:
                continue
            e = [0] * self.dim
            e[j] = 1
            lo[j] = max(lo[j], ceil(lp.minimize(e).value))
            hi[j] = min(hi[j], floor(lp.maximize(e).value))
            if lo[j] > hi[j]:
                return None
        free = [j for j in range(self.dim) if lo[j] < hi[j]]
        if not free:
            return tuple(lo) if self.satisfied(lo) else None
        j = min(free, key=lambda k: (hi[k] - lo[k], k))
        for v in _outward(lo[j], hi[j]):
            lo2, hi2 = list(lo), list(hi)
            lo2[j] = hi2[j] = v
            found = self.run(lo2, hi2)
            if found is not None:
                return found
        return None


def _outward(lo: int, hi: int):
    mid = (lo + hi) // 2
    yield mid
    k = 1
    while mid + k <= hi or mid - k >= lo:
        if mid + k <= hi:
            yield mid + k
        if mid - k >= lo:
            yield mid - k
        k += 1


def _minkowski_box(ub, eq, dim):
    """Box containing an integer point of P whenever P has one.

    P must be nonempty and pointed.  Any integer x = q + sum(l_i g_i) with q in
    the convex hull of the vertices and g_i primitive extreme rays (at most
    ``dim`` of them by Caratheodory) can be moved to x - sum(floor(l_i) g_i),
    which stays in P and has coordinates within the returned bounds.
    """
    rows = [(a, b, False) for a, b in ub] + [(a, b, True) for a, b in eq]
    eq_rows = [a for a, _ in eq]
    verts = set()
    for sub in combinations(range(len(rows)), dim):
        a = [rows[i][0] for i in sub]
        b = [rows[i][1] for i in sub]
        x = solve(a, b)
        if x is None:
            continue
        if all(dot(r, x) <= c for r, c in ub) and all(dot(r, x) == c for r, c in eq):
            verts.add(tuple(x))
    rays = set()
    homog_ub = [a for a, _ in ub]
    for sub in combinations(range(len(rows)), dim - 1):
        a = [rows[i][0] for i in sub] + eq_rows
        ker = nullspace(a, dim)
        if len(ker) != 1:
            continue
        for g in (ker[0], tuple(-x for x in ker[0])):
            if all(dot(r, g) <= 0 for r in homog_ub):
                rays.add(g)
    if dim == 1 and not rays:
        for g in ((1,), (-1,)):
            if all(dot(r, g) <= 0 for r in homog_ub) and all(dot(r, g) == 0 for r in eq_rows):
                rays.add(g)
    box = []
    for j in range(dim):
        vals = [v[j] for v in verts]
        pos = sorted((max(0, g[j]) for g in rays), reverse=True)[:dim]
        neg = sorted((min(0, g[j]) for g in rays))[:dim]
        box.append((floor(min(vals)) + sum(neg), ceil(max(vals)) + sum(pos)))
    return tuple(box)


def integer_feasible(system: InequalitySystem) -> FeasibilityVerdict:
    """Decide whether some m in Z^d satisfies the system; certified either way."""
    for i, r in enumerate(system.rows):
        if len(r.normal) != system.dim:
            raise DimensionMismatch(f"row {i} has wrong length", index=i)
    d = system.dim
    bound = classical_bound(system)
    tight = system.tightened()
    norm = _normalize(tight)
    if norm is None:
        return FeasibilityVerdict(Status.INFEASIBLE, None,
                                  SearchCertificate(bound, None, d, 0, "row with no integer point"))
    ub, eq = norm
    real = real_feasible(tight)
    if not real.feasible:
        return FeasibilityVerdict(Status.INFEASIBLE, None,
                                  SearchCertificate(bound, None, d, 0, "no real point",
                                                    real.certificate))
    if not ExactLP([list(a) for a, _ in ub], [b for _, b in ub],
                   [list(a) for a, _ in eq], [b for _, b in eq], nvars=d).feasible:
        return FeasibilityVerdict(Status.INFEASIBLE, None,
                                  SearchCertificate(bound, None, d, 0,
                                                    "no real point after gcd rounding"))
    all_rows = [a for a, _ in ub] + [a for a, _ in eq]
    r = rank(all_rows) if all_rows else 0
    if r == 0:
        witness = (0,) * d
        assert system.satisfied_by(witness)
        return FeasibilityVerdict(Status.FEASIBLE, witness)

    if r < d:
        # x = U w with A U = [H | 0]; the last d - r coordinates of w are free
        h, v = hnf_with_transform(transpose(all_rows))
        u = transpose(v)
        proj = [row[:r] for row in u]
        ub = [(tuple(dot(a, [proj[k][c] for k in range(d)]) for c in range(r)), b) for a, b in ub]
        eq = [(tuple(dot(a, [proj[k][c] for k in range(d)]) for c in range(r)), b) for a, b in eq]
    else:
        proj = None

    search = _Search(ub, eq, r)
    box = _bounded_box(ub, eq, r)
    if box is None:
        box = _minkowski_box(ub, eq, r)
    lo = [b[0] for b in box]
    hi = [b[1] for b in box]
    found = search.run(lo, hi)
    if found is None:
        return FeasibilityVerdict(Status.INFEASIBLE, None,
                                  SearchCertificate(bound, box, r, search.nodes, "search exhausted"))
    if proj is not None:
        x = tuple(sum(proj[k][c] * found[c] for c in range(r)) for k in range(d))
    else:
        x = found
    assert system.satisfied_by(x), (system, x)
    return FeasibilityVerdict(Status.FEASIBLE, x)


def _bounded_box(ub, eq, dim):
    """Integer hull of the coordinate ranges when the polyhedron is bounded, else None."""
    lp = ExactLP([list(a) for a, _ in ub], [b for _, b in ub],
                 [list(a) for a, _ in eq], [b for _, b in eq], nvars=dim)
    box = []
    for j in range(dim):
        e = [0] * dim
        e[j] = 1
        lo = lp.minimize(e)
        hi = lp.maximize(e)
        if lo.status == UNBOUNDED or hi.status == UNBOUNDED:
            return None
        box.append((ceil(lo.value), floor(hi.value)))
    return tuple(box)


def recession_dim(system: InequalitySystem) -> int:
    """Dimension of {v : a.v <= 0} for the closed system (equalities give a.v = 0)."""
    d = system.dim
    a_ub, _, a_eq, _, _ = _oriented(system.closed())
    implicit = list(a_eq)
    for i, a in enumerate(a_ub):
        # a.v can be made negative on the cone unless row i is an implicit equality
        rows = a_ub + [[-x for x in a]]
        b = [0] * len(a_ub) + [1]
        res = ExactLP(rows, b, a_eq, [0] * len(a_eq), nvars=d).maximize([-x for x in a])
        if res.value == 0:
            implicit.append(a)
    return d - (rank(implicit) if implicit else 0)
