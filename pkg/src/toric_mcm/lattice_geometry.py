"""Cones in N, their faces, stars and minimal faces.

Rays are indexed from 0 in input order.  A face is identified with the set of
rays lying on it; faces are ordered by inclusion of those sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import (DimensionMismatch, NotFullDimensional, NotPrimitive,
                     NotStrictlyConvex, RedundantRay)
from .intmat import dot, nullspace, rank
from .simplex import ExactLP

LatticeVector = tuple[int, ...]


@dataclass(frozen=True)
class Cone:
    """A strictly convex, full-dimensional cone given by its primitive rays.

    Build it through :func:`validate_cone`; the constructor does not check.
    """

    rank: int
    rays: tuple[LatticeVector, ...]

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def pairings(self, m: Sequence[int]) -> tuple[int, ...]:
        return tuple(dot(m, n) for n in self.rays)


@dataclass(frozen=True)
class Face:
    """A face, identified by the rays lying on it."""

    dim: int
    rays: frozenset[int]

    def __le__(self, other: Face) -> bool:
        # tau <= eta iff tau is a face of eta
        return self.rays <= other.rays

    def __lt__(self, other: Face) -> bool:
        return self.rays < other.rays

    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in sorted(self.rays)) + "}"


def _check_primitive(rays):
    for i, r in enumerate(rays):
        g = 0
        for a in r:
            g = gcd(g, a)
        if g != 1:
            raise NotPrimitive(f"ray {i} = {r} is not primitive", index=i)


def validate_cone(rank_: int, rays: Iterable[Sequence[int]]) -> Cone:
    """Check the standing assumptions on a cone and return it.

    Raises NotPrimitive, NotStrictlyConvex, NotFullDimensional or RedundantRay,
    each carrying the offending (0-based) ray index where one exists.
    """
    rays = tuple(tuple(int(a) for a in r) for r in rays)
    if rank_ < 1:
        raise NotFullDimensional(f"rank must be positive, got {rank_}")
    if not rays:
        raise NotFullDimensional("a cone needs at least one ray")
    for i, r in enumerate(rays):
        if len(r) != rank_:
            raise DimensionMismatch(f"ray {i} has length {len(r)}, expected {rank_}", index=i)
    _check_primitive(rays)

    # strict convexity: some m is strictly positive on every ray
    lp = ExactLP([[-a for a in r] for r in rays], [-1] * len(rays), nvars=rank_)
    if not lp.feasible:
        # a nonnegative combination of rays vanishes; name a ray carrying weight
        n = len(rays)
        a_eq = [[rays[j][k] for j in range(n)] for k in range(rank_)] + [[1] * n]
        b_eq = [0] * rank_ + [1]
        a_ub = [[-int(i == j) for j in range(n)] for i in range(n)]
        res = ExactLP(a_ub, [0] * n, a_eq, b_eq, nvars=n).point()
        bad = next(i for i, y in enumerate(res) if y > 0)
        raise NotStrictlyConvex(f"ray {bad} lies in a line contained in the cone", index=bad)

    if rank(rays) < rank_:
        raise NotFullDimensional(f"rays span a subspace of dimension {rank(rays)} < {rank_}")

    for i, r in enumerate(rays):
        others = [rays[j] for j in range(len(rays)) if j != i]
        if not others:
            continue
        k = len(others)
        a_eq = [[o[c] for o in others] for c in range(rank_)]
        a_ub = [[-int(p == q) for q in range(k)] for p in range(k)]
        if ExactLP(a_ub, [0] * k, a_eq, list(r), nvars=k).feasible:
            raise RedundantRay(f"ray {i} = {r} is a nonnegative combination of the others", index=i)
    return Cone(rank_, rays)


@dataclass(frozen=True)
class FaceLattice:
    """All faces of a cone, from the zero cone up to the cone itself."""

    cone: Cone
    faces: tuple[Face, ...]
    facets: tuple[tuple[Face, LatticeVector], ...]

    @cached_property
    def by_rays(self) -> dict[frozenset[int], Face]:
        return {f.rays: f for f in self.faces}

    @property
    def zero(self) -> Face:
        return self.faces[0]

    @property
    def top(self) -> Face:
        return self.faces[-1]

    def face(self, rays: Iterable[int]) -> Face:
        return self.by_rays[frozenset(rays)]

    def codim(self, face: Face) -> int:
        return self.cone.rank - face.dim


def face_lattice(cone: Cone) -> FaceLattice:
    """Facets by supporting-hyperplane search over (d-1)-subsets, then meets."""
    d = cone.rank
    rays = cone.rays
    n = len(rays)
    facets: dict[frozenset[int], LatticeVector] = {}
    if d == 1:
        facets[frozenset()] = (1,) if rays[0][0] > 0 else (-1,)
    else:
        for subset in combinations(range(n), d - 1):
            sub = [rays[i] for i in subset]
            ker = nullspace(sub, d)
            if len(ker) != 1:
                continue
            normal = ker[0]
            vals = [dot(normal, r) for r in rays]
            if all(v >= 0 for v in vals):
                pass
            elif all(v <= 0 for v in vals):
                normal = tuple(-a for a in normal)
                vals = [-v for v in vals]
            else:
                continue
            on = frozenset(i for i, v in enumerate(vals) if v == 0)
            facets.setdefault(on, normal)

    ray_sets = {frozenset(range(n))}
    frontier = set(facets)
    ray_sets |= frontier
    while frontier:
        new = set()
        for a in frontier:
            for b in list(ray_sets):
                c = a & b
                if c not in ray_sets and c not in new:
                    new.add(c)
        ray_sets |= new
        frontier = new

    faces = []
    for s in ray_sets:
        dim = rank([rays[i] for i in s]) if s else 0
        faces.append(Face(dim, s))
    faces.sort(key=lambda f: (f.dim, len(f.rays), tuple(sorted(f.rays))))
    facet_list = tuple(sorted(((Face(d - 1, s), nrm) for s, nrm in facets.items()),
                              key=lambda t: tuple(sorted(t[0].rays))))
    return FaceLattice(cone, tuple(faces), facet_list)


def minimal_face(lattice: FaceLattice, pi: Iterable[int]) -> Face:
    """Smallest face whose ray set contains ``pi``; the zero cone for ``pi`` empty."""
    pi = frozenset(pi)
    if not pi:
        return lattice.zero
    s = frozenset(range(lattice.cone.nrays))
    for facet, _ in lattice.facets:
        if pi <= facet.rays:
            s &= facet.rays
    return lattice.by_rays[s]


def star(lattice: FaceLattice, faces: Iterable[Face]) -> frozenset[Face]:
    """All faces having some member of ``faces`` as a face."""
    faces = list(faces)
    return frozenset(eta for eta in lattice.faces if any(tau.rays <= eta.rays for tau in faces))


def is_star_closed(lattice: FaceLattice, faces: Iterable[Face]) -> bool:
    faces = frozenset(faces)
    return star(lattice, faces) == faces
