"""Divisors, monomial ideals, supports, cosupports and the negative-ray sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InvalidGenerator
from .intmat import dot
from .lattice_geometry import Cone, Face, FaceLattice, minimal_face, star
from .simplicial import SimplicialComplex


@dataclass(frozen=True)
class Divisor:
    """Integer coefficient per ray, in the cone's ray order."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @classmethod
    def zero(cls, nrays: int) -> Divisor:
        return cls((0,) * nrays)

    @classmethod
    def prime(cls, nrays: int, index: int, multiple: int = 1) -> Divisor:
        """``multiple`` times the prime divisor of ray ``index``."""
        c = [0] * nrays
        c[index] = multiple
        return cls(tuple(c))

    def check(self, cone: Cone) -> Divisor:
        if len(self.coefficients) != cone.nrays:
            raise DimensionMismatch(
                f"divisor has {len(self.coefficients)} coefficients for {cone.nrays} rays")
        return self

    def __add__(self, other: Divisor) -> Divisor:
        return Divisor(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> Divisor:
        return Divisor(tuple(-a for a in self.coefficients))

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]


def principal(cone: Cone, m: Sequence[int]) -> Divisor:
    """Divisor of the character m: coefficients <m, n_rho>."""
    return Divisor(cone.pairings(m))


class _MaximalMarker:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MAXIMAL"

    def __reduce__(self):
        return (_MaximalMarker, ())


MAXIMAL = _MaximalMarker()


@dataclass(frozen=True)
class MonomialIdeal:
    """Either the maximal homogeneous ideal or the ideal generated by some degrees."""

    generators: tuple[tuple[int, ...], ...] | _MaximalMarker = MAXIMAL

    def __post_init__(self):
        if self.generators is not MAXIMAL:
            gens = tuple(tuple(int(a) for a in g) for g in self.generators)
            if not gens:
                raise InvalidGenerator("an ideal needs at least one generator")
            object.__setattr__(self, "generators", gens)

    @classmethod
    def maximal(cls) -> MonomialIdeal:
        return cls(MAXIMAL)

    @classmethod
    def generated_by(cls, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
        return cls(tuple(tuple(g) for g in gens))

    @property
    def is_maximal(self) -> bool:
        return self.generators is MAXIMAL

    def check(self, cone: Cone) -> MonomialIdeal:
        if self.is_maximal:
            return self
        for i, g in enumerate(self.generators):
            if len(g) != cone.rank:
                raise DimensionMismatch(f"generator {i} has length {len(g)}, expected {cone.rank}",
                                        index=i)
            if any(p < 0 for p in cone.pairings(g)):
                raise InvalidGenerator(f"generator {i} = {g} is not in the dual cone", index=i)
        return self


@dataclass(frozen=True)
class SupportSet:
    faces: frozenset[Face]

    def __contains__(self, face):
        return face in self.faces

    def __iter__(self):
        return iter(sorted(self.faces, key=lambda f: (f.dim, sorted(f.rays))))

    def __len__(self):
        return len(self.faces)


def support(cone: Cone, lattice: FaceLattice, ideal: MonomialIdeal) -> SupportSet:
    """Faces tau such that no generator vanishes on all rays of tau."""
    ideal.check(cone)
    if ideal.is_maximal:
        return SupportSet(frozenset([lattice.top]))
    pair = [cone.pairings(g) for g in ideal.generators]
    faces = frozenset(tau for tau in lattice.faces
                      if not any(all(p[r] == 0 for r in tau.rays) for p in pair))
    return SupportSet(faces)


def cosupport(lattice: FaceLattice, supp: SupportSet | Iterable[Face]) -> SimplicialComplex:
    """Subsets of rays whose minimal face avoids star(supp)."""
    faces = supp.faces if isinstance(supp, SupportSet) else frozenset(supp)
    st = star(lattice, faces)
    allowed = [eta.rays for eta in lattice.faces if eta not in st]
    n = lattice.cone.nrays
    # the minimal face of a subset avoids the star iff the subset lies on some
    # face outside the star, since the complement of a star is a down-set
    out: set[frozenset[int]] = set()
    for rays in allowed:
        r = sorted(rays)
        for k in range(len(r) + 1):
            out.update(frozenset(c) for c in combinations(r, k))
    return SimplicialComplex(n, frozenset(out))


def cosupport_direct(lattice: FaceLattice, supp: SupportSet | Iterable[Face]) -> SimplicialComplex:
    """Same complex, by testing the minimal face of every subset (slow, for cross-checks)."""
    faces = supp.faces if isinstance(supp, SupportSet) else frozenset(supp)
    st = star(lattice, faces)
    n = lattice.cone.nrays
    out = frozenset(frozenset(c) for k in range(n + 1) for c in combinations(range(n), k)
                    if minimal_face(lattice, c) not in st)
    return SimplicialComplex(n, out)


def sigma_m(cone: Cone, divisor: Divisor, m: Sequence[int]) -> frozenset[int]:
    """Rays with <m, n_rho> < -n_rho."""
    divisor.check(cone)
    if len(m) != cone.rank:
        raise DimensionMismatch(f"degree has length {len(m)}, expected {cone.rank}")
    return frozenset(i for i, (n, c) in enumerate(zip(cone.rays, divisor.coefficients))
                     if dot(m, n) < -c)
