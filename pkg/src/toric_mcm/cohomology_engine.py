"""Graded local cohomology of R^D, MCM certificates, depth and singularity sets.

The degree-m piece of H^i_B(R^D) is the reduced cohomology H~^{i-2} of the
cosupport of B restricted to the ray set Sigma_m.  Deciding whether a given
ray set occurs as some Sigma_m is an integer feasibility problem, which turns
the vanishing questions into finite sweeps over ray subsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterable, Sequence

from .chambers import DEFAULT_RAY_CAP, chamber_system, parallel_map, subsets_in_order
from .errors import TooManyRays
from .feasibility import SearchCertificate, integer_feasible
from .intmat import hnf, reduce_mod_lattice, transpose
from .lattice_geometry import Cone, Face, FaceLattice, star
from .simplicial import (QQ, CohomologyDims, FieldSpec, SimplicialComplex, reduced_cohomology_dims,
                         relative_cohomology_dims, restrict)
from .toric_data import Divisor, MonomialIdeal, cosupport, sigma_m, support


@dataclass(frozen=True)
class CohomologyReport:
    """dims[i] for i = 0..n+1, read off the restricted cosupport."""

    degree: tuple[int, ...]
    sigma_m: frozenset[int]
    dims: CohomologyDims

    def __getitem__(self, i):
        return self.dims[i]


def _shift(dims: CohomologyDims, offset: int, length: int) -> CohomologyDims:
    return CohomologyDims(0, tuple(dims[i - offset] for i in range(length)))


def graded_local_cohomology(cone: Cone, lattice: FaceLattice, divisor: Divisor,
                            ideal: MonomialIdeal, m: Sequence[int],
                            field: FieldSpec = QQ) -> CohomologyReport:
    """dims[i] = dim H~^{i-2}(Xi_B restricted to Sigma_m), checked by a second route.

    The formula is applied literally for every m, including degrees with
    Sigma_m empty, where it reads off the augmentation of {∅}.  Use
    :func:`local_piece` for the module-theoretic values.
    """
    xi = cosupport(lattice, support(cone, lattice, ideal))
    sm = sigma_m(cone, divisor, m)
    n = cone.nrays
    via_restrict = _shift(reduced_cohomology_dims(restrict(xi, sm), field), 2, n + 2)
    via_relative = _shift(relative_cohomology_dims(sm, xi, field), 1, n + 2)
    if via_restrict != via_relative:
        raise AssertionError(f"cohomology routes disagree at m={tuple(m)}: "
                             f"{via_restrict.values} vs {via_relative.values}")
    return CohomologyReport(tuple(m), sm, via_restrict)


def local_piece(xi: SimplicialComplex, pi: Iterable[int], field: FieldSpec = QQ) -> CohomologyDims:
    """dim H^i_B(R^D)_m for i = 0..n+1 at any degree m with Sigma_m = ``pi``.

    For nonempty ``pi`` this is the restricted reduced cohomology shifted by two.
    At ``pi`` empty (m in M^D) everything vanishes unless ``xi`` is void, i.e.
    the support holds every face including the zero cone; then the degree-m
    piece of R^D itself survives in H^0.  The void case is reached by the
    singularity sweep at the zero cone.
    """
    pi = frozenset(pi)
    n = xi.nvertices
    if not pi:
        vals = [0] * (n + 2)
        if frozenset() not in xi.faces:
            vals[0] = 1
        return CohomologyDims(0, tuple(vals))
    return _shift(reduced_cohomology_dims(restrict(xi, pi), field), 2, n + 2)


@dataclass(frozen=True)
class PiRecord:
    """How one ray subset was settled in a sweep."""

    pi: frozenset[int]
    disjunct: str  # "vanishing" or "no-lattice-point" or "violation"
    degrees: tuple[int, ...] = ()
    witness: tuple[int, ...] | None = None
    search: SearchCertificate | None = None


@dataclass(frozen=True)
class McmCertificate:
    verdict: bool
    pi: frozenset[int] | None = None
    degree: int | None = None
    witness: tuple[int, ...] | None = None
    records: tuple[PiRecord, ...] = ()

    def verify(self, cone: Cone, lattice: FaceLattice, divisor: Divisor,
               field: FieldSpec = QQ) -> bool:
        """Re-check a negative verdict's witness; positive verdicts re-check their records."""
        xi = cosupport(lattice, support(cone, lattice, MonomialIdeal.maximal()))
        if not self.verdict:
            if sigma_m(cone, divisor, self.witness) != self.pi:
                return False
            return self.degree < cone.rank and local_piece(xi, self.pi, field)[self.degree] != 0
        for rec in self.records:
            dims = local_piece(xi, rec.pi, field)
            bad = [i for i in range(cone.rank) if dims[i]]
            if rec.disjunct == "vanishing" and bad:
                return False
            if rec.disjunct == "no-lattice-point" and rec.search is None:
                return False
        return len(self.records) == 1 << cone.nrays


def _maximal_xi(cone, lattice):
    return cosupport(lattice, support(cone, lattice, MonomialIdeal.maximal()))


def _check_pi(args):
    cone, divisor, xi, pi, field, top = args
    dims = local_piece(xi, pi, field)
    bad = tuple(i for i in range(top) if dims[i])
    if not bad:
        return PiRecord(pi, "vanishing")
    verdict = integer_feasible(chamber_system(cone, divisor, pi, "semistrict"))
    if verdict.feasible:
        return PiRecord(pi, "violation", bad, verdict.witness)
    return PiRecord(pi, "no-lattice-point", bad, None, verdict.certificate)


def _sweep(cone, lattice, divisor, field, ray_cap, jobs, stop_first):
    if cone.nrays > ray_cap:
        raise TooManyRays(cone.nrays, ray_cap)
    divisor.check(cone)
    xi = _maximal_xi(cone, lattice)
    d = cone.rank
    work = [(cone, divisor, xi, pi, field, d) for pi in subsets_in_order(cone.nrays)]
    if stop_first and (jobs or 1) <= 1:
        out = []
        for w in work:
            rec = _check_pi(w)
            out.append(rec)
            if rec.disjunct == "violation":
                break
        return out
    return parallel_map(_check_pi, work, jobs)


def mcm_check(cone: Cone, lattice: FaceLattice, divisor: Divisor, field: FieldSpec = QQ, *,
              ray_cap: int = DEFAULT_RAY_CAP, jobs: int | None = 1) -> McmCertificate:
    """Is R^D maximal Cohen-Macaulay?  The first violating subset in binary order decides."""
    records = _sweep(cone, lattice, divisor, field, ray_cap, jobs, stop_first=True)
    for rec in records:
        if rec.disjunct == "violation":
            return McmCertificate(False, rec.pi, rec.degrees[0], rec.witness)
    return McmCertificate(True, records=tuple(records))


def depth(cone: Cone, lattice: FaceLattice, divisor: Divisor, field: FieldSpec = QQ, *,
          ray_cap: int = DEFAULT_RAY_CAP, jobs: int | None = 1) -> int:
    """Least i with a realized nonzero H^i_m(R^D), or d when none below d."""
    records = _sweep(cone, lattice, divisor, field, ray_cap, jobs, stop_first=False)
    found = [rec.degrees[0] for rec in records if rec.disjunct == "violation"]
    return min(found, default=cone.rank)


def class_lattice(cone: Cone) -> list[list[int]]:
    """HNF basis of the principal divisors {(<m, n_rho>)_rho : m in M}."""
    return hnf(transpose([list(r) for r in cone.rays]))


def canonical_class(cone: Cone, divisor: Divisor) -> Divisor:
    """Fixed representative of the linear equivalence class of ``divisor``."""
    divisor.check(cone)
    return Divisor(reduce_mod_lattice(divisor.coefficients, class_lattice(cone)))


@dataclass(frozen=True)
class McmEnumeration:
    classes: tuple[Divisor, ...]
    box: int
    classes_checked: int
    complete_within_box: bool = True
    note: str = "complete within the searched box; no claim beyond it"


def _mcm_star(args):
    cone, lattice, divisor, field = args
    return mcm_check(cone, lattice, divisor, field, ray_cap=cone.nrays).verdict


def mcm_enumerate(cone: Cone, lattice: FaceLattice, coeff_bound: int = 3, field: FieldSpec = QQ, *,
                  ray_cap: int = DEFAULT_RAY_CAP, jobs: int | None = 1) -> McmEnumeration:
    """Canonical classes of MCM divisors among all D with |coefficients| <= coeff_bound."""
    if coeff_bound < 0:
        raise ValueError("coeff_bound must be nonnegative")
    if cone.nrays > ray_cap:
        raise TooManyRays(cone.nrays, ray_cap)
    basis = class_lattice(cone)
    reps = set()
    for c in product(range(-coeff_bound, coeff_bound + 1), repeat=cone.nrays):
        reps.add(reduce_mod_lattice(c, basis))
    reps = sorted(reps, key=lambda v: (sum(abs(a) for a in v), v))
    verdicts = parallel_map(_mcm_star, [(cone, lattice, Divisor(r), field) for r in reps], jobs)
    classes = tuple(Divisor(r) for r, ok in zip(reps, verdicts) if ok)
    return McmEnumeration(classes, coeff_bound, len(reps))


@dataclass(frozen=True)
class SingularitySets:
    """S_i for i = 0..d as sets of faces; ``levels`` holds the least i with tau in S_i."""

    rank: int
    levels: dict = dc_field(hash=False)

    def __getitem__(self, i: int) -> frozenset[Face]:
        return frozenset(tau for tau, lev in self.levels.items() if lev <= i)

    def as_dict(self) -> dict[int, frozenset[Face]]:
        return {i: self[i] for i in range(self.rank + 1)}


def _face_level(args):
    cone, lattice, divisor, tau, field = args
    d = cone.rank
    codim = d - tau.dim
    xi_tau = cosupport(lattice, [tau])
    best = None
    for pi in subsets_in_order(len(tau.rays)):
        rays = sorted(tau.rays)
        pi = frozenset(rays[j] for j in pi)
        dims = local_piece(xi_tau, pi, field)
        degrees = [i for i in range(len(dims)) if dims[i]]
        if not degrees or (best is not None and degrees[0] >= best):
            continue
        sys_ = chamber_system(cone, divisor, pi, "semistrict", rays=tau.rays)
        if integer_feasible(sys_).feasible:
            best = degrees[0]
    return None if best is None else best + codim


def singularity_sets(cone: Cone, lattice: FaceLattice, divisor: Divisor, field: FieldSpec = QQ, *,
                     ray_cap: int = DEFAULT_RAY_CAP, jobs: int | None = 1) -> SingularitySets:
    """tau lies in S_k iff some realized nonzero local piece at tau sits in degree <= k - codim tau."""
    if cone.nrays > ray_cap:
        raise TooManyRays(cone.nrays, ray_cap)
    divisor.check(cone)
    levels = parallel_map(_face_level, [(cone, lattice, divisor, tau, field)
                                        for tau in lattice.faces], jobs)
    d = cone.rank
    out = {tau: lev for tau, lev in zip(lattice.faces, levels) if lev is not None and lev <= d}
    return SingularitySets(d, out)


def is_filtration(sets: SingularitySets, lattice: FaceLattice) -> bool:
    """Nested, star-closed, and exhausting all faces at level d."""
    d = sets.rank
    for i in range(d + 1):
        s = sets[i]
        if star(lattice, s) != s:
            return False
        if i < d and not s <= sets[i + 1]:
            return False
    return sets[d] == frozenset(lattice.faces)
