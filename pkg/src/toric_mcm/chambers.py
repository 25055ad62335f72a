"""Chambers of the shifted hyperplane arrangement attached to a cone and a divisor.

For a ray subset ``pi`` the chamber collects the degrees m with
<m, n_rho> below -n_rho exactly for rho in ``pi``.  Three flavors differ only in
which side of each hyperplane is closed.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import TooManyRays
from .feasibility import InequalitySystem, Row, integer_feasible, real_feasible, recession_dim
from .intmat import rank
from .lattice_geometry import Cone, FaceLattice
from .simplex import ExactLP
from .simplicial import QQ, CohomologyDims, FieldSpec, SimplicialComplex, reduced_cohomology_dims, restrict
from .toric_data import Divisor

FLAVORS = ("strict", "semistrict", "closed")
DEFAULT_RAY_CAP = 12

_BELOW = {"strict": "<", "semistrict": "<", "closed": "<="}
_ABOVE = {"strict": ">", "semistrict": ">=", "closed": ">="}


def chamber_system(cone: Cone, divisor: Divisor, pi: Iterable[int],
                   flavor: str = "semistrict", rays: Iterable[int] | None = None) -> InequalitySystem:
    """Rows <m, n_rho> (<|<=) -n_rho on ``pi`` and (>|>=) -n_rho off it.

    ``rays`` restricts the system to a subset of the rays (default: all).
    """
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}")
    divisor.check(cone)
    pi = frozenset(pi)
    idx = range(cone.nrays) if rays is None else sorted(rays)
    rows = []
    for i in idx:
        rel = _BELOW[flavor] if i in pi else _ABOVE[flavor]
        rows.append(Row(cone.rays[i], rel, -divisor[i]))
    return InequalitySystem(cone.rank, tuple(rows))


def cones_intersect(cone: Cone, pi: Iterable[int]) -> bool:
    """Do the cones over the rays in ``pi`` and over the remaining rays share a nonzero vector?"""
    pi = sorted(set(pi))
    rest = [i for i in range(cone.nrays) if i not in set(pi)]
    if not pi or not rest:
        return False
    d = cone.rank
    cols = [cone.rays[i] for i in pi] + [[-a for a in cone.rays[i]] for i in rest]
    k = len(cols)
    a_eq = [[c[j] for c in cols] for j in range(d)] + [[1] * k]
    b_eq = [0] * d + [1]
    a_ub = [[-int(p == q) for q in range(k)] for p in range(k)]
    return ExactLP(a_ub, [0] * k, a_eq, b_eq, nvars=k).feasible


def recession_generators(cone: Cone, pi: Iterable[int]) -> list[tuple[int, ...]]:
    """-n_rho for rho in ``pi`` and n_rho otherwise."""
    pi = frozenset(pi)
    return [tuple(-a for a in n) if i in pi else tuple(n) for i, n in enumerate(cone.rays)]


@dataclass(frozen=True)
class ChamberReport:
    pi: frozenset[int]
    strict_nonempty: bool
    semistrict_nonempty: bool
    lattice_witness: tuple[int, ...] | None
    recession_dim: int
    bounded: bool
    cones_intersect: bool
    cohomology: CohomologyDims
    real_witness: tuple | None = None
    search_bound: int | None = None

    @property
    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in sorted(self.pi)) + "}"


def classify_chamber(cone: Cone, lattice: FaceLattice | None, divisor: Divisor, pi: Iterable[int],
                     xi: SimplicialComplex, field: FieldSpec = QQ) -> ChamberReport:
    pi = frozenset(pi)
    strict = real_feasible(chamber_system(cone, divisor, pi, "strict"))
    semi_sys = chamber_system(cone, divisor, pi, "semistrict")
    semi = real_feasible(semi_sys)
    if semi.feasible:
        lat = integer_feasible(semi_sys)
        witness = lat.witness
        bound = lat.certificate.classical_bound if lat.certificate is not None else None
    else:
        witness, bound = None, None
    rdim = recession_dim(chamber_system(cone, divisor, pi, "closed"))
    coh = reduced_cohomology_dims(restrict(xi, pi), field)
    return ChamberReport(pi=pi, strict_nonempty=strict.feasible,
                         semistrict_nonempty=semi.feasible, lattice_witness=witness,
                         recession_dim=rdim, bounded=rdim == 0,
                         cones_intersect=cones_intersect(cone, pi), cohomology=coh,
                         real_witness=semi.witness, search_bound=bound)


def subsets_in_order(n: int) -> list[frozenset[int]]:
    """All subsets of range(n) in binary counting order (bit i is ray i)."""
    return [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]


def default_jobs() -> int:
    env = os.environ.get("TORIC_MCM_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _classify_star(args):
    return classify_chamber(*args)


def parallel_map(fn, items: Sequence, jobs: int | None = 1):
    """Order-preserving map, optionally across worker processes."""
    jobs = 1 if jobs is None else jobs
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        chunk = max(1, len(items) // (4 * jobs))
        return list(ex.map(fn, items, chunksize=chunk))


def enumerate_chambers(cone: Cone, lattice: FaceLattice | None, divisor: Divisor,
                       xi: SimplicialComplex, field: FieldSpec = QQ, *,
                       ray_cap: int = DEFAULT_RAY_CAP, jobs: int | None = 1) -> list[ChamberReport]:
    if cone.nrays > ray_cap:
        raise TooManyRays(cone.nrays, ray_cap)
    divisor.check(cone)
    work = [(cone, None, divisor, pi, xi, field) for pi in subsets_in_order(cone.nrays)]
    return parallel_map(_classify_star, work, jobs)


def generators_full_rank(cone: Cone, pi: Iterable[int]) -> bool:
    return rank(recession_generators(cone, pi)) == cone.rank
