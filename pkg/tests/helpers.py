"""Independent oracles, fixed cones and hypothesis strategies shared by the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import ceil, floor, gcd

from hypothesis import strategies as st

from toric_mcm.errors import NotFullDimensional, RedundantRay
from toric_mcm.lattice_geometry import validate_cone
from toric_mcm.simplicial import SimplicialComplex

FOUR_RAY = [(1, 0, 0), (0, 1, 0), (-1, 1, 1), (0, 0, 1)]
FIVE_RAY = [(1, 0, 0, 0), (0, 1, 0, 0), (-1, 1, 1, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
CUBE = [(0, 0, 0, 1), (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1),
        (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1), (1, 1, 1, 1)]
CUBE_TWISTED = list(CUBE)
CUBE_TWISTED[3] = (0, -1, 1, 1)
CUBE_TWISTED[5] = (1, -1, 1, 1)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


# --- face oracle: scan small dual vectors ------------------------------------

def exposed_faces(rays, box=3):
    """Ray sets cut out by dual vectors m in [-box, box]^d that are >= 0 on every ray.

    Every face is exposed by some integral m; for the small fixed cones the
    box is large enough to see all of them.
    """
    d = len(rays[0])
    out = set()
    for m in itertools.product(range(-box, box + 1), repeat=d):
        vals = [dot(m, r) for r in rays]
        if all(v >= 0 for v in vals):
            out.add(frozenset(i for i, v in enumerate(vals) if v == 0))
    return out


# --- cohomology oracles --------------------------------------------------------

def components(faces):
    """Number of connected components of the 1-skeleton (0 for complexes without vertices)."""
    verts = {v for f in faces for v in f}
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in faces:
        if len(f) == 2:
            a, b = f
            parent[find(a)] = find(b)
    return len({find(v) for v in verts})


def reduced_h0_oracle(k: SimplicialComplex) -> int:
    c = components(k.faces)
    return max(c - 1, 0)


def reduced_euler(k: SimplicialComplex) -> int:
    return sum((-1) ** (len(f) - 1) for f in k.faces)


# --- lattice point oracle ----------------------------------------------------------

def brute_force_points(system, box):
    """All integer points of [-box, box]^d satisfying the system.

    The last coordinate is handled exactly by intersecting per-row intervals,
    the others by plain enumeration.
    """
    d = system.dim
    rows = system.rows
    found = []
    for head in itertools.product(range(-box, box + 1), repeat=d - 1):
        lo, hi = -box, box
        ok = True
        for r in rows:
            a = r.normal[-1]
            rest = dot(r.normal[:-1], head)
            b = r.rhs - rest
            rel = r.relation
            if a == 0:
                if not {"<": 0 < b, "<=": 0 <= b, ">": 0 > b, ">=": 0 >= b, "=": 0 == b}[rel]:
                    ok = False
                    break
                continue
            if a < 0:
                a, b = -a, -b
                rel = {"<": ">", "<=": ">=", ">": "<", ">=": "<=", "=": "="}[rel]
            q = Fraction(b, a)
            if rel == "<":
                hi = min(hi, ceil(q) - 1)
            elif rel == "<=":
                hi = min(hi, floor(q))
            elif rel == ">":
                lo = max(lo, floor(q) + 1)
            elif rel == ">=":
                lo = max(lo, ceil(q))
            else:
                if q.denominator != 1:
                    ok = False
                    break
                lo = max(lo, int(q))
                hi = min(hi, int(q))
            if lo > hi:
                ok = False
                break
        if ok and lo <= hi:
            found.append(head + (lo,))
    return found


# --- cone generation -------------------------------------------------------------

def repair_cone(rank, vectors):
    """Turn candidate vectors with positive last entry into a valid cone.

    Vectors are made primitive and deduplicated; redundant rays are dropped one
    at a time.  Falls back to the coordinate cone when too few rays remain.
    """
    rays = []
    for v in vectors:
        g = 0
        for a in v:
            g = gcd(g, a)
        v = tuple(a // g for a in v)
        if v not in rays:
            rays.append(v)
    while True:
        try:
            return validate_cone(rank, rays)
        except RedundantRay as e:
            del rays[e.index]
        except NotFullDimensional:
            return validate_cone(rank, [tuple(int(i == j) for j in range(rank)) for i in range(rank)])


@st.composite
def cones(draw, ranks=(2, 3), max_rays=5, spread=2):
    d = draw(st.sampled_from(ranks))
    k = draw(st.integers(min_value=d, max_value=max_rays))
    vecs = []
    for _ in range(k):
        head = tuple(draw(st.integers(-spread, spread)) for _ in range(d - 1))
        h = draw(st.integers(1, 2))
        vecs.append(head + (h,))
    return repair_cone(d, vecs)


@st.composite
def cones_with_divisor(draw, ranks=(2, 3), max_rays=5, coeff=3):
    c = draw(cones(ranks=ranks, max_rays=max_rays))
    div = tuple(draw(st.integers(-coeff, coeff)) for _ in range(c.nrays))
    return c, div


@st.composite
def complexes(draw, max_vertices=6):
    n = draw(st.integers(1, max_vertices))
    gens = draw(st.lists(st.sets(st.integers(0, n - 1), max_size=n), max_size=6))
    if draw(st.booleans()) and not gens:
        return SimplicialComplex.void(n)
    return SimplicialComplex.generated_by(n, gens + [set()])


# --- acceptance bookkeeping -----------------------------------------------------------

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


class criterion:
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    def __init__(self, key: str, text: str):
        self.key = key
        self.text = text

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        detail = self.text if ok else f"{self.text} -- {exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        ACCEPTANCE[self.key] = (ok, detail)
        print(f"CRITERION {self.key}: {'PASS' if ok else 'FAIL'} - {detail}")
        return False


def acceptance_lines() -> list[str]:
    def order(k):
        return tuple(int(p) for p in k.split("."))
    lines = []
    for key in sorted(ACCEPTANCE, key=order):
        ok, detail = ACCEPTANCE[key]
        lines.append(f"CRITERION {key}: {'PASS' if ok else 'FAIL'} - {detail}")
    return lines


@st.composite
def seeded_complexes(draw, max_vertices=8):
    """Complexes built from a drawn seed; spreads examples far more evenly than ``complexes``."""
    rng = random.Random(draw(st.integers(0, 2**32)))
    n = rng.randint(1, 3) if rng.random() < 0.1 else rng.randint(4, max_vertices)
    gens = [set(rng.sample(range(n), rng.randint(1, max(1, n - 1))))
            for _ in range(rng.randint(0, 7))]
    if not gens and rng.random() < 0.3:
        return SimplicialComplex.void(n)
    return SimplicialComplex.generated_by(n, gens + [set()])
