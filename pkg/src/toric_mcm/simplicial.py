"""Subcomplexes of the ordered simplex on the rays and their cohomology.

Faces are frozensets of vertex indices.  Orientation signs always come from the
global vertex order: inserting vertex ``v`` into face ``G`` carries the sign
``(-1)**k`` where ``k`` counts the vertices of ``G`` below ``v``.  A face with
``s`` vertices sits in cochain degree ``s - 1``, so the empty face is the
augmentation in degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .intmat import rank


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field, determined up to the dimensions we compute by its characteristic."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {self.characteristic}")


QQ = FieldSpec(0)

Simplex = frozenset[int]


@dataclass(frozen=True)
class SimplicialComplex:
    """A downward-closed family of subsets of ``range(nvertices)``.

    The void complex (no faces at all) is allowed and differs from ``{∅}``.
    """

    nvertices: int
    faces: frozenset[Simplex]

    def __post_init__(self):
        for f in self.faces:
            for v in f:
                if not 0 <= v < self.nvertices:
                    raise ValueError(f"vertex {v} outside the universe of size {self.nvertices}")
                if f - {v} not in self.faces:
                    raise ValueError(f"face {sorted(f)} is present but {sorted(f - {v})} is not")

    @classmethod
    def from_faces(cls, nvertices: int, faces: Iterable[Iterable[int]]) -> SimplicialComplex:
        return cls(nvertices, frozenset(frozenset(f) for f in faces))

    @classmethod
    def generated_by(cls, nvertices: int, maximal: Iterable[Iterable[int]]) -> SimplicialComplex:
        """Smallest complex containing the given faces."""
        out: set[Simplex] = set()
        for m in maximal:
            m = tuple(sorted(m))
            if frozenset(m) in out:
                continue
            for k in range(len(m) + 1):
                out.update(frozenset(c) for c in combinations(m, k))
        return cls(nvertices, frozenset(out))

    @classmethod
    def simplex(cls, nvertices: int, vertices: Iterable[int]) -> SimplicialComplex:
        return cls.generated_by(nvertices, [vertices])

    @classmethod
    def void(cls, nvertices: int) -> SimplicialComplex:
        return cls(nvertices, frozenset())

    def __contains__(self, face) -> bool:
        return frozenset(face) in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def f_vector(self) -> dict[int, int]:
        """Number of faces per cochain degree (size - 1)."""
        out: dict[int, int] = {}
        for f in self.faces:
            out[len(f) - 1] = out.get(len(f) - 1, 0) + 1
        return out

    def euler_characteristic(self) -> int:
        """Reduced Euler characteristic: sum of (-1)**deg over all faces, ∅ included."""
        return sum((-1) ** (len(f) - 1) for f in self.faces)

    def sorted_faces(self) -> list[tuple[int, ...]]:
        return sorted((tuple(sorted(f)) for f in self.faces), key=lambda t: (len(t), t))


@dataclass(frozen=True)
class CohomologyDims:
    """Dimensions indexed by cohomological degree; absent degrees read as 0."""

    start: int
    values: tuple[int, ...]

    def __getitem__(self, degree: int) -> int:
        i = degree - self.start
        if 0 <= i < len(self.values):
            return self.values[i]
        return 0

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    @property
    def degrees(self) -> range:
        return range(self.start, self.start + len(self.values))

    def nonzero(self) -> dict[int, int]:
        return {d: v for d, v in zip(self.degrees, self.values) if v}

    def is_zero(self) -> bool:
        return not any(self.values)

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.degrees, self.values))


@dataclass(frozen=True)
class CochainComplex:
    """Finite cochain complex of free modules with explicit integer coboundaries.

    ``bases[k]`` lists the generators in degree ``start + k``; ``maps[k]`` is the
    matrix of the coboundary from degree ``start + k`` to ``start + k + 1``,
    written as a list of rows indexed by the target basis.
    """

    start: int
    bases: tuple[tuple, ...]
    maps: tuple[tuple[tuple[int, ...], ...], ...]

    def rank_of_map(self, k: int, p: int = 0) -> int:
        m = self.maps[k]
        if not m or not m[0]:
            return 0
        return rank(m, p)

    def is_complex(self) -> bool:
        for k in range(len(self.maps) - 1):
            a, b = self.maps[k], self.maps[k + 1]
            if not a or not b or not a[0]:
                continue
            for row in b:
                for j in range(len(a[0])):
                    if sum(row[i] * a[i][j] for i in range(len(row))):
                        return False
        return True

    def cohomology(self, field: FieldSpec = QQ, length: int | None = None) -> CohomologyDims:
        p = field.characteristic
        ranks = [self.rank_of_map(k, p) for k in range(len(self.maps))]
        dims = []
        for k, basis in enumerate(self.bases):
            r_out = ranks[k] if k < len(ranks) else 0
            r_in = ranks[k - 1] if k >= 1 else 0
            dims.append(len(basis) - r_out - r_in)
        if length is not None:
            dims = (dims + [0] * length)[:length]
        return CohomologyDims(self.start, tuple(dims))


def _complex_from_cells(cells: Iterable[Simplex], top: int) -> CochainComplex:
    """Coboundary complex spanned by ``cells`` in degrees -1..top.

    ``cells`` must be closed under adding vertices within the ambient family
    (either a full complex or a relative complex of non-faces).
    """
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for c in cells:
        by_size.setdefault(len(c), []).append(tuple(sorted(c)))
    bases = []
    for s in range(0, top + 2):
        bases.append(tuple(sorted(by_size.get(s, []))))
    maps = []
    for s in range(0, top + 1):
        src = {f: i for i, f in enumerate(bases[s])}
        rows = []
        for g in bases[s + 1]:
            row = [0] * len(src)
            for k, v in enumerate(g):
                f = g[:k] + g[k + 1:]
                j = src.get(f)
                if j is not None:
                    row[j] = -1 if k % 2 else 1
            rows.append(tuple(row))
        maps.append(tuple(rows))
    return CochainComplex(-1, tuple(bases), tuple(maps))


_PHANTOM = ("*",)


def augmented_cochain(pi: Iterable[int]) -> CochainComplex:
    """Augmented cochain complex of the full simplex on ``pi``.

    For ``pi`` empty this is the two-term exact complex ``0 -> Z -> Z -> 0``:
    the empty face in degree -1 maps isomorphically onto one extra generator in
    degree 0.
    """
    pi = tuple(sorted(set(pi)))
    if not pi:
        return CochainComplex(-1, (((),), (_PHANTOM,)), (((1,),),))
    cells = [frozenset(c) for k in range(len(pi) + 1) for c in combinations(pi, k)]
    return _complex_from_cells(cells, len(pi) - 1)


def cochain_complex(k: SimplicialComplex) -> CochainComplex:
    top = max((len(f) for f in k.faces), default=0) - 1
    return _complex_from_cells(k.faces, max(top, -1))


def restrict(k: SimplicialComplex, pi: Iterable[int]) -> SimplicialComplex:
    """Faces of ``k`` contained in ``pi``."""
    pi = frozenset(pi)
    if len(k.faces) <= 1 << len(pi):
        faces = frozenset(f for f in k.faces if f <= pi)
    else:
        sp = sorted(pi)
        faces = frozenset(frozenset(c) for r in range(len(sp) + 1)
                          for c in combinations(sp, r) if frozenset(c) in k.faces)
    return SimplicialComplex(k.nvertices, faces)


@lru_cache(maxsize=200_000)
def _reduced_dims(faces: frozenset[Simplex], p: int) -> tuple[int, ...]:
    top = max((len(f) for f in faces), default=0) - 1
    cx = _complex_from_cells(faces, max(top, -1))
    return cx.cohomology(FieldSpec(p)).values


def reduced_cohomology_dims(k: SimplicialComplex, field: FieldSpec = QQ) -> CohomologyDims:
    """dim of reduced cohomology in degrees -1..n-1, n the number of vertices."""
    vals = _reduced_dims(k.faces, field.characteristic)
    length = k.nvertices + 1
    vals = (tuple(vals) + (0,) * length)[:length]
    return CohomologyDims(-1, vals)


def relative_complex(pi: Iterable[int], k: SimplicialComplex) -> CochainComplex:
    """Cochains of the simplex on ``pi`` relative to ``restrict(k, pi)``.

    Generated by the subsets of ``pi`` that are not faces of ``k``; these are
    closed under the coboundary.  For ``pi`` empty the two-term convention of
    :func:`augmented_cochain` is used, the extra degree-0 generator never being
    a face of ``k``.
    """
    pi = tuple(sorted(set(pi)))
    if not pi:
        if frozenset() in k.faces:
            return CochainComplex(-1, ((), (_PHANTOM,)), (((),),))
        return augmented_cochain(())
    cells = [frozenset(c) for r in range(len(pi) + 1) for c in combinations(pi, r)
             if frozenset(c) not in k.faces]
    return _complex_from_cells(cells, len(pi) - 1)


def relative_cohomology_dims(pi: Iterable[int], k: SimplicialComplex,
                             field: FieldSpec = QQ) -> CohomologyDims:
    """Relative reduced cohomology of (simplex on pi, pi ∩ k), degrees -1..n-1."""
    cx = relative_complex(pi, k)
    dims = cx.cohomology(field)
    length = k.nvertices + 1
    vals = tuple(dims[d] for d in range(-1, -1 + length))
    return CohomologyDims(-1, vals)
