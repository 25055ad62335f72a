import itertools
from fractions import Fraction

import pytest

from toric_mcm.chambers import (chamber_system, classify_chamber, cones_intersect,
                                enumerate_chambers, generators_full_rank, subsets_in_order)
from toric_mcm.errors import TooManyRays
from toric_mcm.lattice_geometry import face_lattice, validate_cone
from toric_mcm.toric_data import Divisor, MonomialIdeal, cosupport, sigma_m, support

from helpers import CUBE, CUBE_TWISTED, FIVE_RAY, FOUR_RAY


def setup(rank, rays):
    c = validate_cone(rank, rays)
    lat = face_lattice(c)
    xi = cosupport(lat, support(c, lat, MonomialIdeal.maximal()))
    return c, lat, xi


@pytest.fixture(scope="module")
def four():
    return setup(3, FOUR_RAY)


def test_chamber_system_rows(four):
    c, _, _ = four
    sys_ = chamber_system(c, Divisor((0, -2, 0, 0)), {1, 3}, "semistrict")
    assert [(r.normal, r.relation, r.rhs) for r in sys_.rows] == [
        ((1, 0, 0), ">=", 0), ((0, 1, 0), "<", 2), ((-1, 1, 1), ">=", 0), ((0, 0, 1), "<", 0)]
    assert [r.relation for r in chamber_system(c, Divisor.zero(4), set(), "closed").rows] == [">="] * 4
    assert [r.relation for r in chamber_system(c, Divisor.zero(4), range(4), "strict").rows] == ["<"] * 4


def test_cones_intersect(four):
    c, _, _ = four
    assert not cones_intersect(c, {0})
    assert not cones_intersect(c, set()) and not cones_intersect(c, range(4))
    assert cones_intersect(c, {0, 2})  # n1 + n3 = n2 + ... lies in both
    cube = validate_cone(4, CUBE)
    assert cones_intersect(cube, {0, 2, 3, 5})
    assert not cones_intersect(validate_cone(4, CUBE_TWISTED), {0, 2, 3, 5})


def grid_patterns(cone, divisor, step=Fraction(1, 3), box=4):
    """Ray subsets realized as Sigma_m by rational grid points avoiding all hyperplanes."""
    out = set()
    pts = [Fraction(i) * step for i in range(int(-box / step), int(box / step) + 1)]
    for m in itertools.product(pts, repeat=cone.rank):
        vals = [sum(a * b for a, b in zip(m, n)) + c for n, c in zip(cone.rays, divisor)]
        if all(v != 0 for v in vals):
            out.add(frozenset(i for i, v in enumerate(vals) if v < 0))
    return out


@pytest.mark.parametrize("k", [1, 2])
def test_four_ray_enumeration_matches_grid(four, k):
    c, lat, xi = four
    d = Divisor((0, -k, 0, 0))
    reps = enumerate_chambers(c, lat, d, xi)
    assert [r.pi for r in reps] == subsets_in_order(4)
    nonempty = {r.pi for r in reps if r.strict_nonempty}
    assert nonempty == grid_patterns(c, d, step=Fraction(1, 6), box=3)
    assert len(nonempty) == 15
    assert frozenset({0, 2}) not in nonempty


def test_four_ray_bounded_chamber(four):
    c, lat, xi = four
    r = classify_chamber(c, lat, Divisor((0, -2, 0, 0)), {1, 3}, xi)
    assert r.strict_nonempty and r.bounded and r.lattice_witness is not None
    assert r.cohomology.nonzero() == {0: 1}
    assert sigma_m(c, Divisor((0, -2, 0, 0)), r.lattice_witness) == {1, 3}
    r1 = classify_chamber(c, lat, Divisor((0, -1, 0, 0)), {1, 3}, xi)
    assert r1.bounded and r1.semistrict_nonempty and r1.lattice_witness is None


def test_lattice_witness_realizes_pi(four):
    c, lat, xi = four
    d = Divisor((1, -3, 2, 0))
    for r in enumerate_chambers(c, lat, d, xi):
        if r.lattice_witness is not None:
            assert sigma_m(c, d, r.lattice_witness) == r.pi


def test_parallel_matches_serial(four):
    c, lat, xi = four
    d = Divisor((0, -2, 0, 0))
    assert enumerate_chambers(c, lat, d, xi, jobs=2) == enumerate_chambers(c, lat, d, xi, jobs=1)


def test_ray_cap():
    c, lat, xi = setup(4, CUBE)
    with pytest.raises(TooManyRays):
        enumerate_chambers(c, lat, Divisor.zero(8), xi, ray_cap=7)


def test_five_ray_has_no_two_point_subset():
    c, lat, xi = setup(4, FIVE_RAY)
    # every pair of rays lies on a proper face, so no Pi meets the cosupport in two points
    assert all(frozenset(p) in xi.faces for p in itertools.combinations(range(5), 2))


def test_full_rank_generators(four):
    c, _, _ = four
    assert all(generators_full_rank(c, pi) for pi in subsets_in_order(4))
