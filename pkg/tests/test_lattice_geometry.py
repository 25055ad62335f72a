import pytest
from hypothesis import given, settings, strategies as st

from toric_mcm.errors import (DimensionMismatch, NotFullDimensional, NotPrimitive,
                              NotStrictlyConvex, RedundantRay)
from toric_mcm.intmat import dot
from toric_mcm.lattice_geometry import face_lattice, is_star_closed, minimal_face, star, validate_cone

from helpers import CUBE, CUBE_TWISTED, FIVE_RAY, FOUR_RAY, cones, exposed_faces


@pytest.fixture(scope="module")
def four():
    c = validate_cone(3, FOUR_RAY)
    return c, face_lattice(c)


def test_validation_errors_name_the_ray():
    with pytest.raises(NotStrictlyConvex) as e:
        validate_cone(2, [(1, 0), (-1, 0)])
    assert e.value.index == 0
    with pytest.raises(RedundantRay) as e:
        validate_cone(3, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
    assert e.value.index == 2
    with pytest.raises(NotPrimitive) as e:
        validate_cone(2, [(1, 0), (2, 2)])
    assert e.value.index == 1
    with pytest.raises(NotPrimitive):
        validate_cone(2, [(0, 0), (1, 0)])
    with pytest.raises(NotFullDimensional):
        validate_cone(3, [(1, 0, 0), (0, 1, 0)])
    with pytest.raises(DimensionMismatch):
        validate_cone(3, [(1, 0)])


def test_four_ray_faces(four):
    c, lat = four
    assert len(lat.faces) == 10
    facets = {tuple(sorted(f.rays)) for f, _ in lat.facets}
    assert facets == {(0, 1), (1, 2), (2, 3), (0, 3)}
    assert {f.rays for f in lat.faces} == exposed_faces(FOUR_RAY)
    for f, n in lat.facets:
        vals = [dot(n, r) for r in c.rays]
        assert all((v == 0) == (i in f.rays) for i, v in enumerate(vals))
        assert all(v >= 0 for v in vals)


@pytest.mark.parametrize("rays,count,nfacets", [(CUBE, 28, 6), (CUBE_TWISTED, 28, 6), (FIVE_RAY, 20, 5)])
def test_face_counts_against_dual_scan(rays, count, nfacets):
    lat = face_lattice(validate_cone(4, rays))
    assert len(lat.faces) == count and len(lat.facets) == nfacets
    assert {f.rays for f in lat.faces} == exposed_faces(rays)


def test_boolean_lattice_for_coordinate_cone():
    for d in (1, 2, 3, 4):
        lat = face_lattice(validate_cone(d, [tuple(int(i == j) for j in range(d)) for i in range(d)]))
        assert len(lat.faces) == 2 ** d
        assert all(f.dim == len(f.rays) for f in lat.faces)


def test_minimal_face(four):
    c, lat = four
    assert minimal_face(lat, {0, 1}).rays == {0, 1}
    assert minimal_face(lat, {0, 2}) == lat.top
    assert minimal_face(lat, set()) == lat.zero and lat.zero.dim == 0


def test_star(four):
    c, lat = four
    assert star(lat, [lat.top]) == {lat.top}
    assert star(lat, [lat.zero]) == set(lat.faces)
    ray1 = lat.face({0})
    assert {f.rays for f in star(lat, [ray1])} == {frozenset(s) for s in ({0}, {0, 1}, {0, 3}, {0, 1, 2, 3})}
    assert is_star_closed(lat, star(lat, [ray1]))
    assert not is_star_closed(lat, [ray1])


@settings(max_examples=60, deadline=None)
@given(cones(ranks=(2, 3, 4), max_rays=6), st.data())
def test_lattice_invariants(c, data):
    lat = face_lattice(c)
    sets = {f.rays for f in lat.faces}
    assert frozenset() in sets and frozenset(range(c.nrays)) in sets
    for a in sets:
        for b in sets:
            assert a & b in sets
    for f in lat.faces:
        assert minimal_face(lat, f.rays) == f
        containing = [g.rays for g, _ in lat.facets if f.rays <= g.rays]
        inter = frozenset(range(c.nrays))
        for g in containing:
            inter &= g
        assert inter == f.rays
    pi = data.draw(st.sets(st.integers(0, c.nrays - 1)))
    more = pi | data.draw(st.sets(st.integers(0, c.nrays - 1)))
    assert pi <= minimal_face(lat, pi).rays
    assert minimal_face(lat, pi).rays <= minimal_face(lat, more).rays
    fam = data.draw(st.sets(st.sampled_from(lat.faces), max_size=3))
    s = star(lat, fam)
    assert star(lat, s) == s
