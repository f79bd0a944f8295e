
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import Matrix

from nashfan.constants import A3_GENERATORS
from nashfan.errors import DimensionUnsupported, InvalidSemigroup, NotInSemigroup, NotStrictlyConvex
from nashfan.semigroup import (
    AffineSemigroup,
    Cone,
    det2,
    dot,
    dual_generators,
    is_regular_cone,
    normalize_coordinates,
    primitive,
    sub,
)

small = st.integers(-4, 4)
rays = st.tuples(small, small).filter(any)


def box(radius: int):
    x, y = np.meshgrid(np.arange(-radius, radius + 1), np.arange(-radius, radius + 1), indexing="ij")
    return list(zip(x.ravel().tolist(), y.ravel().tolist()))


def brute_force_generators(cone: Cone):
    """Irreducible nonzero lattice points of the dual cone, enumerated in a box around the edge parallelogram."""
    edges = []
    for k in range(2):
        other = cone.rays[1 - k]
        edge = primitive((-other[1], other[0]))
        edges.append(edge if dot(cone.rays[k], edge) > 0 else tuple(-a for a in edge))
    radius = sum(max(map(abs, e)) for e in edges)

    def inside(v):
        return all(dot(ray, v) >= 0 for ray in cone.rays)

    points = [v for v in box(radius) if any(v) and inside(v)]
    return {g for g in points if not any(h != g and inside(sub(g, h)) for h in points)}


def test_dual_generators_a3(a3):
    assert a3.generators == A3_GENERATORS
    assert a3.edge_generators == ((1, 0), (3, 4))
    assert a3.sigma.rays == ((4, -3), (0, 1))


@pytest.mark.parametrize(
    "cone_rays, expected",
    [
        ([(0, 1), (4, -3)], {(1, 0), (3, 4), (1, 1)}),
        ([(1, 0), (0, 1)], {(1, 0), (0, 1)}),
        ([(0, 1), (2, -1)], {(1, 0), (1, 2), (1, 1)}),
    ],
)
def test_dual_generators(cone_rays, expected):
    assert set(dual_generators(Cone.from_rays(cone_rays)).generators) == expected


@settings(max_examples=30, deadline=None)
@given(first=rays, second=rays)
def test_dual_generators_against_enumeration(first, second):
    assume(det2(first, second) != 0)
    cone = Cone.from_rays([first, second])
    semigroup = dual_generators(cone)
    transform = semigroup.transform
    assert abs(Matrix(transform).det()) == 1
    expected = {tuple(dot(row, g) for row in transform) for g in brute_force_generators(cone)}
    assert set(semigroup.generators) == expected
    assert all(a >= 0 for g in semigroup.generators for a in g)
    assert semigroup.is_regular == is_regular_cone(cone)


def test_contains_and_divide(a3):
    assert a3.contains((1, 1))
    assert a3.contains((0, 0))
    assert not a3.contains((2, 3))
    assert a3.divide((1, 0), (2, 0)) == (1, 0)
    assert a3.divide((1, 1), (3, 4)) is None
    assert a3.divide((3, 4), (3, 4)) == (0, 0)
    assert a3.divides((1, 1), (2, 1))


def test_check_rejects_outside(a3):
    with pytest.raises(NotInSemigroup):
        a3.check((2, 3))
    with pytest.raises(NotInSemigroup):
        a3.check((1, 1, 1))


def test_min_common_multiples(a3, plane):
    assert plane.min_common_multiples((2, 0), (1, 1)) == [(2, 1)]
    assert set(a3.min_common_multiples((1, 0), (1, 1))) == {(2, 1), (4, 4)}
    assert a3.min_common_multiples((3, 4), (3, 4)) == [(3, 4)]


@settings(max_examples=40, deadline=None)
@given(u=st.tuples(st.integers(0, 5), st.integers(0, 5)), v=st.tuples(st.integers(0, 5), st.integers(0, 5)))
def test_min_common_multiples_against_enumeration(a3, u, v):
    assume(a3.contains(u) and a3.contains(v))
    bounds = [max(dot(n, u), dot(n, v)) for n in a3.facet_normals]

    def in_region(x):
        return all(dot(n, x) >= b for n, b in zip(a3.facet_normals, bounds))

    region = [x for x in box(40) if in_region(x)]
    minimal = {x for x in region if not any(in_region(sub(x, g)) for g in a3.generators)}
    assert set(a3.min_common_multiples(u, v)) == minimal


def test_lattice_points_and_edge_steps(a3):
    assert a3.edge_steps() == (4, 4)
    assert a3.lattice_points((0, 0), (4, 4)) == [(0, 0), (1, 1), (2, 2), (3, 3)]
    assert a3.lattice_points((0, 0), (0, 4)) == []


def test_is_regular_cone():
    assert is_regular_cone(Cone.from_rays([(1, 0), (0, 1)]))
    assert not is_regular_cone(Cone.from_rays([(2, -1), (0, 1)]))
    assert is_regular_cone(Cone.from_rays([(1, 1), (1, 2)]))


def test_cone_orientation_and_errors():
    cone = Cone.from_rays([(0, 2), (4, -3)])
    assert cone.rays == ((4, -3), (0, 1))
    assert cone.contains((2, -1)) and cone.in_interior((2, -1))
    assert cone.contains((0, 1)) and not cone.in_interior((0, 1))
    assert not cone.contains((-1, 0))
    with pytest.raises(NotStrictlyConvex):
        Cone.from_rays([(1, 2), (-2, -4)])
    with pytest.raises(NotStrictlyConvex):
        Cone(((0, 1), (1, 0)))
    assert Cone.from_dict(cone.to_dict()) == cone


def test_higher_dimensional_cones():
    Cone(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(NotStrictlyConvex):
        Cone(((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(DimensionUnsupported):
        Cone(((1, 0, 0), (0, 1, 0), (0, 0, 1))).contains((1, 1, 1))


def test_from_generators_detects_edges(a3):
    shuffled = AffineSemigroup.from_generators([(1, 1), (3, 4), (1, 0)], [(0, 1), (4, -3)])
    assert shuffled == a3


def test_non_minimal_generators_rejected():
    with pytest.raises(InvalidSemigroup):
        AffineSemigroup(generators=((1, 0), (0, 1), (1, 1)), facet_normals=((1, 0), (0, 1)), edge_count=2)


def test_semigroup_round_trip(a3):
    assert AffineSemigroup.from_dict(a3.to_dict()) == a3


def test_normalize_coordinates():
    cone = Cone.from_rays([(1, 1), (-1, 1)])
    raw = AffineSemigroup(generators=((1, 1), (-1, 1), (0, 1)), facet_normals=cone.rays, edge_count=2)
    normalized, transform = normalize_coordinates(raw)
    assert all(a >= 0 for g in normalized.generators for a in g)
    assert abs(Matrix(transform).det()) == 1
    images = {tuple(dot(row, g) for row in transform) for g in raw.generators}
    assert set(normalized.generators) == images
    for g in raw.generators:
        image = tuple(dot(row, g) for row in transform)
        assert sorted(raw.facet_coordinates(g)) == sorted(normalized.facet_coordinates(image))
    assert normalize_coordinates(normalized)[0] is normalized

