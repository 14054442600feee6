from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EXAMPLE_SUPPORT, convenient_supports, fermat
from newtonnumber.core import (
    SupportSet,
    build_polyhedron,
    gamma_minus,
    in_newton_polyhedron,
    minimal_points,
    newton_number,
    nu_from_volumes,
    plane_label,
    restrict,
)
from newtonnumber.errors import EmptySupport, GeometryError, MalformedInput, NotConvenient, NotLattice
from newtonnumber.exactgeom import Halfspace


def test_symmetric_simplex_polyhedron():
    poly = build_polyhedron(SupportSet.of([(2, 0, 0), (0, 2, 0), (0, 0, 2)]))
    assert poly.convenient
    assert poly.axis_intercepts == (2, 2, 2)
    assert len(poly.compact_facets) == 1
    f = poly.compact_facets[0]
    assert f.halfspace == Halfspace.make((1, 1, 1), 2)
    assert set(f.vertices) == {(2, 0, 0), (0, 2, 0), (0, 0, 2)}


def test_example_polyhedron(example_support):
    poly = build_polyhedron(example_support)
    assert poly.convenient
    assert poly.axis_intercepts == (6, 6, 4)
    # frozen regression value: a quadrilateral and a triangle
    facets = {f.halfspace: set(f.vertices) for f in poly.compact_facets}
    assert facets == {
        Halfspace.make((1, 1, 4), 6): {(6, 0, 0), (0, 6, 0), (2, 0, 1), (0, 2, 1)},
        Halfspace.make((3, 3, 2), 8): {(2, 0, 1), (0, 2, 1), (0, 0, 4)},
    }


def test_origin_support():
    poly = build_polyhedron(SupportSet.of([(0, 0, 0)]))
    assert poly.compact_facets == ()
    assert poly.convenient
    assert poly.axis_intercepts == (0, 0, 0)


def test_facet_vertices_are_ccw_from_polyhedron_side(example_support):
    from newtonnumber.exactgeom import cross, dot, sub
    for f in build_polyhedron(example_support).compact_facets:
        vs = f.vertices
        for i in range(len(vs)):
            a, b, c = vs[i], vs[(i + 1) % len(vs)], vs[(i + 2) % len(vs)]
            assert dot(cross(sub(b, a), sub(c, b)), f.halfspace.normal) > 0


def test_not_convenient_polyhedron():
    poly = build_polyhedron(SupportSet.of([(2, 0, 0), (0, 2, 0), (1, 1, 1)]))
    assert not poly.convenient
    assert poly.axis_intercepts == (2, 2, None)
    assert poly.contains((0, 0, 5)) is False
    assert poly.contains((1, 1, 1))
    with pytest.raises(NotConvenient):
        gamma_minus(poly)


def test_minimal_points_drop_dominated_and_interior():
    pts = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (2, 2, 2), (1, 1, 1), (2, 0, 0)]
    # (1,1,1) lies on the plane x+y+z=3 above x+y+z=2: inside
    assert minimal_points(pts) == ((0, 0, 2), (0, 2, 0), (2, 0, 0))
    assert minimal_points([(1, 1, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3)]) == (
        (0, 0, 3), (0, 3, 0), (1, 1, 0), (3, 0, 0))


def test_restrict_examples(example_support):
    assert restrict(example_support, (0, 1)).points == ((0, 6), (6, 0))
    assert restrict(example_support, (0, 1, 2)) == example_support
    assert restrict(SupportSet.of([(2, 0, 0), (0, 2, 0), (0, 0, 1)]), (0,)).points == ((2,),)
    with pytest.raises(NotConvenient):
        restrict(SupportSet.of([(1, 1, 1)]), (0,))
    with pytest.raises(MalformedInput):
        restrict(example_support, ())


def test_gamma_minus_symmetric_simplex():
    region = gamma_minus(build_polyhedron(fermat(2, 2, 2)))
    assert region.volume == Fraction(4, 3)
    assert sorted(region.plane_restrictions.values()) == [2, 2, 2]
    assert sorted(region.axis_restrictions.values()) == [2, 2, 2]
    assert region.v0 == 1
    assert region.box == (2, 2, 2)


def test_gamma_minus_empty():
    region = gamma_minus(build_polyhedron(SupportSet.of([(0, 0, 0)])))
    assert region.empty
    assert region.volume == 0
    assert region.volumes() == [0, 0, 0, 0]


def test_gamma_minus_flat_simplex():
    region = gamma_minus(build_polyhedron(SupportSet.of([(2, 0, 0), (0, 2, 0), (0, 0, 1)])))
    assert region.volume == Fraction(2, 3)
    assert region.plane_restrictions == {(0, 1): 2, (0, 2): 1, (1, 2): 1}
    assert region.axis_restrictions == {(0,): 2, (1,): 2, (2,): 1}
    assert region.volumes() == [1, 5, 4, Fraction(2, 3)]


def test_gamma_minus_example_volumes(example_support):
    region = gamma_minus(build_polyhedron(example_support))
    # under x+y+4z>=6 and 3x+3y+2z>=8 inside [0,6]x[0,6]x[0,4]
    v0, v1, v2, v3 = region.volumes()
    assert (v0, v1) == (1, 16)
    # Oxy triangle 18; each side trace is (0,0),(6,0),(2,1),(0,4) with area 3 + 4
    assert v2 == 18 + 7 + 7
    assert v3 == Fraction(32, 3)
    assert 6 * v3 - 2 * v2 + v1 - v0 == 15


def test_newton_number_examples(example_support):
    assert newton_number(example_support) == 15
    assert newton_number(EXAMPLE_SUPPORT + [(3, 2, 0)]) == 13
    assert newton_number(fermat(3, 4, 5)) == 24
    assert newton_number([(0, 0, 0)]) == 0


@pytest.mark.parametrize("a", range(1, 9))
def test_fermat_family(a):
    for b in range(1, 9):
        for c in range(1, 9):
            assert newton_number(fermat(a, b, c)) == (a - 1) * (b - 1) * (c - 1)


@pytest.mark.parametrize("a, b", [(1, 1), (2, 3), (5, 4), (7, 7)])
def test_plane_and_line_cases(a, b):
    assert newton_number([(a, 0), (0, b)]) == (a - 1) * (b - 1)
    assert newton_number([(a,)]) == a - 1


def test_plane_curve_with_interior_vertex():
    # y^4 + x^2 y + x^4: Newton polygon with vertices (0,4),(2,1),(4,0)
    assert newton_number([(0, 4), (2, 1), (4, 0)]) == 5


def test_nu_from_volumes_rejects_fractions():
    with pytest.raises(GeometryError):
        nu_from_volumes([0, 0, 0, Fraction(1, 7)])


def test_input_errors():
    with pytest.raises(EmptySupport):
        SupportSet.of([])
    with pytest.raises(NotLattice):
        SupportSet.of([(1, -1, 0)])
    with pytest.raises(NotLattice):
        SupportSet.of([(1, 0.5, 0)])
    with pytest.raises(NotLattice):
        SupportSet.of([(True, 0, 0)])
    with pytest.raises(MalformedInput):
        SupportSet.of([(1, 0, 0), (1, 0)])
    with pytest.raises(MalformedInput):
        SupportSet.of([(1, 0, 0, 0)])
    with pytest.raises(NotConvenient):
        newton_number([(1, 1, 1)])


def test_plane_labels():
    assert [plane_label(i) for i in range(3)] == ["x=0", "y=0", "z=0"]


@settings(max_examples=60, deadline=None)
@given(convenient_supports(), st.sampled_from(list(permutations(range(3)))))
def test_permutation_equivariance(support, sigma):
    moved = support.permuted(sigma)
    assert newton_number(moved) == newton_number(support)
    poly, mpoly = build_polyhedron(support), build_polyhedron(moved)
    image = {Halfspace.make(tuple(f.halfspace.normal[s] for s in sigma), f.halfspace.offset)
             for f in poly.compact_facets}
    assert image == {f.halfspace for f in mpoly.compact_facets}


@settings(max_examples=60, deadline=None)
@given(convenient_supports())
def test_restriction_consistency(support):
    for axes in [(0, 1), (0, 2), (1, 2)]:
        expected = sorted(tuple(a[i] for i in axes) for a in support.points
                          if all(a[j] == 0 for j in range(3) if j not in axes))
        assert list(restrict(support, axes).points) == expected


@settings(max_examples=60, deadline=None)
@given(convenient_supports())
def test_support_points_are_the_vertices(support):
    pts = support.points
    for i, p in enumerate(pts):
        assert not in_newton_polyhedron(p, pts[:i] + pts[i + 1:])
    poly = build_polyhedron(support)
    for f in poly.compact_facets:
        assert all(f.halfspace.contains(p) for p in pts)
        assert len(f.vertices) >= 3
        assert all(c > 0 for c in f.halfspace.normal)


@settings(max_examples=80, deadline=None)
@given(convenient_supports())
def test_nu_zero_criterion(support):
    nu = newton_number(support)
    assert nu >= 0
    m = build_polyhedron(support).axis_intercepts
    assert (nu == 0) == (0 in m or 1 in m)


@settings(max_examples=60, deadline=None)
@given(convenient_supports())
def test_contains_matches_generic_membership(support):
    poly = build_polyhedron(support)
    m = poly.axis_intercepts
    for x in range(m[0] + 1):
        for y in range(m[1] + 1):
            for z in (0, m[2] // 2, m[2]):
                p = (x, y, z)
                assert poly.contains(p) == in_newton_polyhedron(p, support.points)
