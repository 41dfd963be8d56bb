import itertools
from math import prod

import pytest
from hypothesis import given, settings

from conftest import svecs
from lhsimplex.lecture_hall import ehrhart
from lhsimplex.polytope_geom import (
    affine_rank,
    contains,
    extend_hull,
    lattice_points,
    lh_facets,
    lh_vertices,
    nvol,
    primitive,
    simplex_polytope,
    visible_facets,
)


def test_lh_vertices_352():
    assert lh_vertices((3, 5, 2)) == [(0, 0, 0), (0, 0, 2), (0, 5, 2), (3, 5, 2)]


def test_facets_primitive_and_tight():
    P = lh_facets((3, 5, 2))
    for normal, rhs in P.inequalities:
        assert primitive(normal, rhs) == (tuple(normal), rhs)
        tight = [v for v in P.vertices if sum(a * b for a, b in zip(normal, v)) == rhs]
        assert len(tight) == P.dim


def test_lattice_points_352():
    pts = lattice_points(lh_facets((3, 5, 2)))
    assert len(pts) == 18 == ehrhart((3, 5, 2))(1)
    assert pts == sorted(pts)


def test_nvol_and_rank():
    assert nvol([(0, 0), (1, 0), (0, 1)]) == 1
    assert nvol([(0, 0), (2, 0), (0, 3)]) == 6
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1


def test_simplex_polytope_contains():
    P = simplex_polytope([(0, 0), (6, 0), (3, 6)])
    assert contains(P, (3, 3)) and not contains(P, (0, 1))


def test_extend_hull_unit_square():
    P = simplex_polytope([(0, 0), (1, 0), (0, 1)])
    Q = extend_hull(P, (1, 1))
    assert sorted(Q.vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert visible_facets(P, (1, 1)) == [i for i, (a, b) in enumerate(P.inequalities) if a[0] + a[1] > b]
    assert contains(Q, (1, 1))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_visible_facet_exhaustive(n):
    for s in itertools.product(range(1, 10), repeat=n):
        P = lh_facets(s).translate((0,) * (n - 1) + (1,))
        assert len(visible_facets(P, (0,) * n)) == 1


@settings(max_examples=40, deadline=None)
@given(svecs(max_len=6, max_entry=9, max_prod=10**6))
def test_single_visible_facet(s):
    n = len(s)
    P = lh_facets(s).translate((0,) * (n - 1) + (1,))
    assert len(visible_facets(P, (0,) * n)) == 1


@settings(max_examples=40, deadline=None)
@given(svecs(max_len=4, max_entry=8, max_prod=500))
def test_lattice_points_count_and_volume(s):
    P = lh_facets(s)
    pts = lattice_points(P)
    assert len(pts) == ehrhart(s)(1)
    assert all(contains(P, x) for x in pts)
    assert nvol(lh_vertices(s)) == prod(s)
