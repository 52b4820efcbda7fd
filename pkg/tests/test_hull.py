from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from moflow.hull import face_dimension, rank, upper_image_facets, vertex_indices

F = Fraction


def test_single_point_gives_coordinate_facets():
    facets = upper_image_facets([(1, 2, 3)], 3)
    assert [f.normal for f in facets] == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert [f.offset for f in facets] == [3, 2, 1]


def test_fig2_extremes():
    pts = [(8, 16, 6), (12, 12, 6), (16, 8, 10), (13, 11, 7), (12, 12, 10), (9, 15, 7)]
    facets = upper_image_facets(pts, 3)
    got = {(f.normal, f.offset) for f in facets}
    assert got == {((0, 0, 1), 6), ((0, 1, 0), 8), ((0, 1, 1), 18), ((1, 0, 0), 8), ((1, 1, 0), 24)}
    assert [pts[i] for i in vertex_indices(pts, facets, 3)] == [(8, 16, 6), (12, 12, 6), (16, 8, 10)]


def test_rational_points():
    facets = upper_image_facets([(F(1, 2), 1), (1, F(1, 3))], 2)
    edge = next(f for f in facets if all(f.normal))
    assert edge.normal == (4, 3) and edge.offset == 5


def test_rank_and_dimension():
    assert rank([(1, 0, 0), (2, 0, 0), (0, 1, 1)]) == 2
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    assert face_dimension(pts, {0, 1, 2}, set(), 3) == 2
    assert face_dimension(pts, {0}, {2}, 3) == 1
    assert face_dimension(pts, set(), set(), 3) == -1


point = st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))


@settings(max_examples=60, deadline=None)
@given(st.lists(point, min_size=1, max_size=9))
def test_facets_support_every_point(pts):
    facets = upper_image_facets(pts, 3)
    for f in facets:
        assert all(x >= 0 for x in f.normal) and any(f.normal)
        values = [sum(a * b for a, b in zip(f.normal, p)) for p in pts]
        assert min(values) == f.offset
        assert f.points == {i for i, v in enumerate(values) if v == f.offset}
        # each facet spans a hyperplane
        assert face_dimension(pts, f.points, f.rays, 3) == 2


@settings(max_examples=60, deadline=None)
@given(st.lists(point, min_size=1, max_size=9))
def test_vertices_are_not_dominated_by_hull(pts):
    facets = upper_image_facets(pts, 3)
    verts = vertex_indices(pts, facets, 3)
    assert verts
    # a vertex minimises a strictly positive weight uniquely among the points
    for i in verts:
        others = [p for j, p in enumerate(pts) if p != pts[i]]
        assert all(not all(a <= b for a, b in zip(p, pts[i])) for p in others)


def test_grid_cube():
    pts = list(product([0, 1], repeat=3))
    facets = upper_image_facets(pts, 3)
    assert [f.normal for f in facets] == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert [pts[i] for i in vertex_indices(pts, facets, 3)] == [(0, 0, 0)]
