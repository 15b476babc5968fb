import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadmatch.annotation import (
    AnnotatedBoundary, AnnotationError, Shape, ShapeError, annotate, annotation_document,
    annotation_from_document, classify_corners, interior_angles, symbol_sequence,
)

from conftest import star_polygon, unit_square


def regular_polygon(n, radius=1.0):
    return Shape(tuple((radius * math.cos(2 * math.pi * k / n), radius * math.sin(2 * math.pi * k / n))
                       for k in range(n)))


def test_square_corners_convex(square):
    assert classify_corners(square, 0.26) == ["x"] * 4


def test_l_shape_has_one_reflex_corner(lshape):
    labels = classify_corners(lshape, 0.26)
    assert labels.count("x") == 5
    assert labels == ["x", "x", "x", "v", "x", "x"]


def test_regular_100_gon_is_all_straight():
    # Interior angle (n - 2) pi / n = 0.98 pi, i.e. 0.063 rad short of straight.
    expected = 98 * math.pi / 100
    shape = regular_polygon(100)
    assert np.allclose(interior_angles(shape), expected)
    assert math.pi - expected < 0.26
    assert set(classify_corners(shape, 0.26)) == {"s"}


def test_clockwise_input_classified_the_same(lshape):
    assert classify_corners(lshape.reversed()) == classify_corners(lshape)[::-1]


@pytest.mark.parametrize("points", [
    ((0, 0), (1, 0)),
    ((0, 0), (1, 0), (1, 0), (0, 1)),
    ((0, 0), (1, 1), (1, 0), (0, 1)),  # bow tie
    ((0, 0), (2, 0), (1, 0), (1, 1)),  # folds back along the base
])
def test_invalid_shapes_rejected(points):
    with pytest.raises(ShapeError):
        Shape(points)


def test_repeated_point_named():
    with pytest.raises(ShapeError, match="vertex 1"):
        Shape(((0, 0), (1, 0), (1, 0), (0, 1)))


def test_square_spacing_half(square):
    ab = annotate(square, spacing=0.5)
    assert symbol_sequence(ab) == "xsxsxsxs"


def test_square_count_twelve(square):
    ab = annotate(square, count=12)
    assert ab.symbols.count("x") == 4
    assert ab.symbols.count("s") == 8
    assert symbol_sequence(ab) == "xssxssxssxss"


def test_rectangle_count_ten_largest_remainder():
    # Sides 2, 1, 2, 1 of a 6 perimeter share 6 extra points exactly as 2/1/2/1.
    rect = Shape(((0, 0), (2, 0), (2, 1), (0, 1)))
    ab = annotate(rect, count=10)
    assert len(ab) == 10
    assert symbol_sequence(ab) == "xssxsxssxs"


def test_apportionment_with_remainders():
    # Perimeter 6, 7 extra: quotas 7/3, 7/6, 7/3, 7/6 -> floors 2,1,2,1 and the
    # leftover point goes to the first chain with the largest remainder (0.333 vs 0.167).
    rect = Shape(((0, 0), (2, 0), (2, 1), (0, 1)))
    ab = annotate(rect, count=11)
    assert symbol_sequence(ab) == "xsssxsxssxs"


def test_count_smaller_than_corners(square):
    with pytest.raises(AnnotationError):
        annotate(square, count=3)


def test_both_modes_rejected(square):
    with pytest.raises(AnnotationError):
        annotate(square, spacing=0.5, count=8)


def test_default_spacing_is_perimeter_over_twenty(square):
    # Perimeter 4 -> spacing 0.2 -> round(1 / 0.2) - 1 = 4 points per side.
    assert annotate(square) == annotate(square, spacing=0.2)
    assert symbol_sequence(annotate(square)) == "xssss" * 4


def test_entries_lie_on_boundary_and_corners_on_vertices(lshape):
    ab = annotate(lshape, spacing=0.25)
    verts = set(lshape.points)
    for e in ab.entries:
        if e.symbol in "xv":
            assert e.position in verts
            assert e.source == "corner"
    sampled = [e.position for e in ab.entries if e.source == "sampled"]
    # All edges of the L are axis-aligned with integer endpoints.
    for x, y in sampled:
        assert math.isclose(x, round(x)) or math.isclose(y, round(y))


def test_entries_in_ccw_order():
    ab = annotate(unit_square().reversed(), spacing=0.5)
    from quadmatch.annotation import signed_area
    assert signed_area(ab.positions) > 0


def test_start_is_first_convex_corner_in_input_order():
    # Vertex 0 is straight, vertex 1 is the first convex one.
    shape = Shape(((0.5, 0), (1, 0), (1, 1), (0, 1), (0, 0)))
    ab = annotate(shape, spacing=10)
    assert ab.entries[ab.start_index].position == (1.0, 0.0)
    assert symbol_sequence(ab)[0] == "x"


def test_explicit_start_index(lshape):
    ab = annotate(lshape, spacing=10, start_index=3)
    assert ab.entries[ab.start_index].position == lshape.points[3]
    assert symbol_sequence(ab)[0] == "v"


def test_start_index_survives_orientation_flip(lshape):
    cw = lshape.reversed()
    ab = annotate(cw, spacing=10, start_index=2)  # input vertex 2 of the reversed list is (1, 1)
    assert ab.entries[ab.start_index].position == cw.points[2]


def test_all_straight_shape_falls_back_to_entry_zero():
    ab = annotate(regular_polygon(100), count=100)
    assert ab.start_index == 0
    assert set(ab.symbols) == {"s"}


def test_near_straight_vertices_kept_as_s(square):
    shape = Shape(((0, 0), (0.5, 0.01), (1, 0), (1, 1), (0, 1)))
    ab = annotate(shape, count=5)
    assert [e.symbol for e in ab.entries if e.source == "corner"].count("s") == 1
    assert symbol_sequence(ab).count("x") == 4


def test_symbol_sequence_l_shape_rotation(lshape):
    seq = symbol_sequence(annotate(lshape, count=6))
    doubled = "xxvxxx" * 2
    assert seq in doubled


def test_empty_annotation_rejected():
    with pytest.raises(AnnotationError):
        symbol_sequence(AnnotatedBoundary(()))


def test_document_round_trip(lshape):
    ab = annotate(lshape, spacing=0.3)
    back = annotation_from_document(annotation_document(ab))
    assert back.symbols == ab.symbols
    assert back.positions == ab.positions
    assert back.start_index == ab.start_index


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 12), st.floats(0.05, 40))
def test_scaling_leaves_labels_and_count_mode_unchanged(seed, k, factor):
    shape = star_polygon(np.random.default_rng(seed), k)
    scaled = shape.scaled(factor)
    assert classify_corners(scaled) == classify_corners(shape)
    assert annotate(scaled, count=k + 9).symbols == annotate(shape, count=k + 9).symbols


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 12), st.floats(0.03, 0.5))
def test_doubling_spacing_never_adds_points(seed, k, h):
    shape = star_polygon(np.random.default_rng(seed), k)
    fine = annotate(shape, spacing=h)
    coarse = annotate(shape, spacing=2 * h)

    def per_chain(ab):
        # Sampled points between consecutive x/v corners, chain by chain.
        seq = ab.entries
        anchors = [i for i, e in enumerate(seq) if e.symbol != "s"] or [0]
        counts = []
        for a, b in zip(anchors, anchors[1:] + [anchors[0] + len(seq)]):
            counts.append(sum(1 for i in range(a + 1, b) if seq[i % len(seq)].source == "sampled"))
        return counts

    assert all(c2 <= c1 for c1, c2 in zip(per_chain(fine), per_chain(coarse)))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 14))
def test_turning_consistent_with_simple_loop(seed, k):
    shape = star_polygon(np.random.default_rng(seed), k)
    tol = 0.26
    labels = classify_corners(shape, tol)
    angles = interior_angles(shape)
    turning = [math.pi - a for a in angles]
    corner_turn = sum(t for t, lab in zip(turning, labels) if lab != "s")
    assert abs(corner_turn - 2 * math.pi) <= tol * len(labels) + 1e-9
