import pytest
from hypothesis import given, strategies as st

from quadmatch.catalogue import generate_grid
from quadmatch.mesh import (
    BoundaryLoopError, DegenerateQuadError, DisconnectedMeshError, MeshClassError, NonManifoldEdgeError,
    NotADiskError, OrientationError, ValenceTriple, VertexRangeError, boundary_triples, build_mesh,
    validate_class,
)

from conftest import six_quad_fan


def test_two_by_two_grid_structure():
    mesh = generate_grid(2, 2)
    assert mesh.num_vertices == 9
    assert mesh.num_edges == 12
    assert len(mesh.boundary_cycle) == 8
    assert not mesh.is_boundary_vertex(4)
    assert mesh.valence[4] == 4


def test_single_quad():
    mesh = build_mesh(4, [(0, 1, 2, 3)])
    assert mesh.num_edges == 4
    assert mesh.boundary_vertices == {0, 1, 2, 3}
    assert mesh.valence == (2, 2, 2, 2)


def test_two_quads_sharing_an_edge():
    mesh = build_mesh(6, [(0, 1, 4, 3), (1, 2, 5, 4)])
    assert mesh.num_edges == 7
    assert mesh.internal_edges == [(1, 4)]
    assert mesh.is_boundary_vertex(1) and mesh.is_boundary_vertex(4)


def test_edges_stored_once_regardless_of_direction():
    mesh = build_mesh(6, [(0, 1, 4, 3), (1, 2, 5, 4)])
    assert mesh.is_internal_edge(4, 1) and mesh.is_internal_edge(1, 4)
    assert len(set(mesh.edges)) == mesh.num_edges


def test_boundary_cycle_keeps_interior_on_the_left():
    mesh = generate_grid(2, 2)
    # Row-major 3x3 vertex ids; CCW around the square starting at 0.
    assert mesh.boundary_cycle == (0, 1, 2, 5, 8, 7, 6, 3)


@pytest.mark.parametrize("num_vertices, quads, error", [
    (4, [(0, 1, 1, 3)], DegenerateQuadError),
    (4, [(0, 1, 2, 7)], VertexRangeError),
    (4, [(0, 1, 2)], DegenerateQuadError),
    # Third quad hanging on edge 1-4 as well.
    (8, [(0, 1, 4, 3), (1, 2, 5, 4), (4, 1, 6, 7)], NonManifoldEdgeError),
    # Second quad wound the other way.
    (6, [(0, 1, 4, 3), (1, 4, 5, 2)], OrientationError),
    (8, [(0, 1, 2, 3), (4, 5, 6, 7)], DisconnectedMeshError),
    (5, [(0, 1, 2, 3)], DisconnectedMeshError),
    # Two quads touching at the single vertex 2.
    (7, [(0, 1, 2, 3), (2, 4, 5, 6)], BoundaryLoopError),
])
def test_build_errors_are_distinct(num_vertices, quads, error):
    with pytest.raises(error):
        build_mesh(num_vertices, quads)


def test_annulus_has_two_boundary_loops():
    # 3x3 grid with the center quad removed.
    cols = 4
    quads = []
    for row in range(3):
        for col in range(3):
            if (row, col) != (1, 1):
                a = row * cols + col
                quads.append((a, a + 1, a + 1 + cols, a + cols))
    with pytest.raises(BoundaryLoopError):
        build_mesh(16, quads)


def test_punctured_torus_is_not_a_disk():
    # 3x3 torus grid with one quad removed: one boundary loop but V - E + Q = -1.
    def vid(r, c):
        return (r % 3) * 3 + (c % 3)

    quads = [(vid(r, c), vid(r, c + 1), vid(r + 1, c + 1), vid(r + 1, c))
             for r in range(3) for c in range(3) if (r, c) != (0, 0)]
    with pytest.raises(NotADiskError):
        build_mesh(9, quads)


def test_validate_class_grid_ok():
    report = validate_class(generate_grid(2, 2))
    assert report.ok
    assert report.conforming and report.single_boundary_loop and report.max_valence_ok and report.invariant_I_ok


def test_validate_class_strip_fails_invariant():
    report = validate_class(generate_grid(1, 2))
    assert not report.invariant_I_ok
    assert report.max_valence_ok
    assert report.failed_rules() == ["invariant_I"]


def test_validate_class_valence_six():
    mesh = six_quad_fan()
    assert mesh.valence[0] == 6
    report = validate_class(mesh)
    assert not report.max_valence_ok
    assert report.invariant_I_ok
    assert report.violations == (("max_valence", 0),)


def test_report_flags_match_violations():
    for mesh in (generate_grid(2, 2), generate_grid(1, 3), six_quad_fan()):
        report = validate_class(mesh)
        flags = report.conforming and report.single_boundary_loop and report.max_valence_ok and report.invariant_I_ok
        assert flags == (not report.violations)


def test_boundary_triples_grid():
    triples = boundary_triples(generate_grid(2, 2))
    assert triples[0] == ValenceTriple(3, 2, 3)
    assert triples[1] == ValenceTriple(2, 3, 2)
    assert len(triples) == 8


def test_boundary_triples_single_quad():
    assert boundary_triples(build_mesh(4, [(0, 1, 2, 3)])) == [ValenceTriple(2, 2, 2)] * 4


def test_boundary_triples_neighbour_roles():
    # 3x2 grid: vertex 1 has valence 3, its CCW neighbour 2 has valence 3, CW neighbour 0 valence 2.
    mesh = generate_grid(3, 2)
    cyc = mesh.boundary_cycle
    k = cyc.index(1)
    assert boundary_triples(mesh)[k] == ValenceTriple(3, 3, 2)


def test_boundary_triples_refuse_invalid_mesh():
    with pytest.raises(MeshClassError):
        boundary_triples(generate_grid(1, 2))


def test_triple_range():
    with pytest.raises(ValueError):
        ValenceTriple(1, 3, 3)
    with pytest.raises(ValueError):
        ValenceTriple(3, 6, 3)


grid_dims = st.tuples(st.integers(1, 7), st.integers(1, 7))


@given(grid_dims)
def test_grid_counting_invariants(dims):
    p, q = dims
    mesh = generate_grid(p, q)
    assert mesh.euler_characteristic() == 1
    assert sum(mesh.valence) == 2 * mesh.num_edges
    assert len(mesh.boundary_cycle) == len(mesh.boundary_vertices) == 2 * (p + q)


@given(st.tuples(st.integers(2, 7), st.integers(2, 7)))
def test_reversing_winding_swaps_neighbour_roles(dims):
    mesh = generate_grid(*dims)
    flipped = build_mesh(mesh.num_vertices, [q[::-1] for q in mesh.quads])
    forward = dict(zip(mesh.boundary_cycle, boundary_triples(mesh)))
    backward = dict(zip(flipped.boundary_cycle, boundary_triples(flipped)))
    assert forward.keys() == backward.keys()
    for v, t in forward.items():
        assert backward[v] == t.mirrored()


@given(st.integers(2, 7), st.integers(2, 7))
def test_grids_accepted_strips_rejected(p, q):
    assert validate_class(generate_grid(p, q)).ok
    assert validate_class(generate_grid(1, q)).failed_rules() == ["invariant_I"]
