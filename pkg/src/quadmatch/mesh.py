"""Abstract quadrilateral meshes: connectivity, boundary extraction, class checks.

A mesh is just a vertex count plus a list of quads, each quad a 4-tuple of
vertex indices in counter-clockwise winding.  Everything else (edges,
valences, the boundary loop) is derived once at build time.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property

MAX_VALENCE = 5


class MeshError(ValueError):
    """Base class for meshes that cannot be built."""


class DegenerateQuadError(MeshError):
    pass


class VertexRangeError(MeshError):
    pass


class NonManifoldEdgeError(MeshError):
    pass


class OrientationError(MeshError):
    pass


class DisconnectedMeshError(MeshError):
    pass


class BoundaryLoopError(MeshError):
    pass


class NotADiskError(MeshError):
    pass


class MeshClassError(ValueError):
    """Raised when an operation needs a mesh from the supported class."""


def edge_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True, eq=False)
class QuadMesh:
    num_vertices: int
    quads: tuple[tuple[int, int, int, int], ...]
    edge_quad_count: dict[tuple[int, int], int] = field(repr=False)
    valence: tuple[int, ...] = field(repr=False)
    boundary_cycle: tuple[int, ...] = field(repr=False)
    id: str | None = None

    @property
    def num_edges(self) -> int:
        return len(self.edge_quad_count)

    @property
    def num_quads(self) -> int:
        return len(self.quads)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.edge_quad_count)

    @cached_property
    def boundary_vertices(self) -> frozenset[int]:
        return frozenset(self.boundary_cycle)

    def is_boundary_vertex(self, v: int) -> bool:
        return v in self.boundary_vertices

    def is_internal_edge(self, a: int, b: int) -> bool:
        return self.edge_quad_count[edge_key(a, b)] == 2

    @property
    def internal_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.edges if self.edge_quad_count[e] == 2]

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_quads

    def with_id(self, mesh_id: str | None) -> QuadMesh:
        return QuadMesh(
            self.num_vertices, self.quads, self.edge_quad_count,
            self.valence, self.boundary_cycle, mesh_id,
        )

    def __eq__(self, other):
        if not isinstance(other, QuadMesh):
            return NotImplemented
        return (self.id, self.num_vertices, self.quads) == (
            other.id, other.num_vertices, other.quads)

    def __hash__(self):
        return hash((self.id, self.num_vertices, self.quads))


def build_mesh(num_vertices: int, quads, mesh_id: str | None = None) -> QuadMesh:
    """Build a :class:`QuadMesh` and derive its boundary structure.

    Raises a distinct :class:`MeshError` subclass for each kind of defect:
    out-of-range or repeated indices, edges shared by more than two quads,
    inconsistent winding, disconnected pieces, anything other than exactly
    one boundary loop, and non-disk topology.
    """
    quads = tuple(tuple(int(i) for i in q) for q in quads)
    if num_vertices < 1 or not quads:
        raise MeshError("a mesh needs at least one quad")
    for qi, q in enumerate(quads):
        if len(q) != 4:
            raise DegenerateQuadError(f"quad {qi} has {len(q)} vertices, expected 4")
        for v in q:
            if not 0 <= v < num_vertices:
                raise VertexRangeError(f"quad {qi} references vertex {v} outside 0..{num_vertices - 1}")
        if len(set(q)) != 4:
            raise DegenerateQuadError(f"quad {qi} repeats a vertex: {q}")

    counts: dict[tuple[int, int], int] = defaultdict(int)
    for q in quads:
        for k in range(4):
            counts[edge_key(q[k], q[(k + 1) % 4])] += 1
    for e, c in counts.items():
        if c > 2:
            raise NonManifoldEdgeError(f"edge {e} is shared by {c} quads")
    directed: dict[tuple[int, int], int] = {}
    for qi, q in enumerate(quads):
        for k in range(4):
            a, b = q[k], q[(k + 1) % 4]
            if (a, b) in directed:
                raise OrientationError(
                    f"half-edge {a}->{b} used by quads {directed[(a, b)]} and {qi}; "
                    "quads must share one consistent winding")
            directed[(a, b)] = qi

    valence = [0] * num_vertices
    adjacency: dict[int, list[int]] = defaultdict(list)
    for a, b in counts:
        valence[a] += 1
        valence[b] += 1
        adjacency[a].append(b)
        adjacency[b].append(a)

    seen = {quads[0][0]}
    stack = [quads[0][0]]
    while stack:
        v = stack.pop()
        for u in adjacency[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != num_vertices:
        missing = min(set(range(num_vertices)) - seen)
        raise DisconnectedMeshError(f"vertex {missing} is not connected to vertex {quads[0][0]}")

    # Boundary half-edges keep the quad's winding, so the interior is on their left.
    successor: dict[int, int] = {}
    for (a, b) in directed:
        if (b, a) not in directed:
            if a in successor:
                raise BoundaryLoopError(f"boundary pinches at vertex {a}")
            successor[a] = b
    if not successor:
        raise BoundaryLoopError("mesh has no boundary loop")
    start = min(successor)
    cycle = [start]
    v = successor[start]
    while v != start:
        cycle.append(v)
        v = successor[v]
    if len(cycle) != len(successor):
        raise BoundaryLoopError(
            f"mesh has more than one boundary loop ({len(cycle)} of {len(successor)} boundary vertices reached)")

    if num_vertices - len(counts) + len(quads) != 1:
        raise NotADiskError(
            f"V - E + Q = {num_vertices - len(counts) + len(quads)}, expected 1 for a disk")

    return QuadMesh(num_vertices, quads, dict(counts), tuple(valence), tuple(cycle), mesh_id)


@dataclass(frozen=True)
class ClassReport:
    conforming: bool = True
    single_boundary_loop: bool = True
    max_valence_ok: bool = True
    invariant_I_ok: bool = True
    violations: tuple[tuple[str, object], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def failed_rules(self) -> list[str]:
        return sorted({rule for rule, _ in self.violations})


def validate_class(mesh: QuadMesh) -> ClassReport:
    """Check the mesh against the catalogue class: valence <= 5, invariant (I).

    Conformity and the single boundary loop are already enforced by
    :func:`build_mesh`, so for a built mesh those flags are always true.
    """
    violations = []
    for v, val in enumerate(mesh.valence):
        if val > MAX_VALENCE:
            violations.append(("max_valence", v))
    boundary = mesh.boundary_vertices
    for a, b in mesh.internal_edges:
        if a in boundary and b in boundary:
            violations.append(("invariant_I", (a, b)))
    rules = {rule for rule, _ in violations}
    return ClassReport(
        max_valence_ok="max_valence" not in rules,
        invariant_I_ok="invariant_I" not in rules,
        violations=tuple(violations),
    )


@dataclass(frozen=True, order=True)
class ValenceTriple:
    """Boundary vertex valence ``v`` with its CCW (``u``) and CW (``w``) neighbours'."""

    u: int
    v: int
    w: int

    def __post_init__(self):
        for name in ("u", "v", "w"):
            val = getattr(self, name)
            if isinstance(val, bool) or not isinstance(val, int) or not 2 <= val <= MAX_VALENCE:
                raise ValueError(f"triple component {name}={val!r} outside 2..{MAX_VALENCE}")

    def mirrored(self) -> ValenceTriple:
        return ValenceTriple(self.w, self.v, self.u)

    def as_list(self) -> list[int]:
        return [self.u, self.v, self.w]


def boundary_triples(mesh: QuadMesh) -> list[ValenceTriple]:
    """One triple per boundary vertex, in boundary-cycle order.

    The cycle runs counter-clockwise, so the CCW neighbour of ``cycle[k]`` is
    ``cycle[k + 1]`` and the CW neighbour is ``cycle[k - 1]``.
    """
    report = validate_class(mesh)
    if not report.ok:
        raise MeshClassError(
            f"mesh {mesh.id or '<unnamed>'} is outside the supported class: "
            + ", ".join(report.failed_rules()))
    cyc = mesh.boundary_cycle
    n = len(cyc)
    val = mesh.valence
    return [ValenceTriple(val[cyc[(k + 1) % n]], val[cyc[k]], val[cyc[k - 1]]) for k in range(n)]
