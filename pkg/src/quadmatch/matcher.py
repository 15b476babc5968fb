"""Weighted subsequence alignment of shape symbols against mesh boundary triples.

Every mesh boundary vertex must be matched, in order, to a distinct shape
point; shape points may be skipped (deleted) at no cost.  The objective is
the sum of lattice weights over the matched pairs.  For a fixed shape start
all rotations of the mesh boundary are tried, and ``select_best`` ranks a
whole catalogue by the best rotation of each mesh.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .annotation import AnnotatedBoundary, symbol_sequence
from .lattice import NEG_INFINITY, SYMBOL_INDEX, LatticeWeights
from .mesh import QuadMesh, boundary_triples, validate_class


class AlignmentError(ValueError):
    pass


class NoCandidateError(ValueError):
    pass


@dataclass(frozen=True)
class MatchResult:
    """Outcome of aligning a shape annotation with a mesh boundary.

    ``pairs`` holds ``(shape_entry_index, mesh_position)`` where the mesh
    position counts along the boundary triples after rotation (and mirroring,
    when ``reflected``); use :meth:`boundary_index` to get back to
    ``mesh.boundary_cycle``.  ``shape_start`` is the entry the traversal
    began at.
    """

    utility: int | float
    pairs: tuple[tuple[int, int], ...] = ()
    deleted_shape_indices: tuple[int, ...] = ()
    rotation: int = 0
    mesh_id: str | None = None
    shape_start: int = 0
    reflected: bool = False

    @property
    def feasible(self) -> bool:
        return self.utility != NEG_INFINITY

    def boundary_index(self, position: int, n: int) -> int:
        if self.reflected:
            return (-(self.rotation + position)) % n
        return (self.rotation + position) % n


@dataclass
class Selection:
    ranked: list[MatchResult]
    skipped: list[tuple[str, str]] = field(default_factory=list)

    @property
    def best(self) -> MatchResult:
        return self.ranked[0]


def _as_weight(value):
    return NEG_INFINITY if value == NEG_INFINITY else int(value)


def symbol_codes(symbols) -> np.ndarray:
    try:
        return np.array([SYMBOL_INDEX[c] for c in symbols], dtype=np.int64)
    except KeyError as exc:
        raise AlignmentError(f"unknown shape symbol {exc.args[0]!r}") from None


def weight_matrix(triples, lattice: LatticeWeights) -> np.ndarray:
    """``W[k, j]``: weight of symbol class ``k`` against ``triples[j]``."""
    if not len(triples):
        return np.zeros((3, 0))
    idx = np.array([(t.u, t.v, t.w) for t in triples], dtype=np.int64) - 2
    return lattice.table[:, idx[:, 0], idx[:, 1], idx[:, 2]]


def utility_of(symbols, triples, lattice: LatticeWeights):
    """Sum of pairwise weights; any ``-inf`` pair makes the whole sum ``-inf``."""
    if len(symbols) != len(triples):
        raise AlignmentError(f"cannot score {len(symbols)} symbols against {len(triples)} triples")
    total = 0
    for sym, t in zip(symbols, triples):
        w = lattice.weight(sym, t)
        if w == NEG_INFINITY:
            return NEG_INFINITY
        total += w
    return total


def _walk(codes, weights, table):
    """Leftmost optimal matching read forward off a suffix table."""
    n = weights.shape[1]
    matched = []
    i = j = 0
    while j < n:
        w = weights[codes[i], j]
        if w != NEG_INFINITY and w + table[i + 1, j + 1] == table[i, j]:
            matched.append(i)
            j += 1
        i += 1
    return matched


def _align_codes(codes, weights):
    """Return ``(utility, matched symbol positions)`` for a fixed triple order."""
    m, n = len(codes), weights.shape[1]
    if n > m:
        raise AlignmentError(f"mesh boundary ({n}) is longer than the shape annotation ({m})")
    table = _kernels.suffix_table(codes, weights)
    best = table[0, 0]
    if best == NEG_INFINITY:
        return NEG_INFINITY, []
    return _as_weight(best), _walk(codes, weights, table)


def align(symbols, triples, lattice: LatticeWeights) -> MatchResult:
    """Best utility over all order-preserving injections of ``triples`` into ``symbols``.

    Ties resolve to the lexicographically smallest sequence of matched
    symbol positions.  Pairs and deletions are positions in ``symbols``.
    """
    codes = symbol_codes(symbols)
    weights = weight_matrix(triples, lattice)
    utility, matched = _align_codes(codes, weights)
    m = len(codes)
    if utility == NEG_INFINITY:
        return MatchResult(NEG_INFINITY, (), tuple(range(m)))
    chosen = set(matched)
    return MatchResult(
        utility,
        tuple((i, j) for j, i in enumerate(matched)),
        tuple(i for i in range(m) if i not in chosen),
    )


def minimal_period(seq) -> int:
    """Smallest ``p`` dividing ``len(seq)`` with ``seq`` invariant under rotation by ``p``."""
    n = len(seq)
    if n == 0:
        return 0
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = fail[k - 1]
        if seq[i] == seq[k]:
            k += 1
        fail[i] = k
    p = n - fail[-1]
    return p if n % p == 0 else n


def mirrored_triples(triples):
    """Boundary triples of the mirror-image mesh, still in CCW order."""
    n = len(triples)
    return [triples[(-k) % n].mirrored() for k in range(n)]


@dataclass(frozen=True)
class _Candidate:
    utility: int | float
    start_offset: int
    reflected: bool
    rotation: int


def _scan(symbols, triples, lattice, all_starts=False, allow_reflection=False) -> _Candidate:
    """Best (utility, start, reflection, rotation) without recovering the pairs.

    Candidates are ordered unreflected first, then by shape start offset,
    then by rotation; the first one reaching the maximum wins.
    """
    m, n = len(symbols), len(triples)
    if n > m:
        raise AlignmentError(f"mesh boundary ({n}) is longer than the shape annotation ({m})")
    variants = [(False, triples)]
    if allow_reflection:
        variants.append((True, mirrored_triples(triples)))
    codes = symbol_codes(symbols)
    best = _Candidate(NEG_INFINITY, 0, False, 0)
    for reflected, tri in variants:
        weights = weight_matrix(tri, lattice)
        # Rotations beyond the period repeat earlier ones, so they cannot win ties.
        nrot = max(1, minimal_period(tri))
        for offset in range(m if all_starts else 1):
            scores = _kernels.rotation_scores(np.roll(codes, -offset), weights, nrot)
            r = int(np.argmax(scores))
            if scores[r] > best.utility:
                best = _Candidate(_as_weight(scores[r]), offset, reflected, r)
    return best


def _finish(order, symbols, triples, lattice, cand: _Candidate, mesh_id=None) -> MatchResult:
    """Recover the pairs of a scanned candidate; ``order[i]`` is the entry behind ``symbols[i]``."""
    m = len(symbols)
    if cand.utility == NEG_INFINITY:
        return MatchResult(NEG_INFINITY, (), tuple(order), 0, mesh_id, order[0] if m else 0, False)
    tri = mirrored_triples(triples) if cand.reflected else list(triples)
    n = len(tri)
    tri = [tri[(cand.rotation + j) % n] for j in range(n)]
    codes = np.roll(symbol_codes(symbols), -cand.start_offset)
    utility, matched = _align_codes(codes, weight_matrix(tri, lattice))
    if utility != cand.utility:
        raise AssertionError("rotation scan and alignment disagree")
    entry = [order[(cand.start_offset + i) % m] for i in range(m)]
    start = entry[0]
    chosen = set(matched)
    return MatchResult(
        utility,
        tuple((entry[i], j) for j, i in enumerate(matched)),
        tuple(entry[i] for i in range(m) if i not in chosen),
        cand.rotation,
        mesh_id,
        start,
        cand.reflected,
    )


def best_rotation_match(
    ab: AnnotatedBoundary,
    mesh: QuadMesh,
    lattice: LatticeWeights,
    all_starts: bool = False,
    allow_reflection: bool = False,
) -> MatchResult:
    """Align ``ab`` against every rotation of the mesh boundary and keep the best.

    The shape start stays fixed unless ``all_starts``; ``allow_reflection``
    additionally tries the mirror image of the mesh.  Ties go to the
    smallest rotation.
    """
    triples = boundary_triples(mesh)
    symbols = symbol_sequence(ab)
    cand = _scan(symbols, triples, lattice, all_starts, allow_reflection)
    return _finish(ab.traversal(), symbols, triples, lattice, cand, mesh.id)


def best_rotation_of_triples(symbols, triples, lattice: LatticeWeights, all_starts=False,
                             allow_reflection=False) -> MatchResult:
    """Rotation search on raw sequences; pairs index ``symbols`` directly."""
    cand = _scan(symbols, triples, lattice, all_starts, allow_reflection)
    return _finish(list(range(len(symbols))), symbols, triples, lattice, cand)


def _mesh_key(mesh: QuadMesh, k: int) -> str:
    return mesh.id if mesh.id is not None else f"#{k}"


def select_best(
    ab: AnnotatedBoundary,
    catalogue,
    lattice: LatticeWeights,
    top_k: int | None = None,
    all_starts: bool = False,
    allow_reflection: bool = False,
    workers: int = 1,
) -> Selection:
    """Rank catalogue meshes by their best rotation match against ``ab``.

    Meshes outside the class or with a boundary longer than the annotation
    are skipped and reported.  Ranking is by utility descending, then mesh
    id, then rotation; infeasible meshes come last.  Only the ``top_k``
    leaders get their alignments recovered.
    """
    meshes = list(catalogue)
    if not meshes:
        raise NoCandidateError("catalogue is empty")
    symbols = symbol_sequence(ab)
    m = len(symbols)
    skipped, jobs = [], []
    for k, mesh in enumerate(meshes):
        key = _mesh_key(mesh, k)
        report = validate_class(mesh)
        if not report.ok:
            skipped.append((key, "class: " + ", ".join(report.failed_rules())))
            continue
        n = len(mesh.boundary_cycle)
        if n > m:
            skipped.append((key, f"boundary length {n} exceeds annotation length {m}"))
            continue
        jobs.append((key, mesh))
    if not jobs:
        raise NoCandidateError("no candidate mesh: every catalogue mesh was skipped")

    # Triples are rebuilt per mesh rather than held for the whole catalogue,
    # so working memory stays at one mesh's tables.
    def scan(job):
        return _scan(symbols, boundary_triples(job[1]), lattice, all_starts, allow_reflection)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            cands = list(pool.map(scan, jobs))
    else:
        cands = [scan(job) for job in jobs]

    def rank_key(i):
        u = cands[i].utility
        infeasible = u == NEG_INFINITY
        return (infeasible, 0 if infeasible else -u, jobs[i][0], cands[i].rotation)

    order = sorted(range(len(jobs)), key=rank_key)
    if top_k is not None:
        order = order[:top_k]
    traversal = ab.traversal()
    ranked = [_finish(traversal, symbols, boundary_triples(jobs[i][1]), lattice, cands[i], jobs[i][0])
              for i in order]
    return Selection(ranked, skipped)


def result_document(result: MatchResult, skipped=()) -> dict:
    return {
        "mesh_id": result.mesh_id,
        "rotation": result.rotation,
        "utility": "-inf" if result.utility == NEG_INFINITY else result.utility,
        "feasible": result.feasible,
        "pairs": [list(p) for p in result.pairs],
        "deleted_shape_indices": list(result.deleted_shape_indices),
        "shape_start": result.shape_start,
        "reflected": result.reflected,
        "skipped": [{"mesh_id": mid, "reason": reason} for mid, reason in skipped],
    }


def result_from_document(doc) -> MatchResult:
    utility = doc["utility"]
    return MatchResult(
        NEG_INFINITY if utility == "-inf" else int(utility),
        tuple((int(a), int(b)) for a, b in doc.get("pairs", [])),
        tuple(int(i) for i in doc.get("deleted_shape_indices", [])),
        int(doc.get("rotation", 0)),
        doc.get("mesh_id"),
        int(doc.get("shape_start", 0)),
        bool(doc.get("reflected", False)),
    )

