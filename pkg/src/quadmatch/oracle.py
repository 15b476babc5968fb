"""Exhaustive reference matchers for checking the dynamic program on small inputs.

Nothing here touches the DP kernels: alignments are found by enumerating
every strictly increasing injection of the mesh triples into the shape
symbols, in lexicographic order, and keeping the first maximum.
"""

from __future__ import annotations

import itertools
import math

from .annotation import AnnotatedBoundary, symbol_sequence
from .lattice import NEG_INFINITY, LatticeWeights
from .matcher import MatchResult, utility_of
from .mesh import QuadMesh, boundary_triples

MAX_INJECTIONS = 10**6


class OracleTooLarge(ValueError):
    pass


def _guard(m: int, n: int, factor: int = 1) -> None:
    if n > m:
        raise ValueError(f"mesh boundary ({n}) is longer than the shape annotation ({m})")
    count = math.comb(m, n) * factor
    if count > MAX_INJECTIONS:
        raise OracleTooLarge(f"{count} injections (m={m}, n={n}) exceed the oracle limit of {MAX_INJECTIONS}")


def _best_injection(symbols, triples, lattice):
    best_u, best_idx = NEG_INFINITY, None
    for idx in itertools.combinations(range(len(symbols)), len(triples)):
        u = utility_of([symbols[i] for i in idx], triples, lattice)
        if u != NEG_INFINITY and (best_idx is None or u > best_u):
            best_u, best_idx = u, idx
    return best_u, best_idx


def brute_force_align(symbols, triples, lattice: LatticeWeights) -> MatchResult:
    m, n = len(symbols), len(triples)
    _guard(m, n)
    u, idx = _best_injection(symbols, list(triples), lattice)
    if idx is None:
        return MatchResult(NEG_INFINITY, (), tuple(range(m)))
    return MatchResult(
        u,
        tuple((i, j) for j, i in enumerate(idx)),
        tuple(i for i in range(m) if i not in idx),
    )


def _rotations(triples):
    n = len(triples)
    return [[triples[(r + j) % n] for j in range(n)] for r in range(max(n, 1))]


def _mirror(triples):
    # Mirror image of a CCW boundary: walk it backwards and swap each vertex's neighbours.
    rev = [triples[0]] + list(reversed(triples[1:]))
    return [type(t)(t.w, t.v, t.u) for t in rev]


def brute_force_rotation_of_triples(symbols, triples, lattice: LatticeWeights, order=None,
                                    all_starts=False, allow_reflection=False) -> MatchResult:
    """Exhaustive counterpart of the matcher's rotation search on raw sequences."""
    m, n = len(symbols), len(triples)
    order = list(range(m)) if order is None else list(order)
    variants = [(False, list(triples))]
    if allow_reflection:
        variants.append((True, _mirror(list(triples))))
    starts = range(m) if all_starts else [0]
    _guard(m, n, max(n, 1) * len(starts) * len(variants))
    best = None
    for reflected, tri in variants:
        for off in starts:
            rolled = symbols[off:] + symbols[:off]
            for r, rotated in enumerate(_rotations(tri)):
                u, idx = _best_injection(rolled, rotated, lattice)
                if idx is not None and (best is None or u > best[0]):
                    best = (u, idx, r, off, reflected)
    if best is None:
        return MatchResult(NEG_INFINITY, (), tuple(order), 0, None, order[0] if m else 0, False)
    u, idx, r, off, reflected = best
    entry = [order[(off + i) % m] for i in range(m)]
    return MatchResult(
        u,
        tuple((entry[i], j) for j, i in enumerate(idx)),
        tuple(entry[i] for i in range(m) if i not in idx),
        r,
        None,
        entry[0],
        reflected,
    )


def brute_force_rotation(ab: AnnotatedBoundary, mesh: QuadMesh, lattice: LatticeWeights,
                         all_starts=False, allow_reflection=False) -> MatchResult:
    symbols = symbol_sequence(ab)
    result = brute_force_rotation_of_triples(
        symbols, boundary_triples(mesh), lattice, ab.traversal(), all_starts, allow_reflection)
    return MatchResult(result.utility, result.pairs, result.deleted_shape_indices, result.rotation,
                       mesh.id, result.shape_start, result.reflected)
