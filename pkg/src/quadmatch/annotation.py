"""Turn a closed planar polyline into a cyclic sequence of s/x/v boundary points.

Corners are classified by interior angle; the chains of boundary between
consecutive convex/concave corners are then sampled with straight points,
either at a fixed spacing or so that the whole boundary gets a target count.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_ANGLE_TOLERANCE = 0.26
DEFAULT_SPACING_DIVISOR = 20


class ShapeError(ValueError):
    pass


class AnnotationError(ValueError):
    pass


class ShapeFormatError(ShapeError):
    """Malformed shape or annotation document."""


def signed_area(points) -> float:
    pts = np.asarray(points, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _segments_intersect(p, q, a, b, eps):
    """Vectorized closed-segment test of ``p-q`` against every ``a[k]-b[k]``."""

    def orient(o, s, t):
        return (s[..., 0] - o[..., 0]) * (t[..., 1] - o[..., 1]) - (s[..., 1] - o[..., 1]) * (t[..., 0] - o[..., 0])

    def on_segment(o, s, t):
        return ((np.minimum(o[..., 0], s[..., 0]) - eps <= t[..., 0]) & (t[..., 0] <= np.maximum(o[..., 0], s[..., 0]) + eps)
                & (np.minimum(o[..., 1], s[..., 1]) - eps <= t[..., 1]) & (t[..., 1] <= np.maximum(o[..., 1], s[..., 1]) + eps))

    p = np.broadcast_to(p, a.shape)
    q = np.broadcast_to(q, a.shape)
    d1 = orient(a, b, p)
    d2 = orient(a, b, q)
    d3 = orient(p, q, a)
    d4 = orient(p, q, b)
    proper = (((d1 > eps) & (d2 < -eps)) | ((d1 < -eps) & (d2 > eps))) & \
             (((d3 > eps) & (d4 < -eps)) | ((d3 < -eps) & (d4 > eps)))
    touch = ((np.abs(d1) <= eps) & on_segment(a, b, p)) | ((np.abs(d2) <= eps) & on_segment(a, b, q)) | \
            ((np.abs(d3) <= eps) & on_segment(p, q, a)) | ((np.abs(d4) <= eps) & on_segment(p, q, b))
    return proper | touch


@dataclass(frozen=True)
class Shape:
    """A simple closed polygon; the closing edge back to ``points[0]`` is implicit."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        n = len(pts)
        if n < 3:
            raise ShapeError(f"a shape needs at least 3 points, got {n}")
        arr = np.asarray(pts)
        if not np.all(np.isfinite(arr)):
            raise ShapeError("shape coordinates must be finite")
        for i in range(n):
            if pts[i] == pts[(i + 1) % n]:
                raise ShapeError(f"vertex {i} repeats the next point {pts[i]}")
        scale = float(np.max(np.abs(arr))) or 1.0
        eps = 1e-12 * scale * scale
        for i in range(n):
            e1 = arr[i] - arr[i - 1]
            e2 = arr[(i + 1) % n] - arr[i]
            cross = e1[0] * e2[1] - e1[1] * e2[0]
            if abs(cross) <= eps and np.dot(e1, e2) < 0:
                raise ShapeError(f"boundary folds back on itself at vertex {i}")
        starts = arr
        ends = np.roll(arr, -1, axis=0)
        for i in range(n):
            # Skip the edge itself and its two neighbours (they share endpoints).
            others = [j for j in range(n) if j not in (i, (i - 1) % n, (i + 1) % n)]
            if not others:
                continue
            hit = _segments_intersect(starts[i], ends[i], starts[others], ends[others], eps)
            if hit.any():
                j = others[int(np.argmax(hit))]
                raise ShapeError(f"shape is not simple: edge {i} meets edge {j}")
        if abs(signed_area(arr)) <= eps:
            raise ShapeError("shape encloses no area")

    def __len__(self):
        return len(self.points)

    @property
    def is_ccw(self) -> bool:
        return signed_area(self.points) > 0

    def reversed(self) -> Shape:
        return Shape(self.points[::-1])

    def scaled(self, factor: float) -> Shape:
        return Shape(tuple((x * factor, y * factor) for x, y in self.points))

    def perimeter(self) -> float:
        arr = np.asarray(self.points)
        return float(np.linalg.norm(np.roll(arr, -1, axis=0) - arr, axis=1).sum())


def interior_angles(shape: Shape) -> list[float]:
    """Interior angle at every vertex, in input order, for either orientation."""
    arr = np.asarray(shape.points)
    sign = 1.0 if shape.is_ccw else -1.0
    n = len(arr)
    angles = []
    for i in range(n):
        e1 = arr[i] - arr[i - 1]
        e2 = arr[(i + 1) % n] - arr[i]
        if not (np.any(e1) and np.any(e2)):
            raise ShapeError(f"degenerate angle at vertex {i}: repeated point")
        turn = math.atan2(e1[0] * e2[1] - e1[1] * e2[0], float(np.dot(e1, e2)))
        angles.append(math.pi - sign * turn)
    return angles


def classify_corners(shape: Shape, angle_tolerance: float = DEFAULT_ANGLE_TOLERANCE) -> list[str]:
    """Label each vertex ``x`` (convex), ``v`` (concave) or ``s`` (near straight)."""
    labels = []
    for theta in interior_angles(shape):
        if theta < math.pi - angle_tolerance:
            labels.append("x")
        elif theta > math.pi + angle_tolerance:
            labels.append("v")
        else:
            labels.append("s")
    return labels


@dataclass(frozen=True)
class Entry:
    symbol: str
    position: tuple[float, float]
    source: str  # "corner" or "sampled"
    vertex: int | None = None  # input vertex index for corner entries


@dataclass(frozen=True)
class AnnotatedBoundary:
    entries: tuple[Entry, ...]
    start_index: int = 0

    def __post_init__(self):
        if self.entries and not 0 <= self.start_index < len(self.entries):
            raise AnnotationError(f"start_index {self.start_index} outside 0..{len(self.entries) - 1}")

    def __len__(self):
        return len(self.entries)

    @property
    def symbols(self) -> str:
        return "".join(e.symbol for e in self.entries)

    @property
    def positions(self) -> list[tuple[float, float]]:
        return [e.position for e in self.entries]

    def traversal(self, start: int | None = None) -> list[int]:
        """Entry indices in CCW order beginning at ``start`` (default: the fixed start)."""
        m = len(self.entries)
        s = self.start_index if start is None else start
        return [(s + i) % m for i in range(m)]


def symbol_sequence(ab: AnnotatedBoundary) -> str:
    if not ab.entries:
        raise AnnotationError("annotation is empty")
    symbols = ab.symbols
    return symbols[ab.start_index:] + symbols[:ab.start_index]


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _apportion(total: int, lengths: list[float]) -> list[int]:
    """Largest-remainder split of ``total`` proportional to ``lengths``; ties go to earlier chains."""
    whole = sum(lengths)
    quotas = [total * length / whole for length in lengths]
    # Rounding the quotas keeps results stable under uniform scaling of the shape.
    quotas = [round(q, 9) for q in quotas]
    counts = [math.floor(q) for q in quotas]
    left = total - sum(counts)
    order = sorted(range(len(lengths)), key=lambda c: (-(quotas[c] - counts[c]), c))
    for c in order[:left]:
        counts[c] += 1
    return counts


def annotate(
    shape: Shape,
    spacing: float | None = None,
    count: int | None = None,
    angle_tolerance: float = DEFAULT_ANGLE_TOLERANCE,
    start_index: int | None = None,
) -> AnnotatedBoundary:
    """Annotate ``shape`` in spacing mode (``spacing``) or count mode (``count``).

    Every input vertex is kept, labeled by :func:`classify_corners`.  Each
    chain between consecutive convex/concave corners gets extra straight
    points: ``max(0, round(L / spacing) - 1)`` of them evenly spaced in
    spacing mode, or a largest-remainder share of ``count - len(shape)`` in
    count mode.  With no mode given the spacing is ``perimeter / 20``.

    ``start_index`` names an input vertex to use as the fixed start; by
    default it is the first convex corner in input order.
    """
    if spacing is not None and count is not None:
        raise AnnotationError("give either spacing or count, not both")
    n = len(shape)
    if count is not None and count < n:
        raise AnnotationError(f"count {count} is smaller than the {n} shape corners")
    if spacing is not None and not spacing > 0:
        raise AnnotationError(f"spacing must be positive, got {spacing}")
    if start_index is not None and not 0 <= start_index < n:
        raise AnnotationError(f"start_index {start_index} outside 0..{n - 1}")

    flipped = not shape.is_ccw
    ccw = shape.reversed() if flipped else shape
    # Input vertex index of each CCW-ordered vertex.
    original = [n - 1 - i for i in range(n)] if flipped else list(range(n))
    labels = classify_corners(ccw, angle_tolerance)
    pts = np.asarray(ccw.points)
    edge_len = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)

    anchors = [i for i, lab in enumerate(labels) if lab != "s"] or [0]
    chains = []
    for k, a in enumerate(anchors):
        b = anchors[(k + 1) % len(anchors)]
        span = (b - a) % n or n
        verts = [(a + t) % n for t in range(span + 1)]
        chains.append(verts)
    lengths = [float(sum(edge_len[v] for v in verts[:-1])) for verts in chains]

    if count is not None:
        extra = _apportion(count - n, lengths)
    else:
        h = spacing if spacing is not None else ccw.perimeter() / DEFAULT_SPACING_DIVISOR
        extra = [max(0, _round_half_up(length / h) - 1) for length in lengths]

    entries: list[Entry] = []
    vertex_entry = {}
    for verts, length, k in zip(chains, lengths, extra):
        # (arc position, tie rank, entry) for everything on this chain except its end anchor.
        items = []
        arc = 0.0
        for idx, v in enumerate(verts[:-1]):
            items.append((arc, 0, v))
            arc += edge_len[v]
        targets = [length * t / (k + 1) for t in range(1, k + 1)]
        items.extend((s, 1, None) for s in targets)
        items.sort(key=lambda it: (it[0], it[1]))
        vert_arcs = np.cumsum([0.0] + [edge_len[v] for v in verts[:-1]])
        for pos, _, v in items:
            if v is not None:
                vertex_entry[v] = len(entries)
                entries.append(Entry(labels[v], (float(pts[v][0]), float(pts[v][1])), "corner", original[v]))
            else:
                seg = min(int(np.searchsorted(vert_arcs, pos, side="right")) - 1, len(verts) - 2)
                v0, v1 = verts[seg], verts[seg + 1]
                t = (pos - vert_arcs[seg]) / edge_len[v0]
                xy = pts[v0] + t * (pts[v1] - pts[v0])
                entries.append(Entry("s", (float(xy[0]), float(xy[1])), "sampled"))

    if start_index is not None:
        start = vertex_entry[original.index(start_index)]
    else:
        start = 0
        for orig in range(n):
            v = original.index(orig)
            if labels[v] == "x":
                start = vertex_entry[v]
                break
    return AnnotatedBoundary(tuple(entries), start)


def read_shape(path) -> tuple[Shape, int | None]:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return shape_from_document(doc)


def shape_from_document(doc) -> tuple[Shape, int | None]:
    if not isinstance(doc, dict) or "points" not in doc:
        raise ShapeFormatError("shape document needs a 'points' array")
    try:
        points = [(float(p[0]), float(p[1])) for p in doc["points"]]
    except (TypeError, ValueError, IndexError):
        raise ShapeFormatError("'points' must be an array of [x, y] number pairs") from None
    start = doc.get("start_index")
    if start is not None and (isinstance(start, bool) or not isinstance(start, int)):
        raise ShapeFormatError("'start_index' must be an integer")
    return Shape(tuple(points)), start


def annotation_document(ab: AnnotatedBoundary) -> dict:
    return {
        "symbols": ab.symbols,
        "positions": [list(p) for p in ab.positions],
        "start_index": ab.start_index,
        "sources": [e.source for e in ab.entries],
    }


def annotation_from_document(doc) -> AnnotatedBoundary:
    symbols = doc.get("symbols")
    positions = doc.get("positions")
    if not isinstance(symbols, str) or not isinstance(positions, list) or len(symbols) != len(positions):
        raise ShapeFormatError("annotation needs 'symbols' and an equally long 'positions' array")
    if set(symbols) - set("sxv"):
        raise ShapeFormatError(f"annotation symbols must be drawn from 's', 'x', 'v': {symbols!r}")
    sources = doc.get("sources") or ["corner" if c != "s" else "sampled" for c in symbols]
    entries = tuple(Entry(c, (float(p[0]), float(p[1])), src) for c, p, src in zip(symbols, positions, sources))
    return AnnotatedBoundary(entries, int(doc.get("start_index", 0)))
