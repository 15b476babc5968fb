"""Static SVG drawings of annotations and shape/mesh boundary correspondences.

Only the boundary is drawn: each matched shape point becomes a disc colored
by the valence of the mesh vertex it was paired with, deleted points are
hollow.  Output is byte-stable for fixed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .annotation import AnnotatedBoundary
from .matcher import MatchResult
from .mesh import QuadMesh

DEFAULT_PALETTE = {2: "#1f77b4", 3: "#2ca02c", 4: "#ff7f0e", 5: "#d62728"}
SYMBOL_COLORS = {"x": "#444444", "v": "#9467bd", "s": "#bbbbbb"}


@dataclass(frozen=True)
class RenderSpec:
    width: int = 480
    height: int = 480
    palette: dict = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    point_radius: float = 5.0
    stroke_width: float = 1.5
    margin: float = 40.0

    def __post_init__(self):
        missing = [v for v in (2, 3, 4, 5) if v not in self.palette]
        if missing:
            raise ValueError(f"palette lacks colors for valences {missing}")


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Canvas:
    def __init__(self, positions, spec: RenderSpec):
        xs = [p[0] for p in positions]
        ys = [p[1] for p in positions]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys)) or 1.0
        legend_room = 30.0
        self.scale = min(spec.width, spec.height - legend_room) - 2 * spec.margin
        self.scale /= span
        self.spec = spec

    def xy(self, p):
        # SVG y grows downward; flip so the drawing keeps its orientation.
        return (self.spec.margin + (p[0] - self.x0) * self.scale,
                self.spec.margin + (self.y1 - p[1]) * self.scale)


def _header(spec: RenderSpec, title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="#ffffff"/>',
    ]


def _outline(canvas: _Canvas, ab: AnnotatedBoundary, spec: RenderSpec) -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(canvas.xy, ab.positions))
    return (f'<polygon points="{pts}" fill="#f4f4f4" stroke="#000000" '
            f'stroke-width="{_fmt(spec.stroke_width)}"/>')


def render_annotation(ab: AnnotatedBoundary, spec: RenderSpec | None = None) -> str:
    spec = spec or RenderSpec()
    canvas = _Canvas(ab.positions, spec)
    lines = _header(spec, f"annotation {ab.symbols}")
    lines.append(_outline(canvas, ab, spec))
    for k, e in enumerate(ab.entries):
        x, y = canvas.xy(e.position)
        ring = ' stroke="#000000" stroke-width="2"' if k == ab.start_index else ""
        lines.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(spec.point_radius)}" '
                     f'fill="{SYMBOL_COLORS[e.symbol]}"{ring}><title>{k}: {e.symbol}</title></circle>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_match(ab: AnnotatedBoundary, mesh: QuadMesh, result: MatchResult,
                 spec: RenderSpec | None = None) -> str:
    if not result.feasible:
        raise ValueError("cannot render an infeasible match")
    spec = spec or RenderSpec()
    canvas = _Canvas(ab.positions, spec)
    n = len(mesh.boundary_cycle)
    lines = _header(spec, f"match {mesh.id or ''} utility {result.utility} rotation {result.rotation}")
    lines.append(_outline(canvas, ab, spec))
    for shape_i, pos in result.pairs:
        vertex = mesh.boundary_cycle[result.boundary_index(pos, n)]
        valence = mesh.valence[vertex]
        x, y = canvas.xy(ab.entries[shape_i].position)
        lines.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(spec.point_radius)}" fill="{spec.palette[valence]}" '
            f'stroke="#000000" stroke-width="0.5"><title>{shape_i} {ab.entries[shape_i].symbol} '
            f'-&gt; vertex {vertex} (valence {valence})</title></circle>')
    for shape_i in result.deleted_shape_indices:
        x, y = canvas.xy(ab.entries[shape_i].position)
        lines.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(spec.point_radius)}" fill="none" '
            f'stroke="#555555" stroke-width="{_fmt(spec.stroke_width)}"><title>{shape_i} '
            f'{ab.entries[shape_i].symbol} deleted</title></circle>')
    y = spec.height - 18
    for k, valence in enumerate(sorted(spec.palette)):
        x = spec.margin + 90 * k
        lines.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(spec.point_radius)}" '
                     f'fill="{spec.palette[valence]}"/>')
        lines.append(f'<text x="{_fmt(x + 10)}" y="{_fmt(y + 4)}" font-family="sans-serif" '
                     f'font-size="12">valence {valence}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
