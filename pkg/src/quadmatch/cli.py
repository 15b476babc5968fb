"""Command-line interface: ``quadmatch validate|annotate|match|select|oracle|gen-grid|render``.

Exit codes: 0 success, 1 domain failure (no match, class violation, oracle
limit, ...), 2 unreadable or malformed input.
"""

from __future__ import annotations

import functools
import json
import math
import sys

import click

from . import render as render_mod
from .annotation import (
    ShapeFormatError, annotate, annotation_document, annotation_from_document,
    shape_from_document,
)
from .catalogue import (
    Catalogue, CatalogueError, catalogue_text, generate_grid, load_catalogue, mesh_document,
)
from .lattice import LatticeError, read_lattice, restrict_to_observed
from .matcher import best_rotation_match, result_document, result_from_document, select_best
from .mesh import boundary_triples
from .oracle import brute_force_rotation


class InputError(click.ClickException):
    exit_code = 2


class DomainError(click.ClickException):
    exit_code = 1


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except (OSError, json.JSONDecodeError, KeyError, TypeError, CatalogueError, LatticeError,
                ShapeFormatError) as exc:
            raise InputError(str(exc)) from exc
        except ValueError as exc:
            raise DomainError(str(exc)) from exc
    return wrapper


def _read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit(text: str, output) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def annotation_options(fn):
    fn = click.option("--spacing", type=float, default=None, help="Straight-point spacing (default perimeter/20).")(fn)
    fn = click.option("--count", type=int, default=None, help="Total number of boundary points.")(fn)
    fn = click.option("--angle-tol", type=float, default=15.0, show_default=True,
                      help="Degrees of deviation from straight still counted as straight.")(fn)
    fn = click.option("--start", "start_index", type=int, default=None,
                      help="Input vertex used as the fixed start (default: first convex corner).")(fn)
    return fn


def match_options(fn):
    fn = click.option("--lattice", "lattice_spec", default="fine", show_default=True,
                      help="'fine', 'coarse' or a lattice JSON file.")(fn)
    fn = click.option("--all-starts", is_flag=True, help="Also try every shape start point.")(fn)
    fn = click.option("--allow-reflection", is_flag=True, help="Also try the mirror image of each mesh.")(fn)
    fn = click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Result file.")(fn)
    fn = click.option("--svg", type=click.Path(dir_okay=False), default=None, help="Also write an SVG rendering.")(fn)
    return fn


def load_boundary(path, spacing=None, count=None, angle_tol=15.0, start_index=None):
    """Read a shape file (and annotate it) or an annotation file written by ``annotate``."""
    doc = _read_json(path)
    if isinstance(doc, dict) and "symbols" in doc:
        return annotation_from_document(doc)
    if spacing is not None and count is not None:
        raise click.UsageError("--spacing and --count are mutually exclusive")
    shape, file_start = shape_from_document(doc)
    start = start_index if start_index is not None else file_start
    return annotate(shape, spacing=spacing, count=count, angle_tolerance=math.radians(angle_tol),
                    start_index=start)


def load_single_mesh(path, mesh_id=None):
    cat = load_catalogue(path)
    if mesh_id is not None:
        try:
            return cat[mesh_id]
        except KeyError:
            raise DomainError(f"no mesh with id {mesh_id!r} in {path}") from None
    if len(cat) != 1:
        raise click.UsageError(f"{path} holds {len(cat)} meshes; pick one with --mesh-id")
    return cat.meshes[0]


@click.group()
def main():
    """Select the catalogue quad mesh that best matches a planar boundary."""


@main.command()
@click.argument("catalogue_path", type=click.Path())
@_guarded
def validate(catalogue_path):
    """Check every mesh of a catalogue against the supported mesh class."""
    cat = load_catalogue(catalogue_path)
    all_ok = True
    for mesh in cat:
        report = cat.class_reports[mesh.id]
        if report.ok:
            click.echo(f"{mesh.id}: OK")
        else:
            all_ok = False
            click.echo(f"{mesh.id}: FAIL {' '.join(report.failed_rules())}")
    sys.exit(0 if all_ok else 1)


@main.command("annotate")
@click.argument("shape_path", type=click.Path())
@annotation_options
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.option("--svg", type=click.Path(dir_okay=False), default=None)
@_guarded
def annotate_cmd(shape_path, spacing, count, angle_tol, start_index, output, svg):
    """Annotate a shape file with straight/convex/concave points."""
    if spacing is not None and count is not None:
        raise click.UsageError("--spacing and --count are mutually exclusive")
    ab = load_boundary(shape_path, spacing, count, angle_tol, start_index)
    _emit(_dump(annotation_document(ab)), output)
    if svg:
        _emit(render_mod.render_annotation(ab), svg)


def _run_match(matcher, shape_path, mesh_path, mesh_id, spacing, count, angle_tol, start_index,
               lattice_spec, all_starts, allow_reflection, output, svg):
    ab = load_boundary(shape_path, spacing, count, angle_tol, start_index)
    mesh = load_single_mesh(mesh_path, mesh_id)
    lattice = read_lattice(lattice_spec)
    result = matcher(ab, mesh, lattice, all_starts=all_starts, allow_reflection=allow_reflection)
    _emit(_dump(result_document(result)), output)
    if svg and result.feasible:
        _emit(render_mod.render_match(ab, mesh, result), svg)
    if not result.feasible:
        raise DomainError("no feasible alignment: every pairing includes a -inf weight")


@main.command()
@click.argument("shape_path", type=click.Path())
@click.argument("mesh_path", type=click.Path())
@click.option("--mesh-id", default=None, help="Mesh to use when MESH_PATH is a catalogue.")
@annotation_options
@match_options
@_guarded
def match(**kwargs):
    """Best rotation match of one mesh against a shape."""
    _run_match(best_rotation_match, **kwargs)


@main.command()
@click.argument("shape_path", type=click.Path())
@click.argument("mesh_path", type=click.Path())
@click.option("--mesh-id", default=None, help="Mesh to use when MESH_PATH is a catalogue.")
@annotation_options
@match_options
@_guarded
def oracle(**kwargs):
    """Like ``match`` but by exhaustive enumeration (small inputs only)."""
    _run_match(brute_force_rotation, **kwargs)


@main.command()
@click.argument("shape_path", type=click.Path())
@click.argument("catalogue_path", type=click.Path())
@annotation_options
@match_options
@click.option("--top", "top_k", type=int, default=1, show_default=True, help="Number of ranked results to keep.")
@click.option("--weed", is_flag=True, help="Give -inf to triples no valid catalogue mesh exhibits.")
@click.option("--workers", type=int, default=1, show_default=True)
@_guarded
def select(shape_path, catalogue_path, spacing, count, angle_tol, start_index, lattice_spec, all_starts,
           allow_reflection, output, svg, top_k, weed, workers):
    """Rank the meshes of a catalogue against a shape and report the best."""
    ab = load_boundary(shape_path, spacing, count, angle_tol, start_index)
    cat = load_catalogue(catalogue_path)
    lattice = read_lattice(lattice_spec)
    if weed:
        lattice = restrict_to_observed(lattice, (t for m in cat.valid_meshes() for t in boundary_triples(m)))
    sel = select_best(ab, cat, lattice, top_k=top_k, all_starts=all_starts,
                      allow_reflection=allow_reflection, workers=workers)
    doc = result_document(sel.best, sel.skipped)
    doc["ranking"] = [result_document(r) for r in sel.ranked]
    for r in doc["ranking"]:
        del r["skipped"]
    _emit(_dump(doc), output)
    if svg and sel.best.feasible:
        _emit(render_mod.render_match(ab, cat[sel.best.mesh_id], sel.best), svg)
    if not sel.best.feasible:
        raise DomainError("no catalogue mesh has a feasible alignment")


@main.command("gen-grid")
@click.argument("sizes", nargs=-1, required=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@_guarded
def gen_grid(sizes, output):
    """Write grid meshes; SIZES are PxQ. One size gives a mesh file, several a catalogue."""
    meshes = []
    for size in sizes:
        try:
            p, q = (int(t) for t in size.lower().split("x"))
        except ValueError:
            raise click.UsageError(f"size {size!r} is not of the form PxQ") from None
        meshes.append(generate_grid(p, q))
    if len(meshes) == 1:
        _emit(json.dumps(mesh_document(meshes[0]), sort_keys=True) + "\n", output)
    else:
        _emit(catalogue_text(Catalogue(meshes)), output)


@main.command("render")
@click.argument("shape_path", type=click.Path())
@click.argument("mesh_path", type=click.Path())
@click.argument("result_path", type=click.Path())
@annotation_options
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@_guarded
def render_cmd(shape_path, mesh_path, result_path, spacing, count, angle_tol, start_index, output):
    """Draw a stored match result over its shape (annotation flags must match the run)."""
    ab = load_boundary(shape_path, spacing, count, angle_tol, start_index)
    result = result_from_document(_read_json(result_path))
    mesh = load_single_mesh(mesh_path, result.mesh_id if result.mesh_id is not None else None)
    _emit(render_mod.render_match(ab, mesh, result), output)


if __name__ == "__main__":
    main()
