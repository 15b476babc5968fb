"""Mesh catalogues on disk, plus a structured-grid generator for tests and demos."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .mesh import ClassReport, MeshError, QuadMesh, build_mesh, validate_class


class CatalogueError(ValueError):
    """Unparseable catalogue files or inconsistent catalogue contents."""


@dataclass
class Catalogue:
    meshes: list[QuadMesh] = field(default_factory=list)
    source: str | None = None
    class_reports: dict[str, ClassReport] = field(default_factory=dict)

    def __post_init__(self):
        ids = [m.id for m in self.meshes]
        if any(i is None for i in ids):
            raise CatalogueError("every catalogue mesh needs an id")
        dupes = sorted(i for i, c in Counter(ids).items() if c > 1)
        if dupes:
            raise CatalogueError(f"duplicate mesh id(s): {', '.join(dupes)}")
        self.meshes = sorted(self.meshes, key=lambda m: m.id)
        for m in self.meshes:
            self.class_reports.setdefault(m.id, validate_class(m))

    def __iter__(self):
        return iter(self.meshes)

    def __len__(self):
        return len(self.meshes)

    def __getitem__(self, mesh_id: str) -> QuadMesh:
        for m in self.meshes:
            if m.id == mesh_id:
                return m
        raise KeyError(mesh_id)

    def __eq__(self, other):
        if not isinstance(other, Catalogue):
            return NotImplemented
        return self.meshes == other.meshes

    def valid_meshes(self) -> list[QuadMesh]:
        return [m for m in self.meshes if self.class_reports[m.id].ok]


def generate_grid(p: int, q: int, mesh_id: str | None = None) -> QuadMesh:
    """A ``p`` x ``q`` block of quads with row-major vertex ids, CCW winding."""
    if p < 1 or q < 1:
        raise ValueError(f"grid dimensions must be positive, got {p}x{q}")
    cols = p + 1
    quads = []
    for row in range(q):
        for col in range(p):
            a = row * cols + col
            quads.append((a, a + 1, a + 1 + cols, a + cols))
    return build_mesh((p + 1) * (q + 1), quads, mesh_id or f"grid-{p}x{q}")


def mesh_document(mesh: QuadMesh) -> dict:
    return {"id": mesh.id, "num_vertices": mesh.num_vertices, "quads": [list(q) for q in mesh.quads]}


def mesh_from_document(doc, where: str = "mesh") -> QuadMesh:
    if not isinstance(doc, dict):
        raise CatalogueError(f"{where}: mesh must be a JSON object")
    try:
        mesh_id = doc["id"]
        num_vertices = doc["num_vertices"]
        quads = doc["quads"]
    except KeyError as exc:
        raise CatalogueError(f"{where}: missing field {exc.args[0]!r}") from None
    if not isinstance(mesh_id, str):
        raise CatalogueError(f"{where}: 'id' must be a string")
    if isinstance(num_vertices, bool) or not isinstance(num_vertices, int):
        raise CatalogueError(f"{where}: 'num_vertices' must be an integer")
    if not isinstance(quads, list) or not all(
            isinstance(q, list) and all(isinstance(i, int) and not isinstance(i, bool) for i in q) for q in quads):
        raise CatalogueError(f"{where}: 'quads' must be an array of integer arrays")
    try:
        return build_mesh(num_vertices, quads, mesh_id)
    except MeshError as exc:
        raise CatalogueError(f"{where} ({mesh_id}): {exc}") from exc


def _read_json(path: Path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise CatalogueError(f"{path}: not valid JSON ({exc})") from None


def load_catalogue(path) -> Catalogue:
    """Load a directory of per-mesh ``*.json`` files or one file with a ``meshes`` array.

    Meshes outside the class are kept, with their reports, so they can be
    inspected; the matcher skips them.  Meshes that cannot be built at all
    (bad connectivity) make the load fail.
    """
    path = Path(path)
    meshes = []
    if path.is_dir():
        for f in sorted(path.glob("*.json")):
            meshes.append(mesh_from_document(_read_json(f), str(f)))
    else:
        doc = _read_json(path)
        if isinstance(doc, dict) and "meshes" in doc:
            if not isinstance(doc["meshes"], list):
                raise CatalogueError(f"{path}: 'meshes' must be an array")
            for k, m in enumerate(doc["meshes"]):
                meshes.append(mesh_from_document(m, f"{path}[{k}]"))
        else:
            meshes.append(mesh_from_document(doc, str(path)))
    return Catalogue(meshes, str(path))


def catalogue_text(cat: Catalogue) -> str:
    """Canonical serialization: sorted keys, meshes by id, quads in stored order."""
    doc = {"meshes": [mesh_document(m) for m in cat.meshes]}
    return json.dumps(doc, sort_keys=True, separators=(",", ": ")) + "\n"


def save_catalogue(cat: Catalogue, path) -> None:
    Path(path).write_text(catalogue_text(cat), encoding="utf-8")
