"""Pick the quadrilateral mesh from a catalogue that best fits a planar shape.

The shape boundary becomes a cyclic string over ``s``/``x``/``v`` (straight,
convex, concave), each mesh boundary a cyclic list of valence triples, and
the two are aligned by a weighted subsequence dynamic program in which only
shape points may be dropped.
"""

from .annotation import AnnotatedBoundary, Shape, annotate, classify_corners, symbol_sequence
from .catalogue import Catalogue, generate_grid, load_catalogue, save_catalogue
from .lattice import NEG_INFINITY, LatticeWeights, builtin_coarse, builtin_fine, load_lattice, weight
from .matcher import MatchResult, align, best_rotation_match, select_best, utility_of
from .mesh import ClassReport, QuadMesh, ValenceTriple, boundary_triples, build_mesh, validate_class
from .oracle import brute_force_align, brute_force_rotation

__version__ = "0.1.0"

__all__ = [
    "AnnotatedBoundary", "Catalogue", "ClassReport", "LatticeWeights", "MatchResult", "NEG_INFINITY",
    "QuadMesh", "Shape", "ValenceTriple", "align", "annotate", "best_rotation_match", "boundary_triples",
    "brute_force_align", "brute_force_rotation", "build_mesh", "builtin_coarse", "builtin_fine",
    "classify_corners", "generate_grid", "load_catalogue", "load_lattice", "save_catalogue", "select_best",
    "symbol_sequence", "utility_of", "validate_class", "weight",
]
