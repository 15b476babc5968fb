"""Weight tables scoring how well a mesh boundary vertex realizes a shape point.

For each shape symbol (``s`` straight, ``x`` convex, ``v`` concave) a lattice
assigns every valence triple ``[u, v, w]`` in ``{2..5}^3`` an integer weight
or ``NEG_INFINITY`` (the pair may never be matched).

The built-in presets are stand-ins generated from a simple rule: each quad
incident to a boundary vertex contributes roughly 90 degrees of interior
angle, so a convex corner wants valence 2, a straight point valence 3 and a
concave corner valence 4, with neighbours ideally of valence 3.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .mesh import ValenceTriple

NEG_INFINITY = float("-inf")
SYMBOLS = "sxv"
SYMBOL_INDEX = {sym: k for k, sym in enumerate(SYMBOLS)}
VALENCES = (2, 3, 4, 5)
ALL_TRIPLES = tuple(ValenceTriple(u, v, w) for u, v, w in itertools.product(VALENCES, repeat=3))
IDEAL_CENTER = {"x": 2, "s": 3, "v": 4}

# Keeps every DP sum an exact integer in float64 for sequences up to 2**21 long.
MAX_ABS_WEIGHT = 2**31


class LatticeError(ValueError):
    pass


def is_neg_inf(value) -> bool:
    return value == NEG_INFINITY


def _check_symbol(symbol: str) -> int:
    try:
        return SYMBOL_INDEX[symbol]
    except KeyError:
        raise LatticeError(f"unknown symbol {symbol!r}, expected one of {SYMBOLS!r}") from None


@dataclass(frozen=True, eq=False)
class LatticeWeights:
    """Three total maps from valence triples to weights, one per symbol.

    ``table`` is a read-only float64 array indexed ``[symbol, u-2, v-2, w-2]``
    holding integral values or ``-inf``.
    """

    name: str
    table: np.ndarray

    def __post_init__(self):
        table = np.array(self.table, dtype=np.float64)
        if table.shape != (3, 4, 4, 4):
            raise LatticeError(f"lattice table must have shape (3, 4, 4, 4), got {table.shape}")
        finite = np.isfinite(table)
        if np.any(np.isnan(table)) or np.any(table == np.inf):
            raise LatticeError("lattice weights must be integers or -inf")
        if np.any(table[finite] != np.round(table[finite])):
            raise LatticeError("lattice weights must be integers or -inf")
        if np.any(np.abs(table[finite]) > MAX_ABS_WEIGHT):
            raise LatticeError(f"lattice weight magnitude exceeds {MAX_ABS_WEIGHT}")
        for k, sym in enumerate(SYMBOLS):
            if not finite[k].any():
                raise LatticeError(f"table {sym!r} has no finite entry")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def weight(self, symbol: str, triple: ValenceTriple):
        value = self.table[_check_symbol(symbol), triple.u - 2, triple.v - 2, triple.w - 2]
        return NEG_INFINITY if value == NEG_INFINITY else int(value)

    def __eq__(self, other):
        if not isinstance(other, LatticeWeights):
            return NotImplemented
        return self.name == other.name and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.name, self.table.tobytes()))

    def with_entries(self, symbol: str, updates: dict, name: str | None = None) -> LatticeWeights:
        """Return a copy with the given ``{triple: weight}`` overrides for one symbol."""
        table = self.table.copy()
        k = _check_symbol(symbol)
        for t, value in updates.items():
            table[k, t.u - 2, t.v - 2, t.w - 2] = value
        return LatticeWeights(name or self.name, table)


def weight(lattice: LatticeWeights, symbol: str, triple: ValenceTriple):
    return lattice.weight(symbol, triple)


def _fine_weight(symbol: str, t: ValenceTriple):
    off = abs(t.v - IDEAL_CENTER[symbol])
    if off >= 3:
        return NEG_INFINITY
    return 4 - 2 * off - abs(t.u - 3) - abs(t.w - 3)


def _from_function(name: str, fn) -> LatticeWeights:
    table = np.empty((3, 4, 4, 4))
    for k, sym in enumerate(SYMBOLS):
        for t in ALL_TRIPLES:
            table[k, t.u - 2, t.v - 2, t.w - 2] = fn(sym, t)
    return LatticeWeights(name, table)


def builtin_fine() -> LatticeWeights:
    return _from_function("fine", _fine_weight)


def builtin_coarse() -> LatticeWeights:
    """The fine preset quantized to the three levels +2, 0 and -inf."""

    def coarse(sym, t):
        value = _fine_weight(sym, t)
        if value == NEG_INFINITY:
            return value
        return 2 if value > 2 else 0

    return _from_function("coarse", coarse)


PRESETS = {"fine": builtin_fine, "coarse": builtin_coarse}


def _parse_weight(raw, where: str):
    if raw == "-inf":
        return NEG_INFINITY
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise LatticeError(f"{where}: weight must be an integer or \"-inf\", got {raw!r}")
    if abs(raw) > MAX_ABS_WEIGHT:
        raise LatticeError(f"{where}: weight {raw} exceeds magnitude {MAX_ABS_WEIGHT}")
    return raw


def _parse_triple(raw, where: str) -> ValenceTriple:
    if not isinstance(raw, (list, tuple)) or len(raw) != 3:
        raise LatticeError(f"{where}: triple must be a list [u, v, w], got {raw!r}")
    try:
        return ValenceTriple(*raw)
    except (TypeError, ValueError) as exc:
        raise LatticeError(f"{where}: {exc}") from None


def load_lattice(document) -> LatticeWeights:
    """Build a lattice from a parsed lattice document (see ``save_lattice``).

    Unlisted triples take the section's ``default`` when given, otherwise the
    base preset's value.  With ``"base": "none"`` every symbol section must be
    present and must cover all 64 triples through entries and/or a default.
    """
    if not isinstance(document, dict):
        raise LatticeError("lattice document must be a JSON object")
    base = document.get("base", "fine")
    tables = document.get("tables", {})
    if not isinstance(tables, dict):
        raise LatticeError("'tables' must be an object keyed by symbol")
    for key in tables:
        _check_symbol(key)
    if base == "none":
        table = np.full((3, 4, 4, 4), np.nan)
    elif base in PRESETS:
        table = PRESETS[base]().table.copy()
    else:
        raise LatticeError(f"unknown base {base!r}, expected 'fine', 'coarse' or 'none'")

    for k, sym in enumerate(SYMBOLS):
        section = tables.get(sym)
        if section is None:
            if base == "none":
                raise LatticeError(f"missing table section for symbol {sym!r}")
            continue
        if not isinstance(section, dict):
            raise LatticeError(f"table {sym!r} must be an object")
        if "default" in section:
            table[k] = _parse_weight(section["default"], f"{sym}.default")
        for idx, entry in enumerate(section.get("entries", [])):
            where = f"{sym}.entries[{idx}]"
            if not isinstance(entry, dict) or "triple" not in entry or "weight" not in entry:
                raise LatticeError(f"{where}: entry needs 'triple' and 'weight'")
            t = _parse_triple(entry["triple"], where)
            table[k, t.u - 2, t.v - 2, t.w - 2] = _parse_weight(entry["weight"], where)
        if np.isnan(table[k]).any():
            raise LatticeError(f"table {sym!r} does not cover all 64 triples and has no default")

    name = document.get("name", base if base != "none" else "custom")
    return LatticeWeights(str(name), table)


def lattice_document(lattice: LatticeWeights) -> dict:
    """Self-contained document listing every entry; inverse of :func:`load_lattice`."""
    tables = {}
    for k, sym in enumerate(SYMBOLS):
        entries = []
        for t in ALL_TRIPLES:
            value = lattice.table[k, t.u - 2, t.v - 2, t.w - 2]
            entries.append({"triple": t.as_list(),
                            "weight": "-inf" if value == NEG_INFINITY else int(value)})
        tables[sym] = {"entries": entries}
    return {"base": "none", "name": lattice.name, "tables": tables}


def save_lattice(lattice: LatticeWeights, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(lattice_document(lattice), fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_lattice(spec: str) -> LatticeWeights:
    """Resolve ``fine``, ``coarse`` or a path to a lattice file."""
    if spec in PRESETS:
        return PRESETS[spec]()
    with open(spec, encoding="utf-8") as fh:
        return load_lattice(json.load(fh))


def restrict_to_observed(lattice: LatticeWeights, observed) -> LatticeWeights:
    """Mark every triple never seen in ``observed`` as ``-inf`` for all symbols.

    ``observed`` is an iterable of :class:`ValenceTriple`, typically every
    boundary triple from the class-valid meshes of a catalogue.
    """
    seen = set(observed)
    table = lattice.table.copy()
    for t in ALL_TRIPLES:
        if t not in seen:
            table[:, t.u - 2, t.v - 2, t.w - 2] = NEG_INFINITY
    return LatticeWeights(lattice.name + "+observed", table)
