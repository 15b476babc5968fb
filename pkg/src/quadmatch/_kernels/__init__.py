"""Alignment kernels, compiled when the extension is built, numpy otherwise.

The backend is chosen at import; :func:`use_backend` switches it explicitly
(benchmarks and the cross-backend tests rely on this).
"""

import contextlib

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels

_active = _ckernels if _ckernels is not None else _pykernels


def backend_name():
    return "compiled" if _active is _ckernels else "python"


def use_backend(name):
    """Select ``"compiled"`` or ``"python"``; returns the previous backend name."""
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    previous = backend_name()
    _active = BACKENDS[name]
    return previous


@contextlib.contextmanager
def using(name):
    previous = use_backend(name)
    try:
        yield
    finally:
        use_backend(previous)


def _prepare(sym, weights):
    return (np.ascontiguousarray(sym, dtype=np.int64),
            np.ascontiguousarray(weights, dtype=np.float64))


def rotation_scores(sym, weights, nrot):
    """Best alignment utility for each rotation ``r < nrot`` of the triple columns."""
    sym, weights = _prepare(sym, weights)
    return _active.rotation_scores(sym, weights, int(nrot))


def suffix_table(sym, weights):
    sym, weights = _prepare(sym, weights)
    return _active.suffix_table(sym, weights)
