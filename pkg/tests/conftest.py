
import numpy as np
import pytest
from hypothesis import strategies as st

from quadmatch.annotation import Shape
from quadmatch.lattice import ALL_TRIPLES, NEG_INFINITY, LatticeWeights
from quadmatch.mesh import ValenceTriple, build_mesh

WEIGHT_VALUES = [NEG_INFINITY, -3, -2, -1, 0, 1, 2, 3]


def unit_square():
    return Shape(((0, 0), (1, 0), (1, 1), (0, 1)))


def l_shape():
    return Shape(((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)))


def six_quad_fan():
    """Six quads around one internal vertex: the center has valence 6."""
    quads = [(0, 1 + 2 * k, 2 + 2 * k, 1 + (2 * k + 2) % 12) for k in range(6)]
    return build_mesh(13, quads, "fan6")


def random_lattice(rng, p_neg_inf=0.2, name="random"):
    table = rng.integers(-3, 4, size=(3, 4, 4, 4)).astype(float)
    table[rng.random(table.shape) < p_neg_inf] = NEG_INFINITY
    for k in range(3):
        if not np.isfinite(table[k]).any():
            table[k, 0, 0, 0] = 0
    return LatticeWeights(name, table)


def random_triples(rng, n):
    return [ALL_TRIPLES[i] for i in rng.integers(0, len(ALL_TRIPLES), size=n)]


def random_symbols(rng, m):
    return "".join(rng.choice(list("sxv"), size=m)) if m else ""


def star_polygon(rng, k):
    """Random simple polygon, star-shaped around the origin with jittered angles."""
    gap = 2 * np.pi / k
    angles = gap * np.arange(k) + rng.uniform(-0.3, 0.3, size=k) * gap
    radii = rng.uniform(0.4, 1.0, size=k)
    return Shape(tuple((float(r * np.cos(a)), float(r * np.sin(a))) for a, r in zip(angles, radii)))


@st.composite
def lattices(draw, values=WEIGHT_VALUES):
    flat = draw(st.lists(st.sampled_from(values), min_size=192, max_size=192))
    table = np.array(flat, dtype=float).reshape(3, 4, 4, 4)
    for k in range(3):
        if not np.isfinite(table[k]).any():
            table[k, 1, 1, 1] = 0
    return LatticeWeights("drawn", table)


triples_st = st.builds(ValenceTriple, st.integers(2, 5), st.integers(2, 5), st.integers(2, 5))
symbols_st = st.text(alphabet="sxv", max_size=10)


@pytest.fixture
def square():
    return unit_square()


@pytest.fixture
def lshape():
    return l_shape()


# Per-criterion summary for the acceptance module.
_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.outcome != "passed":
        _acceptance[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _acceptance.items():
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
