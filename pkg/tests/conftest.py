import itertools
import random

import pytest
from hypothesis import strategies as st

from aghkit.poset import Poset
from aghkit.polytope import LatticePolytope, make_cross_plus, order_polytope, unit_cube, standard_simplex

EXAMPLE_POSET = Poset.from_relations(4, [(1, 3), (2, 3), (2, 4)])


def random_natural_poset(rng, n, density=0.35):
    rel = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
           if rng.random() < density]
    return Poset.from_relations(n, rel)


@st.composite
def natural_posets(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Poset.from_relations(n, chosen)


def corpus_polytopes(max_dim=4):
    """Named polytopes with d <= max_dim used across the geometry tests."""
    out = {
        "segment01": LatticePolytope([(0,), (1,)]),
        "segment02": LatticePolytope([(0,), (2,)]),
        "square": unit_cube(2),
        "cube3": unit_cube(3),
        "simplex2": standard_simplex(2),
        "simplex3": standard_simplex(3),
        "diamond": LatticePolytope([(1, 0), (-1, 0), (0, 1), (0, -1)]),
        "cross3": LatticePolytope([v for i in range(3) for v in
                                   (tuple(1 if k == i else 0 for k in range(3)),
                                    tuple(-1 if k == i else 0 for k in range(3)))]),
        "P1": make_cross_plus(1),
        "reeve": LatticePolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 3)]),
        "hexagon": LatticePolytope([(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]),
        "order_example": order_polytope(EXAMPLE_POSET),
        "order_chain2": order_polytope(Poset.chain(2)),
        "skew_triangle": LatticePolytope([(0, 0), (3, 1), (1, 2)]),
    }
    return {k: v for k, v in out.items() if v.dimension <= max_dim}


def brute_force_facets(vertices, d):
    """Facets by trying every d-subset of vertices as a hyperplane.

    Independent of the double description code: a hyperplane through d
    affinely independent vertices is a facet iff all vertices lie on one
    side.  Returns primitive (normal, offset) pairs for ``normal.x <= offset``.
    """
    from fractions import Fraction
    from math import gcd

    def det(m):
        m = [list(map(Fraction, r)) for r in m]
        n = len(m)
        sign, res = 1, Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                sign = -sign
            res *= m[c][c]
            for r in range(c + 1, n):
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        return sign * res

    facets = set()
    verts = [tuple(v) for v in vertices]
    for sub in itertools.combinations(verts, d):
        base = sub[0]
        rows = [[a - b for a, b in zip(v, base)] for v in sub[1:]]
        # normal by cofactor expansion of the (d-1) x d matrix
        normal = []
        for k in range(d):
            minor = [r[:k] + r[k + 1:] for r in rows]
            normal.append((-1) ** k * det(minor) if minor else Fraction(1))
        if not any(normal):
            continue
        normal = [int(x) for x in normal]
        off = sum(a * b for a, b in zip(normal, base))
        vals = [sum(a * b for a, b in zip(normal, v)) for v in verts]
        if all(x <= off for x in vals):
            pass
        elif all(x >= off for x in vals):
            normal, off = [-a for a in normal], -off
        else:
            continue
        g = 0
        for x in normal + [off]:
            g = gcd(g, x)
        facets.add((tuple(a // g for a in normal), off // g))
    return facets


def box_scan(polytope, n, interior=False, facets=None):
    """Lattice points of n*P by scanning the bounding box."""
    d = polytope.dimension
    if facets is None:
        facets = brute_force_facets(polytope.vertices, d)
    box = polytope.bounding_box(n)
    pts = []
    for p in itertools.product(*[range(lo, hi + 1) for lo, hi in box]):
        vals = [sum(a * b for a, b in zip(nr, p)) for nr, _ in facets]
        if interior:
            ok = all(v < n * off for v, (_, off) in zip(vals, facets))
        else:
            ok = all(v <= n * off for v, (_, off) in zip(vals, facets))
        if ok:
            pts.append(p)
    return pts


@pytest.fixture
def rng():
    return random.Random(20240511)


# one summary line per acceptance criterion

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and "::test_criterion_" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
            _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda s: int(s.split("_")[2])):
        outcome = _acceptance[name]
        mark = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"{mark:7} {name}")
