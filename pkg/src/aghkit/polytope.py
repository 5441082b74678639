"""Lattice polytopes and exact lattice-point enumeration of their dilates."""

from __future__ import annotations

import threading
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, Optional, Sequence

from .errors import DimensionError, InvalidInputError, ParseError
from .geometry import (Halfspace, HalfspaceSystem, Projector, affine_rank,
                       dd_convert)
from .poset import Poset

__all__ = [
    "LatticePolytope", "count_points", "lattice_points", "make_cross_plus",
    "order_polytope", "parse_polytope", "format_polytope", "unit_cube",
    "standard_simplex",
]


class LatticePolytope:
    """Full-dimensional convex hull of integer points.

    The facet description is computed on first use (double description) and
    cached under a lock, as is the Fourier-Motzkin projector used by the
    enumerator.  Treat instances as immutable.
    """

    def __init__(self, vertices: Sequence[Sequence[int]], dimension: Optional[int] = None,
                 hrep: Optional[HalfspaceSystem] = None):
        verts = [tuple(v) for v in vertices]
        if not verts:
            raise InvalidInputError("empty vertex list")
        d = len(verts[0]) if dimension is None else dimension
        for v in verts:
            if len(v) != d:
                raise InvalidInputError(f"vertex {v} has length {len(v)}, expected {d}")
            if not all(isinstance(c, int) for c in v):
                raise InvalidInputError(f"vertex {v} is not a lattice point")
        r = affine_rank(verts)
        if r < d:
            raise DimensionError(r, d)
        self.dimension = d
        self.vertices = tuple(dict.fromkeys(verts))
        self._hrep = hrep
        self._projector: Optional[Projector] = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"LatticePolytope(dimension={self.dimension}, vertices={len(self.vertices)})"

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    @property
    def hrep(self) -> HalfspaceSystem:
        if self._hrep is None:
            with self._lock:
                if self._hrep is None:
                    self._hrep = dd_convert(self.vertices, self.dimension)
        return self._hrep

    @property
    def projector(self) -> Projector:
        if self._projector is None:
            hrep = self.hrep
            with self._lock:
                if self._projector is None:
                    self._projector = Projector(hrep, self.vertices)
        return self._projector

    def contains(self, x, n: int = 1, interior: bool = False) -> bool:
        """Membership of ``x`` in ``n*P`` (or its interior)."""
        return self.hrep.contains(x, strict=interior, scale=n)

    def bounding_box(self, n: int = 1) -> list[tuple[int, int]]:
        return [(n * min(v[i] for v in self.vertices), n * max(v[i] for v in self.vertices))
                for i in range(self.dimension)]

    def scaled(self, n: int) -> "LatticePolytope":
        """``n*P`` as a polytope in its own right (vertices multiplied)."""
        if n < 1:
            raise InvalidInputError("scale factor must be positive")
        return LatticePolytope([tuple(n * c for c in v) for v in self.vertices],
                               self.dimension)


# ---------------------------------------------------------------------------
# constructors


def make_cross_plus(e: int) -> LatticePolytope:
    """conv(+-e_1, ..., +-e_d, e_1 + ... + e_{d-1} + 2 e_d) with d = 2e+1."""
    if not isinstance(e, int) or e < 1:
        raise InvalidInputError("e must be a positive integer")
    d = 2 * e + 1
    verts = []
    for i in range(d):
        for sign in (1, -1):
            v = [0] * d
            v[i] = sign
            verts.append(tuple(v))
    verts.append(tuple([1] * (d - 1) + [2]))
    return LatticePolytope(verts, d)


def unit_cube(d: int) -> LatticePolytope:
    verts = [tuple((m >> i) & 1 for i in range(d)) for m in range(1 << d)]
    return LatticePolytope(verts, d)


def standard_simplex(d: int) -> LatticePolytope:
    verts = [tuple([0] * d)]
    for i in range(d):
        v = [0] * d
        v[i] = 1
        verts.append(tuple(v))
    return LatticePolytope(verts, d)


def order_polytope(poset: Poset) -> LatticePolytope:
    """``{a in [0,1]^n : a_i >= a_j whenever x_i <= x_j}``.

    Facets come straight from the definition (one row per cover relation,
    plus the box).  Vertices are indicator vectors of down-sets: with this
    orientation the support of a 0/1 point is closed downward.
    """
    n = poset.n
    if n < 1:
        raise InvalidInputError("order polytope of the empty poset")
    rows = []
    for i, j in poset.covers:
        normal = [0] * n
        normal[j], normal[i] = 1, -1
        rows.append(Halfspace(tuple(normal), 0))
    for i in range(n):
        lo = [0] * n
        lo[i] = -1
        hi = [0] * n
        hi[i] = 1
        rows += [Halfspace(tuple(lo), 0), Halfspace(tuple(hi), 1)]
    verts = [tuple(1 if i in ideal else 0 for i in range(n))
             for ideal in poset.order_ideals()]
    verts.sort()
    return LatticePolytope(verts, n, HalfspaceSystem(n, tuple(rows)))


# ---------------------------------------------------------------------------
# enumeration


def _count_rec(proj: Projector, prefix: list, n: int, strict: bool, d: int) -> int:
    lo, hi = proj.integer_bounds(prefix, n, strict)
    if lo > hi:
        return 0
    if len(prefix) == d - 1:
        return hi - lo + 1
    total = 0
    for x in range(lo, hi + 1):
        prefix.append(x)
        total += _count_rec(proj, prefix, n, strict, d)
        prefix.pop()
    return total


def _count_slice(args):
    polytope, n, strict, first = args
    return _count_rec(polytope.projector, [first], n, strict, polytope.dimension)


def count_points(polytope: LatticePolytope, n: int, interior_only: bool = False,
                 threads: int = 1) -> int:
    """Number of lattice points in ``n*P`` (or in its interior).

    Coordinates are enumerated 1..d; each coordinate ranges over the exact
    integer interval left open by the ones before it, and the last one is
    counted without iterating.  With ``threads > 1`` the values of the first
    coordinate are split across worker processes; the total does not depend
    on the split.
    """
    if n < 0:
        raise InvalidInputError("dilation factor must be nonnegative")
    if n == 0:
        # 0*P = {0}; it has empty interior unless d = 0
        return 0 if interior_only else 1
    proj = polytope.projector
    d = polytope.dimension
    lo, hi = proj.integer_bounds([], n, interior_only)
    if lo > hi:
        return 0
    if d == 1:
        return hi - lo + 1
    if threads <= 1:
        return _count_rec(proj, [], n, interior_only, d)
    jobs = [(polytope, n, interior_only, x) for x in range(lo, hi + 1)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(_count_slice, jobs))


def lattice_points(polytope: LatticePolytope, n: int = 1,
                   interior_only: bool = False) -> Iterator[tuple[int, ...]]:
    """Lattice points of ``n*P`` in lexicographic order."""
    if n == 0:
        if not interior_only:
            yield (0,) * polytope.dimension
        return
    proj = polytope.projector
    d = polytope.dimension
    prefix: list[int] = []

    def rec():
        lo, hi = proj.integer_bounds(prefix, n, interior_only)
        for x in range(lo, hi + 1):
            prefix.append(x)
            if len(prefix) == d:
                yield tuple(prefix)
            else:
                yield from rec()
            prefix.pop()

    yield from rec()


# ---------------------------------------------------------------------------
# text format


def parse_polytope(text: str) -> LatticePolytope:
    """``dim d`` then one vertex per line; ``#`` lines ignored."""
    d = None
    verts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if d is None:
            if len(parts) != 2 or parts[0] != "dim":
                raise ParseError("expected 'dim d'", lineno)
            try:
                d = int(parts[1])
            except ValueError:
                raise ParseError(f"bad dimension {parts[1]!r}", lineno) from None
            if d < 1:
                raise ParseError("dimension must be positive", lineno)
            continue
        if len(parts) != d:
            raise ParseError(f"expected {d} coordinates, got {len(parts)}", lineno)
        try:
            verts.append(tuple(int(p) for p in parts))
        except ValueError:
            raise ParseError(f"non-integer coordinate in {line!r}", lineno) from None
    if d is None:
        raise ParseError("missing 'dim d' header")
    if not verts:
        raise ParseError("no vertices")
    return LatticePolytope(verts, d)


def format_polytope(polytope: LatticePolytope, comment: str = "") -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"dim {polytope.dimension}")
    lines += [" ".join(str(c) for c in v) for v in polytope.vertices]
    return "\n".join(lines) + "\n"
