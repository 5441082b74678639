"""Exact polyhedral primitives.

Everything here works over the integers or ``fractions.Fraction``; nothing
rounds.  A halfspace ``normal . x <= offset`` is stored with integer data
scaled so that ``gcd(normal..., offset) == 1``, which makes halfspaces
comparable by plain equality.

The two heavy operations are

* :func:`dd_convert` -- vertex description to facet description by the
  double description method, and
* :class:`Projector` -- Fourier-Motzkin elimination of trailing coordinates,
  giving exact bounds for coordinate ``k+1`` once coordinates ``1..k`` are
  fixed.  This is what drives lattice-point enumeration.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, InvalidInputError

__all__ = [
    "RationalVector", "Halfspace", "HalfspaceSystem", "Interval", "Projector",
    "affine_rank", "dd_convert", "is_redundant", "project_bounds",
]


# ---------------------------------------------------------------------------
# exact linear algebra helpers


def _row_reduce(rows):
    """Reduced row echelon form over Q. Returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(_row_reduce(rows)[1])


def nullspace(rows, ncols):
    """Basis of the right nullspace of ``rows`` (list of Fraction lists)."""
    red, pivots = _row_reduce(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(red, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of ``points`` (-1 for no points)."""
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def primitive(values: Iterable) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector, same direction."""
    vals = [Fraction(v) for v in values]
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class RationalVector:
    entries: tuple[Fraction, ...]

    def __init__(self, entries):
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)


@dataclass(frozen=True)
class Halfspace:
    """The closed halfspace ``normal . x <= offset``."""

    normal: tuple[int, ...]
    offset: int

    def __post_init__(self):
        if not any(self.normal):
            raise InvalidInputError("halfspace normal must be nonzero")
        g = math.gcd(*self.normal, self.offset)
        if g != 1:
            raise InvalidInputError(
                f"halfspace {self.normal} <= {self.offset} is not primitive; "
                "use Halfspace.make")

    @classmethod
    def make(cls, normal, offset) -> "Halfspace":
        """Build from arbitrary rational data, normalizing to primitive form."""
        *n, b = primitive(list(normal) + [offset])
        return cls(tuple(n), b)

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def value(self, x) -> Fraction | int:
        return sum(a * v for a, v in zip(self.normal, x))

    def contains(self, x, strict=False, scale=1) -> bool:
        lhs = self.value(x)
        return lhs < scale * self.offset if strict else lhs <= scale * self.offset

    def is_tight(self, x, scale=1) -> bool:
        return self.value(x) == scale * self.offset


@dataclass(frozen=True)
class HalfspaceSystem:
    dimension: int
    halfspaces: tuple[Halfspace, ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise InvalidInputError("dimension must be positive")
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        for h in self.halfspaces:
            if h.dimension != self.dimension:
                raise InvalidInputError(
                    f"halfspace of length {h.dimension} in a system of "
                    f"dimension {self.dimension}")

    def __len__(self):
        return len(self.halfspaces)

    def __iter__(self):
        return iter(self.halfspaces)

    def contains(self, x, strict=False, scale=1) -> bool:
        return all(h.contains(x, strict, scale) for h in self.halfspaces)

    def reduced(self) -> "HalfspaceSystem":
        """Drop redundant halfspaces one at a time (exact LP test)."""
        current = list(dict.fromkeys(self.halfspaces))
        i = 0
        while i < len(current):
            trial = HalfspaceSystem(self.dimension, tuple(current))
            if is_redundant(trial, i):
                del current[i]
            else:
                i += 1
        return HalfspaceSystem(self.dimension, tuple(current))

    def as_set(self) -> frozenset[Halfspace]:
        return frozenset(self.halfspaces)


@dataclass(frozen=True)
class Interval:
    """Rational interval; ``None`` marks an unbounded side."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    open: bool = False

    @property
    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        return self.lo >= self.hi if self.open else self.lo > self.hi

    def __contains__(self, v) -> bool:
        if self.open:
            return ((self.lo is None or v > self.lo)
                    and (self.hi is None or v < self.hi))
        return ((self.lo is None or v >= self.lo)
                and (self.hi is None or v <= self.hi))

    def integer_range(self) -> range:
        if self.lo is None or self.hi is None:
            raise ValueError("unbounded interval")
        if self.open:
            lo = math.floor(self.lo) + 1
            hi = math.ceil(self.hi) - 1
        else:
            lo = math.ceil(self.lo)
            hi = math.floor(self.hi)
        return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# V -> H conversion


def _check_vertices(vertices, dimension):
    if dimension < 1:
        raise InvalidInputError("dimension must be positive")
    if not vertices:
        raise InvalidInputError("empty vertex list")
    out = []
    for v in vertices:
        v = tuple(v)
        if len(v) != dimension:
            raise InvalidInputError(
                f"vertex {v} has length {len(v)}, expected {dimension}")
        if not all(isinstance(c, int) for c in v):
            raise InvalidInputError(f"vertex {v} has non-integer coordinates")
        out.append(v)
    return list(dict.fromkeys(out))


def _simplex_start(points, d):
    """Indices of d+1 affinely independent points (greedy)."""
    chosen = [0]
    diffs = []
    for i in range(1, len(points)):
        trial = diffs + [[a - b for a, b in zip(points[i], points[0])]]
        if rank(trial) == len(trial):
            diffs = trial
            chosen.append(i)
            if len(chosen) == d + 1:
                return chosen
    raise DimensionError(affine_rank(points), d)


def dd_convert(vertices: Sequence[Sequence[int]], dimension: int) -> HalfspaceSystem:
    """Facets of the convex hull of integer ``vertices`` in R^dimension.

    The facet cone ``{(b, a) : a.v <= b for all v}`` is built with the
    double description method, adding one vertex constraint at a time on
    top of an initial simplex.  Extreme rays are exactly the facets, so the
    result is irredundant by construction.
    """
    d = dimension
    points = _check_vertices(vertices, d)
    if len(points) < d + 1 or affine_rank(points) < d:
        raise DimensionError(affine_rank(points), d)

    def slack(ray, v):
        # ray = (b, a1..ad); positive inside
        return ray[0] - sum(a * x for a, x in zip(ray[1:], v))

    start = _simplex_start(points, d)
    rays: list[tuple[int, ...]] = []
    for i in start:
        rows = [[1] + [-x for x in points[j]] for j in start if j != i]
        (vec,) = nullspace(rows, d + 1)
        ray = primitive(vec)
        if slack(ray, points[i]) < 0:
            ray = tuple(-c for c in ray)
        rays.append(ray)
    zeros = [frozenset(j for j in start if slack(r, points[j]) == 0) for r in rays]

    order = start + [i for i in range(len(points)) if i not in set(start)]
    for idx in order[d + 1:]:
        v = points[idx]
        s = [slack(r, v) for r in rays]
        pos = [k for k, x in enumerate(s) if x > 0]
        neg = [k for k, x in enumerate(s) if x < 0]
        if not neg:
            for k, x in enumerate(s):
                if x == 0:
                    zeros[k] = zeros[k] | {idx}
            continue
        new_rays, new_zeros = [], []
        for k, x in enumerate(s):
            if x > 0:
                new_rays.append(rays[k])
                new_zeros.append(zeros[k])
            elif x == 0:
                new_rays.append(rays[k])
                new_zeros.append(zeros[k] | {idx})
        for p in pos:
            for n in neg:
                common = zeros[p] & zeros[n]
                if len(common) < d - 1:
                    continue
                if any(k != p and k != n and common <= zeros[k]
                       for k in range(len(rays))):
                    continue
                combo = [s[p] * rn - s[n] * rp for rp, rn in zip(rays[p], rays[n])]
                new_rays.append(primitive(combo))
                new_zeros.append(common | {idx})
        rays, zeros = new_rays, new_zeros

    halfspaces = sorted({Halfspace.make(r[1:], r[0]) for r in rays},
                        key=lambda h: (h.normal, h.offset))
    return HalfspaceSystem(d, tuple(halfspaces))


# ---------------------------------------------------------------------------
# redundancy


def is_redundant(system: HalfspaceSystem, index: int) -> bool:
    """True iff dropping halfspace ``index`` leaves the solution set unchanged.

    Decided by maximizing its normal over the remaining halfspaces with an
    exact rational simplex.
    """
    # sympy is slow to import and only needed here
    import sympy
    from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, lpmax

    target = system.halfspaces[index]
    rest = [h for i, h in enumerate(system.halfspaces) if i != index]
    xs = sympy.symbols(f"x0:{system.dimension}")

    def expr(h):
        return sum(int(a) * x for a, x in zip(h.normal, xs))

    if not rest:
        return False
    try:
        best, _ = lpmax(expr(target), [expr(h) <= h.offset for h in rest])
    except UnboundedLPError:
        return False
    except InfeasibleLPError:
        return True
    return best <= target.offset


# ---------------------------------------------------------------------------
# Fourier-Motzkin projection


def _eliminate_last(rows):
    """One FM step on rows (normal, offset) in k+1 variables."""
    pos, neg, out = [], [], []
    for a, b in rows:
        c = a[-1]
        if c > 0:
            pos.append((a, b))
        elif c < 0:
            neg.append((a, b))
        else:
            out.append((a[:-1], b))
    for ap, bp in pos:
        for an, bn in neg:
            cp, cn = ap[-1], -an[-1]
            normal = [cn * x + cp * y for x, y in zip(ap[:-1], an[:-1])]
            out.append((tuple(normal), cn * bp + cp * bn))
    return out


def _clean(rows):
    """Normalize, drop trivially true rows, dedupe."""
    seen = {}
    for a, b in rows:
        if not any(a):
            if b < 0:
                raise ValueError("projected system is infeasible")
            continue
        h = Halfspace.make(a, b)
        seen[h] = None
    return list(seen)


def _facets_only(halfspaces, points, k):
    """Keep halfspaces tight on an affinely (k-1)-dimensional set of points."""
    kept = []
    for h in halfspaces:
        tight = [p for p in points if h.is_tight(p)]
        if len(tight) >= k and affine_rank(tight) == k - 1:
            kept.append(h)
    return kept


class Projector:
    """Fourier-Motzkin eliminations of a system, computed once.

    ``levels[k]`` holds the projection of the solution set onto coordinates
    ``1..k`` as a list of halfspaces in k variables.  When the vertices of
    the (bounded) solution set are known, redundancy is removed by keeping
    only facet-defining rows of the projected hull; otherwise by exact LP.
    """

    def __init__(self, system: HalfspaceSystem, vertices=None):
        self.system = system
        d = system.dimension
        self.dimension = d
        self.levels: dict[int, list[Halfspace]] = {}
        rows = [(h.normal, h.offset) for h in system.halfspaces]
        current = list(system.halfspaces)
        if vertices is not None:
            current = _facets_only(current, [tuple(v) for v in vertices], d) \
                if affine_rank(list(vertices)) == d else current
        self.levels[d] = current
        for k in range(d - 1, 0, -1):
            rows = _eliminate_last([(h.normal, h.offset) for h in current])
            current = _clean(rows)
            if vertices is not None:
                pts = list(dict.fromkeys(tuple(v[:k]) for v in vertices))
                current = _facets_only(current, pts, k)
            else:
                current = list(HalfspaceSystem(k, tuple(current)).reduced())
            self.levels[k] = current
        # rows split for the enumeration inner loop:
        # (prefix coefficients, coefficient of the new coordinate, offset)
        self._bounding = {}
        self._guards = {}
        for k in range(1, d + 1):
            self._bounding[k] = [(h.normal[:-1], h.normal[-1], h.offset)
                                 for h in self.levels[k] if h.normal[-1] != 0]
            self._guards[k] = [h for h in self.levels[k] if h.normal[-1] == 0]

    def interval(self, prefix, scale=1, strict=False) -> Interval:
        """Exact interval for coordinate ``len(prefix)+1``."""
        k = len(prefix) + 1
        if k > self.dimension:
            raise InvalidInputError("prefix must be shorter than the dimension")
        for h in self._guards[k]:
            if not h.contains(tuple(prefix) + (0,), strict, scale):
                return Interval(Fraction(1), Fraction(0), strict)
        lo = hi = None
        for a, c, b in self._bounding[k]:
            r = Fraction(scale * b - sum(x * y for x, y in zip(a, prefix)), c)
            if c > 0:
                hi = r if hi is None else min(hi, r)
            else:
                lo = r if lo is None else max(lo, r)
        return Interval(lo, hi, strict)

    def integer_bounds(self, prefix, scale=1, strict=False):
        """Integer (lo, hi) for the next coordinate; assumes a feasible prefix.

        This is the enumeration hot path: integer arithmetic only, guard
        rows skipped because the prefix was itself drawn from the bounds.
        """
        k = len(prefix) + 1
        lo = hi = None
        for a, c, b in self._bounding[k]:
            r = scale * b
            for x, y in zip(a, prefix):
                r -= x * y
            if c > 0:
                v = (-((-r) // c) - 1) if strict else r // c
                if hi is None or v < hi:
                    hi = v
            else:
                v = (r // c + 1) if strict else -((-r) // c)
                if lo is None or v > lo:
                    lo = v
        return lo, hi


@functools.lru_cache(maxsize=64)
def _projector(system: HalfspaceSystem, vertices) -> Projector:
    return Projector(system, vertices)


def project_bounds(system: HalfspaceSystem, prefix: Sequence[int],
                   scale: int = 1, strict: bool = False,
                   vertices=None) -> Interval:
    """Exact interval of values for coordinate ``len(prefix)+1``.

    ``v`` is in the interval iff some completion ``(prefix, v, ...)`` lies in
    the solution set (dilated by ``scale``; open when ``strict``).  An
    infeasible prefix gives an empty interval.
    """
    if vertices is not None:
        vertices = tuple(tuple(v) for v in vertices)
    return _projector(system, vertices).interval(tuple(prefix), scale, strict)
