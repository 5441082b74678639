"""Canonical ideals of Hibi rings via strictly order-reversing maps.

``P^ = P + {0^, 1^}`` with ``0^`` below and ``1^`` above everything.  A map
``v : P^ -> Z>=0`` with ``v(1^) = 0`` is order-reversing if ``x >= y``
implies ``v(x) <= v(y)``, strictly order-reversing if ``x > y`` implies
``v(x) < v(y)``.  Strict maps index a monomial basis of the canonical ideal,
graded by ``v(0^)``; a strict map is a minimal generator iff it is not
``u + w`` with ``u`` strict and ``w`` order-reversing, ``w != 0``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import InvalidInputError, SizeCapError
from .poset import Poset, make_Pm

__all__ = [
    "GeneratorSet", "OrderReversingMap", "enumerate_strict_maps",
    "is_decomposable", "make_vi", "minimal_generators", "min_strict_degree",
    "DEFAULT_SIZE_CAP",
]

DEFAULT_SIZE_CAP = 12


@dataclass(frozen=True)
class OrderReversingMap:
    """Values on ``P^``: ``values[i]`` at ``x_{i+1}``, ``bottom`` at ``0^``,
    and 0 at ``1^`` (implicit)."""

    values: tuple[int, ...]
    bottom: int
    strict: bool = True

    def __getitem__(self, i):
        return self.values[i]

    def table(self) -> dict:
        out = {"0^": self.bottom}
        out.update({f"x{i + 1}": v for i, v in enumerate(self.values)})
        out["1^"] = 0
        return out

    def check(self, poset: Poset) -> bool:
        """Whether the map is (strictly, if flagged) order-reversing on ``P^``."""
        gap = 1 if self.strict else 0
        v = self.values
        if any(x < 0 for x in v) or self.bottom < 0:
            return False
        for i, j in poset.covers:
            if v[i] - v[j] < gap:
                return False
        for i in range(poset.n):
            if not poset.above[i] and v[i] < gap:
                return False
            if not poset.below[i] and self.bottom - v[i] < gap:
                return False
        if poset.n == 0 and self.bottom < gap:
            return False
        return True


@dataclass
class GeneratorSet:
    generators: list[OrderReversingMap]
    min_degree: int
    socle_degree: int
    degree_histogram: tuple[int, ...]

    @property
    def cm_type(self) -> int:
        return len(self.generators)

    @property
    def degrees(self) -> Counter:
        return Counter(g.bottom for g in self.generators)

    def to_json(self) -> dict:
        return {
            "min_degree": self.min_degree,
            "socle_degree": self.socle_degree,
            "degree_histogram": list(self.degree_histogram),
            "cm_type": self.cm_type,
            "generators": [g.table() for g in self.generators],
        }


def min_strict_degree(poset: Poset) -> int:
    """Smallest ``v(0^)`` of a strict map: longest chain of ``P`` plus one."""
    return poset.longest_chain + 1


def _strict_assignments(poset: Poset, top_cap: int) -> Iterator[tuple[int, ...]]:
    """Strict assignments on ``P`` with every value <= top_cap.

    Elements are filled from the top of the poset down; each gets the
    interval ``[1 + max over covers above, top_cap - depth below]``.
    """
    n = poset.n
    order = sorted(range(n), key=lambda i: -len(poset.below[i]))
    up_covers = [[] for _ in range(n)]
    for i, j in poset.covers:
        up_covers[i].append(j)
    values = [0] * n

    def rec(k):
        if k == n:
            yield tuple(values)
            return
        i = order[k]
        lo = 1 + max((values[j] for j in up_covers[i]), default=0)
        hi = top_cap - poset.depth_below(i)
        for x in range(lo, hi + 1):
            values[i] = x
            yield from rec(k + 1)
        values[i] = 0

    yield from rec(0)


def enumerate_strict_maps(poset: Poset, degree_cap: int) -> list[OrderReversingMap]:
    """All strict maps with ``v(0^) <= degree_cap``, sorted by (degree, values)."""
    out = []
    for vals in _strict_assignments(poset, degree_cap - 1):
        lo = 1 + max(vals, default=0)
        for b in range(lo, degree_cap + 1):
            out.append(OrderReversingMap(vals, b))
    out.sort(key=lambda g: (g.bottom, g.values))
    return out


def is_decomposable(v: OrderReversingMap, poset: Poset) -> bool:
    """Whether ``v = u + w`` with ``u`` strict, ``w`` order-reversing, ``w != 0``.

    If such a ``w`` exists, the top level set ``I = {w = max w}`` also works
    (``w - 1_I = min(w, max w - 1)`` is order-reversing, and strict plus
    order-reversing is strict).  ``I`` is a down-set of ``P + {0^}``
    containing ``0^``, and ``v - 1_I`` is strict iff no cover ``x < y`` with
    ``v(x) = v(y) + 1`` has ``x`` in ``I`` and ``y`` outside.  So take the
    smallest set containing ``0^`` that is closed downward and along such
    tight covers: ``v`` decomposes iff that closure avoids ``1^``.
    """
    n = poset.n
    BOTTOM, TOP = n, n + 1

    def val(k):
        return v.bottom if k == BOTTOM else 0 if k == TOP else v.values[k]

    up = [[] for _ in range(n + 2)]
    for i, j in poset.covers:
        up[i].append(j)
    for i in range(n):
        if not poset.below[i]:
            up[BOTTOM].append(i)
        if not poset.above[i]:
            up[i].append(TOP)
    if n == 0:
        up[BOTTOM].append(TOP)

    closure = {BOTTOM}
    stack = [BOTTOM]
    while stack:
        x = stack.pop()
        new = [y for y in up[x] if val(x) == val(y) + 1]
        if x < n:
            new += list(poset.below[x])
        for y in new:
            if y == TOP:
                return False
            if y not in closure:
                closure.add(y)
                stack.append(y)
    return True


def minimal_generators(poset: Poset, degree_cap: Optional[int] = None,
                       allow_large: bool = False) -> GeneratorSet:
    """Minimal generators of the canonical ideal of the Hibi ring.

    They live in degrees ``m0 .. m0 + s - 1`` where ``m0`` is the minimal
    strict degree and ``s`` the socle degree; ``degree_cap`` widens the
    search window for soundness checks.
    """
    if poset.n > DEFAULT_SIZE_CAP and not allow_large:
        raise SizeCapError(
            f"poset has {poset.n} elements, cap is {DEFAULT_SIZE_CAP}; "
            "pass allow_large=True (CLI: --allow-large) to override")
    m0 = min_strict_degree(poset)
    s = poset.n - poset.longest_chain
    cap = m0 + max(s, 1) - 1 if degree_cap is None else degree_cap
    gens = [g for g in enumerate_strict_maps(poset, cap)
            if not is_decomposable(g, poset)]
    hist = Counter(g.bottom - m0 for g in gens)
    width = max(max(hist, default=-1) + 1, max(s, 1))
    return GeneratorSet(gens, m0, s, tuple(hist.get(j, 0) for j in range(width)))


def make_vi(m: int, i: int) -> OrderReversingMap:
    """The witness ``v_i`` on ``P_m``.

    ``v_i(x_j) = m + 1 - (j+1)/2`` for odd ``j`` and ``m + i - j/2`` for even
    ``j``, extended by ``v_i(0^) = 1 + max v_i``, the smallest strict
    extension.
    """
    if m < 3:
        raise InvalidInputError("m must be at least 3")
    if not 1 <= i <= m - 1:
        raise InvalidInputError(f"i must lie in 1..{m - 1}")
    vals = tuple(m + 1 - (j + 1) // 2 if j % 2 else m + i - j // 2
                 for j in range(1, 2 * m + 1))
    v = OrderReversingMap(vals, 1 + max(vals))
    assert v.check(make_Pm(m))
    return v
