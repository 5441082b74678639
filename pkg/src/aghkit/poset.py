"""Finite posets, linear extensions and descent statistics.

Elements are ``x1..xn`` and are addressed by their 1-based labels in every
public function.  A permutation is a plain tuple in one-line notation
``(a1, ..., an)``; for ``n <= 9`` it prints as the familiar word ``2413``.

The h-vector of the Hibi ring of a naturally labeled poset ``P`` is the
descent histogram over its linear extensions, read as words
``sigma^-1(1) ... sigma^-1(n)``.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NewType, Sequence

from .errors import ConsistencyError, CycleError, InvalidInputError, ParseError

__all__ = [
    "Permutation", "Poset", "as_permutation", "descent_count", "descent_set",
    "format_word", "h_vector_from_descents", "make_Pm", "make_Qm",
    "order_preserving_permutations", "parse_poset", "parse_word",
    "socle_degree",
]

# one-line notation a1 a2 ... an of a bijection on {1..n}
Permutation = NewType("Permutation", tuple)


def as_permutation(seq: Iterable[int]) -> Permutation:
    t = tuple(int(a) for a in seq)
    if sorted(t) != list(range(1, len(t) + 1)):
        raise InvalidInputError(f"{t} is not a permutation of 1..{len(t)}")
    return Permutation(t)


def parse_word(word: str) -> Permutation:
    """``"2413"`` or ``"10 2 ..."``/``"10,2,..."`` for n >= 10."""
    word = word.strip()
    if "," in word or " " in word:
        parts = word.replace(",", " ").split()
        return as_permutation(int(p) for p in parts)
    return as_permutation(int(c) for c in word)


def format_word(perm: Sequence[int]) -> str:
    if len(perm) <= 9:
        return "".join(str(a) for a in perm)
    return " ".join(str(a) for a in perm)


def descent_set(perm: Sequence[int]) -> frozenset[int]:
    """Positions ``i`` (1-based) with ``perm(i) > perm(i+1)``."""
    return frozenset(i + 1 for i in range(len(perm) - 1) if perm[i] > perm[i + 1])


def descent_count(perm: Sequence[int]) -> int:
    return sum(1 for i in range(len(perm) - 1) if perm[i] > perm[i + 1])


@dataclass(frozen=True)
class Poset:
    """Strict order on ``x1..xn``.

    ``above[i]`` is the set of 0-based indices ``j`` with ``x_{i+1} < x_{j+1}``.
    Use :meth:`from_relations` to build one from generating relations; it
    takes the transitive closure and rejects cycles.
    """

    n: int
    above: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.above) != self.n:
            raise InvalidInputError("relation table has wrong size")
        for i, up in enumerate(self.above):
            if i in up:
                raise InvalidInputError(f"x{i + 1} < x{i + 1}: not irreflexive")
            for j in up:
                if not 0 <= j < self.n:
                    raise InvalidInputError(f"element index {j + 1} out of range")
                if i in self.above[j]:
                    raise InvalidInputError(
                        f"x{i + 1} < x{j + 1} < x{i + 1}: not antisymmetric")
                if not self.above[j] <= up:
                    raise InvalidInputError("relation is not transitive")

    @classmethod
    def from_relations(cls, n: int, relations: Iterable[tuple[int, int]]) -> "Poset":
        """Poset generated by 1-based relations ``(i, j)`` meaning ``xi < xj``."""
        if n < 0:
            raise InvalidInputError("element count must be nonnegative")
        succ = [set() for _ in range(n)]
        for i, j in relations:
            if not (1 <= i <= n and 1 <= j <= n):
                raise InvalidInputError(f"relation x{i} < x{j} out of range 1..{n}")
            if i == j:
                raise CycleError((i, i))
            succ[i - 1].add(j - 1)
        cycle = _find_cycle(succ)
        if cycle:
            raise CycleError([c + 1 for c in cycle])
        closure = []
        for i in range(n):
            seen, stack = set(), list(succ[i])
            while stack:
                j = stack.pop()
                if j not in seen:
                    seen.add(j)
                    stack.extend(succ[j])
            closure.append(frozenset(seen))
        return cls(n, tuple(closure))

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(n, tuple(frozenset() for _ in range(n)))

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls.from_relations(n, [(i, i + 1) for i in range(1, n)])

    def less(self, i: int, j: int) -> bool:
        """``xi < xj`` for 1-based labels."""
        return (j - 1) in self.above[i - 1]

    @cached_property
    def below(self) -> tuple[frozenset[int], ...]:
        down = [set() for _ in range(self.n)]
        for i, up in enumerate(self.above):
            for j in up:
                down[j].add(i)
        return tuple(frozenset(s) for s in down)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover relations as 0-based pairs ``(i, j)``, ``xi`` covered by ``xj``."""
        out = []
        for i, up in enumerate(self.above):
            for j in sorted(up):
                if not any(j in self.above[k] for k in up):
                    out.append((i, j))
        return tuple(out)

    def cover_relations(self) -> list[tuple[int, int]]:
        """1-based cover pairs, sorted."""
        return sorted((i + 1, j + 1) for i, j in self.covers)

    def is_natural(self) -> bool:
        return all(j > i for i, up in enumerate(self.above) for j in up)

    def natural_relabeling(self) -> tuple["Poset", tuple[int, ...]]:
        """A naturally labeled copy and the relabeling used.

        Topological sort breaking ties by smallest original index.  Returns
        ``(poset, old)`` where new element ``x_k`` is old element ``x_{old[k-1]}``.
        """
        indeg = [len(b) for b in self.below]
        heap = [i for i in range(self.n) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            i = heapq.heappop(heap)
            order.append(i)
            for j in self.above[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(heap, j)
        new_of = {old: new for new, old in enumerate(order)}
        above = tuple(frozenset(new_of[j] for j in self.above[old]) for old in order)
        return Poset(self.n, above), tuple(i + 1 for i in order)

    def relabel(self, old: Sequence[int]) -> "Poset":
        """Copy where new ``x_k`` is old ``x_{old[k-1]}``."""
        new_of = {o - 1: k for k, o in enumerate(old)}
        return Poset(self.n, tuple(
            frozenset(new_of[j] for j in self.above[o - 1]) for o in old))

    @cached_property
    def longest_chain(self) -> int:
        """Number of elements in a longest chain."""
        if self.n == 0:
            return 0
        height = [1] * self.n
        for i in self._topological():
            for j in self.above[i]:
                height[j] = max(height[j], height[i] + 1)
        return max(height)

    def _topological(self) -> list[int]:
        return sorted(range(self.n), key=lambda i: len(self.below[i]))

    def depth_below(self, i: int) -> int:
        """Elements in a longest chain strictly below 0-based ``i``."""
        return self._depths[i]

    @cached_property
    def _depths(self):
        depth = [0] * self.n
        for i in self._topological():
            for j in self.above[i]:
                depth[j] = max(depth[j], depth[i] + 1)
        return tuple(depth)

    @cached_property
    def _heights(self):
        height = [0] * self.n
        for i in reversed(self._topological()):
            for j in self.below[i]:
                height[j] = max(height[j], height[i] + 1)
        return tuple(height)

    def height_above(self, i: int) -> int:
        """Elements in a longest chain strictly above 0-based ``i``."""
        return self._heights[i]

    def linear_extensions(self) -> Iterator[tuple[int, ...]]:
        """All linear extensions as words of 1-based labels.

        Backtracking over the current minimal elements, smallest label first,
        so the output is in lexicographic order.
        """
        n = self.n
        remaining_below = [len(b) for b in self.below]
        word: list[int] = []
        used = [False] * n

        def rec():
            if len(word) == n:
                yield tuple(word)
                return
            for i in range(n):
                if not used[i] and remaining_below[i] == 0:
                    used[i] = True
                    word.append(i + 1)
                    for j in self.above[i]:
                        remaining_below[j] -= 1
                    yield from rec()
                    for j in self.above[i]:
                        remaining_below[j] += 1
                    word.pop()
                    used[i] = False

        yield from rec()

    def count_linear_extensions(self) -> int:
        """Count by memoized DFS over down-sets (independent of enumeration)."""
        full = (1 << self.n) - 1
        below_mask = [sum(1 << j for j in b) for b in self.below]
        memo = {full: 1}

        def rec(mask):
            if mask in memo:
                return memo[mask]
            total = 0
            for i in range(self.n):
                bit = 1 << i
                if not mask & bit and below_mask[i] & mask == below_mask[i]:
                    total += rec(mask | bit)
            memo[mask] = total
            return total

        return rec(0)

    def order_ideals(self) -> list[frozenset[int]]:
        """All down-sets, as sets of 0-based indices."""
        order = self._topological()
        below_mask = [sum(1 << j for j in b) for b in self.below]
        masks = [0]
        # an element may join a down-set only once everything below it has;
        # topological order guarantees those decisions were already made
        for i in order:
            bit = 1 << i
            masks += [m | bit for m in masks if below_mask[i] & m == below_mask[i]]
        return [frozenset(k for k in range(self.n) if m >> k & 1) for m in masks]


def _find_cycle(succ) -> list[int]:
    """A directed cycle ``[a, b, ..., a]`` in the relation graph, or ``[]``."""
    color = [0] * len(succ)
    parent = [-1] * len(succ)
    for root in range(len(succ)):
        if color[root]:
            continue
        stack = [(root, iter(sorted(succ[root])))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
            elif color[nxt] == 0:
                color[nxt] = 1
                parent[nxt] = node
                stack.append((nxt, iter(sorted(succ[nxt]))))
            elif color[nxt] == 1:
                path = [node]
                while path[-1] != nxt:
                    path.append(parent[path[-1]])
                return path[::-1] + [nxt]
    return []


# ---------------------------------------------------------------------------
# the two families


def make_Pm(m: int) -> Poset:
    """Odd chain x1<x3<...<x_{2m-1}, even chain x2<...<x_{2m}, plus x1<x_{2m}."""
    if m < 3:
        raise InvalidInputError("P_m needs m >= 3")
    rel = [(j, j + 2) for j in range(1, 2 * m - 1)]
    rel.append((1, 2 * m))
    return Poset.from_relations(2 * m, rel)


def make_Qm(m: int) -> Poset:
    """P_m with the extra relation x2 < x_{2m-1}."""
    if m < 3:
        raise InvalidInputError("Q_m needs m >= 3")
    rel = [(j, j + 2) for j in range(1, 2 * m - 1)]
    rel += [(1, 2 * m), (2, 2 * m - 1)]
    return Poset.from_relations(2 * m, rel)


# ---------------------------------------------------------------------------
# descents


def _require_natural(poset: Poset):
    if not poset.is_natural():
        raise InvalidInputError(
            "poset is not naturally labeled; use natural_relabeling() first")


def order_preserving_permutations(poset: Poset) -> frozenset[Permutation]:
    """The set of words sigma^-1(1)...sigma^-1(n) over order-preserving bijections."""
    _require_natural(poset)
    return frozenset(Permutation(w) for w in poset.linear_extensions())


def socle_degree(poset: Poset) -> int:
    """``#P`` minus the size of a longest chain."""
    return poset.n - poset.longest_chain


def h_vector_from_descents(poset: Poset):
    """Descent histogram over the linear extensions of a natural labeling.

    Returns an :class:`~aghkit.ehrhart.HVector`.  Its socle degree is checked
    against ``#P - longest chain``.
    """
    from .ehrhart import HVector

    _require_natural(poset)
    hist = Counter(descent_count(w) for w in poset.linear_extensions())
    top = max(hist)
    h = HVector(tuple(hist.get(i, 0) for i in range(top + 1)), poset.n)
    if h.socle_degree != socle_degree(poset):
        raise ConsistencyError(
            f"descent histogram has socle degree {h.socle_degree}, "
            f"chain formula gives {socle_degree(poset)}")
    return h


# ---------------------------------------------------------------------------
# text format


def parse_poset(text: str) -> Poset:
    """``elements n`` then one ``i < j`` relation per line; ``#`` comments."""
    n = None
    rel = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "elements":
                raise ParseError("expected 'elements n'", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"bad element count {parts[1]!r}", lineno) from None
            if n < 1:
                raise ParseError("element count must be positive", lineno)
            continue
        parts = line.split("<")
        if len(parts) != 2:
            raise ParseError(f"expected 'i < j', got {line!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"expected integers in {line!r}", lineno) from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"element out of range 1..{n}", lineno)
        rel.append((i, j))
    if n is None:
        raise ParseError("missing 'elements n' header")
    return Poset.from_relations(n, rel)


def format_poset(poset: Poset, comment: str = "") -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"elements {poset.n}")
    lines += [f"{i} < {j}" for i, j in poset.cover_relations()]
    return "\n".join(lines) + "\n"
