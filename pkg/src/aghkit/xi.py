"""The descent-complementing bijection on linear extensions of ``P_m``.

``S_inv`` is the set of linear-extension words of ``P_m``.  Removing the
special word ``tau = 1 3 2 5 4 ... (2m-1)(2m-2) 2m`` and sorting the rest by
descent count gives strata ``T_0..T_m``; :func:`xi` maps ``T_i`` into
``T_{m-i}``.  For ``pi`` in ``T_i``, every descent ``j`` removes the two
values ``pi(j), pi(j+1)``; the surviving odd values ``p_1 < ... < p_k`` and
even values ``q_1 < ... < q_k`` (``k = m - i``) determine the image
``a_1 ... a_{2m}`` step by step.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .errors import ConsistencyError, DomainError, InvalidInputError
from .poset import (descent_count, descent_set, format_word, make_Pm,
                    order_preserving_permutations)

__all__ = ["XiContext", "BijectionReport", "build_context", "make_tau",
           "survivors", "xi", "verify_bijection"]


def make_tau(m: int) -> tuple[int, ...]:
    word = [1]
    for k in range(1, m):
        word += [2 * k + 1, 2 * k]
    word.append(2 * m)
    return tuple(word)


@dataclass(frozen=True)
class XiContext:
    m: int
    s_inv: frozenset
    tau: tuple[int, ...]
    strata: dict = field(hash=False, compare=False)

    def stratum_sizes(self) -> dict[int, int]:
        return {i: len(self.strata[i]) for i in range(self.m + 1)}


def _direct_s_inv(m: int) -> frozenset:
    """Filter S_{2m} by the defining inequalities and invert."""
    n = 2 * m
    out = set()
    for sigma in itertools.permutations(range(1, n + 1)):
        # sigma[k-1] = sigma(k)
        if all(sigma[k] < sigma[k + 2] for k in range(n - 2)) and sigma[0] < sigma[n - 1]:
            inv = [0] * n
            for k, v in enumerate(sigma, 1):
                inv[v - 1] = k
            out.add(tuple(inv))
    return frozenset(out)


def build_context(m: int, direct_check: Optional[bool] = None) -> XiContext:
    """Strata of ``Q(P_m)`` minus ``tau``.

    For ``m <= 4`` (or when ``direct_check``) the set is also computed by
    filtering all of ``S_{2m}`` and the two must agree.
    """
    if m < 3:
        raise InvalidInputError("m must be at least 3")
    s_inv = frozenset(order_preserving_permutations(make_Pm(m)))
    if direct_check is None:
        direct_check = m <= 4
    if direct_check and _direct_s_inv(m) != s_inv:
        raise ConsistencyError("linear extensions of P_m disagree with the direct filter")
    tau = make_tau(m)
    if tau not in s_inv:
        raise ConsistencyError("tau is not a linear extension of P_m")
    strata = {i: [] for i in range(m + 1)}
    for pi in sorted(s_inv):
        if pi != tau:
            strata[descent_count(pi)].append(pi)
    return XiContext(m, s_inv, tau, {i: tuple(v) for i, v in strata.items()})


def survivors(pi) -> tuple[list[int], list[int]]:
    """Odd and even values of ``pi`` not touched by a descent, ascending."""
    gone = set()
    for j in descent_set(pi):
        gone.update((pi[j - 1], pi[j]))
    n = len(pi)
    p = [v for v in range(1, n + 1, 2) if v not in gone]
    q = [v for v in range(2, n + 1, 2) if v not in gone]
    return p, q


def _threshold(pj, qj) -> int:
    # p odd, q even: the half-integer bound (p+q+1)/2 is an integer
    total = pj + qj + 1
    if total % 2:
        raise ConsistencyError(f"(p+q+1)/2 not integral for p={pj}, q={qj}")
    return total // 2


def _pick(arms, diag):
    """Exactly one specific arm may match; otherwise the fallback."""
    hits = [val for cond, val in arms[:-1] if cond]
    if len(hits) > 1:
        raise ConsistencyError(f"ambiguous case table: {diag}")
    return hits[0] if hits else arms[-1][1]


def xi(context: XiContext, pi) -> tuple[int, ...]:
    """Image of ``pi`` in ``T_{m - d(pi)}``."""
    pi = tuple(pi)
    m = context.m
    if pi == context.tau:
        raise DomainError("xi is not defined at tau")
    if pi not in context.s_inv:
        raise DomainError(f"{format_word(pi)} is not a linear extension of P_{m}")
    p, q = survivors(pi)
    k = len(p)
    if len(q) != k or k != m - descent_count(pi):
        raise ConsistencyError(f"survivor counts {len(p)}, {len(q)} for {format_word(pi)}")
    n = 2 * m
    if k == 0:
        # nothing survives: the image is the unique word with no descents
        return tuple(range(1, n + 1))
    thresholds = [_threshold(p[j], q[j]) for j in range(k)]
    a = [2 if p[0] == 1 else 1]
    for ell in range(1, n):
        cur = a[-1]
        diag = dict(pi=format_word(pi), ell=ell, a=cur, p=p, q=q)
        if ell < thresholds[0]:
            p1, q1 = p[0], q[0]
            nxt = _pick([
                (cur <= min(p1, q1) - 2, cur + 1),
                (cur == q1 and q1 > p1, p1),
                (cur == p1 and p1 > q1, q1),
                (True, cur + 2),
            ], diag)
        elif ell >= thresholds[-1]:
            nxt = _pick([
                (cur >= max(p[-1], q[-1]) + 1, cur + 1),
                (True, cur + 2),
            ], diag)
        else:
            j = next(j for j in range(1, k) if thresholds[j - 1] <= ell < thresholds[j])
            pp, qp, pj, qj = p[j - 1], q[j - 1], p[j], q[j]
            nxt = _pick([
                (max(pp, qp) + 1 <= cur <= min(pj, qj) - 2, cur + 1),
                (cur <= pp and pp > qp and cur + 2 == qj, pp + 2),
                (cur <= qp and qp > pp and cur + 2 == pj, qp + 2),
                (cur == qj and qj > pj, pj),
                (cur == pj and pj > qj, qj),
                (True, cur + 2),
            ], diag)
        a.append(nxt)
    return tuple(a)


@dataclass
class BijectionReport:
    m: int
    stratum_sizes: dict
    clause_a: bool = True
    clause_b: bool = True
    clause_c: bool = True
    involution: bool = True
    counterexamples: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.clause_a and self.clause_b and self.clause_c

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "stratum_sizes": {str(i): s for i, s in self.stratum_sizes.items()},
            "clauses": {"a": self.clause_a, "b": self.clause_b, "c": self.clause_c},
            "involution": self.involution,
            "passed": self.passed,
            "counterexamples": self.counterexamples,
            "trace": self.trace,
        }


def verify_bijection(context: XiContext, trace: tuple = ()) -> BijectionReport:
    """Check the three claims about ``xi`` exhaustively.

    (a) the image is a permutation with ``d = m - i`` and descent set
    ``{(p_j + q_j - 1)/2}``; (b) the image is again a linear extension of
    ``P_m``; (c) ``xi`` is injective on each stratum and ``|T_i| = |T_{m-i}|``.
    Also records whether ``xi`` is an involution, and asserts the excluded
    configuration ``(p_1, q_1) = (1, 2m)`` with a single survivor pair never
    occurs.  ``trace`` lists words whose images go into the report.
    """
    m = context.m
    n = 2 * m
    rep = BijectionReport(m, context.stratum_sizes())
    images = {}

    def fail(clause, pi, detail):
        setattr(rep, f"clause_{clause}", False)
        if len(rep.counterexamples) < 10:
            rep.counterexamples.append({"clause": clause, "pi": format_word(pi),
                                        "detail": detail})

    for i in range(m + 1):
        seen = {}
        for pi in context.strata[i]:
            p, q = survivors(pi)
            if len(p) == 1 and (p[0], q[0]) == (1, n):
                raise ConsistencyError(f"excluded configuration at {format_word(pi)}")
            try:
                img = xi(context, pi)
            except ConsistencyError as exc:
                fail("a", pi, str(exc))
                continue
            images[pi] = img
            if sorted(img) != list(range(1, n + 1)):
                fail("a", pi, f"image {img} is not a permutation")
                continue
            want = frozenset((pj + qj - 1) // 2 for pj, qj in zip(p, q))
            if descent_count(img) != m - i or descent_set(img) != want:
                fail("a", pi, f"image {format_word(img)} has descents "
                              f"{sorted(descent_set(img))}, expected {sorted(want)}")
            if img not in context.s_inv or img == context.tau:
                fail("b", pi, f"image {format_word(img)} is not in T")
            if img in seen:
                fail("c", pi, f"collides with {format_word(seen[img])}")
            seen[img] = pi
        if len(context.strata[i]) != len(context.strata[m - i]):
            rep.clause_c = False
            rep.counterexamples.append({"clause": "c", "pi": None,
                                        "detail": f"|T_{i}| != |T_{m - i}|"})
    for pi, img in images.items():
        if images.get(img) != pi:
            rep.involution = False
            break
    for pi in trace:
        pi = tuple(pi)
        rep.trace.append({"pi": format_word(pi), "image": format_word(images[pi])})
    return rep


def h_vector_from_strata(context: XiContext) -> tuple[int, ...]:
    """``|T_i| + [i = d(tau)]``, which must equal the descent h-vector."""
    counts = Counter({i: len(v) for i, v in context.strata.items()})
    counts[descent_count(context.tau)] += 1
    top = max(i for i in counts if counts[i])
    return tuple(counts[i] for i in range(top + 1))
