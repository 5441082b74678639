"""Numerical almost-Gorenstein criteria for Cohen-Macaulay homogeneous rings.

Given the h-vector ``(h_0, ..., h_s)`` of a ring ``R`` that embeds into its
shifted canonical module by a degree-0 injection with cokernel ``C``:

* ``h'_j = (h_s + ... + h_{s-j}) - (h_0 + ... + h_j)`` are the numerator
  coefficients of the Hilbert series of ``C``; all are nonnegative,
* ``e(C) = sum_j h'_j`` and ``mu(C) = r(R) - 1``,
* ``R`` is almost Gorenstein iff ``mu(C) = e(C)``.

:func:`classify` turns this, and the structural theorems for domains with
small socle degree, into a rule-based verdict that refuses to guess.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ehrhart import HVector
from .errors import (EmbeddingViolatedError, InconsistentProfileError,
                     InvalidInputError, NotApplicableError)

__all__ = [
    "AGReport", "RingProfile", "Verdict", "classify", "cumulative_diffs",
    "e_C", "is_gorenstein_symmetric", "mu_C", "suff_almost_symmetric",
    "type_upper_bound",
]


class Verdict(str, enum.Enum):
    GORENSTEIN = "Gorenstein"
    ALMOST_GORENSTEIN = "AlmostGorenstein"
    NOT_ALMOST_GORENSTEIN = "NotAlmostGorenstein"
    UNDECIDED = "Undecided"

    def __str__(self):
        return self.value


def _coeffs(h) -> tuple[int, ...]:
    return tuple(h.coeffs) if isinstance(h, HVector) else tuple(HVector(tuple(h)).coeffs)


def cumulative_diffs(h) -> tuple[int, ...]:
    """``h'_j`` for ``j = 0..s-1``."""
    c = _coeffs(h)
    s = len(c) - 1
    top = bottom = 0
    out = []
    for j in range(s):
        top += c[s - j]
        bottom += c[j]
        out.append(top - bottom)
    return tuple(out)


def e_C(h) -> int:
    """Multiplicity of the cokernel; raises if some ``h'_j < 0``."""
    diffs = cumulative_diffs(h)
    bad = [j for j, x in enumerate(diffs) if x < 0]
    if bad:
        raise EmbeddingViolatedError(
            f"h'_{bad[0]} = {diffs[bad[0]]} < 0: no degree-0 embedding into the "
            "canonical module can exist for this h-vector")
    return sum(diffs)


def mu_C(r: int) -> int:
    if r < 1:
        raise InvalidInputError("Cohen-Macaulay type must be positive")
    return r - 1


def is_gorenstein_symmetric(h) -> bool:
    c = _coeffs(h)
    return c == c[::-1]


def suff_almost_symmetric(h) -> bool:
    """``h_i = h_{s-i}`` for ``i < floor(s/2)``."""
    c = _coeffs(h)
    s = len(c) - 1
    return all(c[i] == c[s - i] for i in range(s // 2))


def type_upper_bound(h) -> int:
    """``sum_{i>=2} h_i - (s-2) h_1``, an upper bound on the type of a domain."""
    c = _coeffs(h)
    s = len(c) - 1
    if s < 2:
        raise NotApplicableError("type bound needs socle degree at least 2")
    return sum(c[2:]) - (s - 2) * c[1]


@dataclass(frozen=True)
class RingProfile:
    """What is known about ``R``.

    ``generator_degrees[j]`` is the number of minimal generators of the
    canonical module in degree ``-a + j`` (when available, e.g. for Hibi
    rings).
    """

    h: HVector
    cm_type: Optional[int] = None
    is_domain: bool = False
    satisfies_embedding: bool = True
    generator_degrees: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if not isinstance(self.h, HVector):
            object.__setattr__(self, "h", HVector(tuple(self.h)))
        if self.is_domain and not self.satisfies_embedding:
            raise InconsistentProfileError("a domain always embeds into its canonical ideal")
        if self.cm_type is not None:
            if self.cm_type < 1:
                raise InvalidInputError("Cohen-Macaulay type must be positive")
            if self.cm_type < self.h[-1]:
                raise InconsistentProfileError(
                    f"type r = {self.cm_type} is below h_s = {self.h[-1]}")
        if self.generator_degrees is not None:
            object.__setattr__(self, "generator_degrees", tuple(self.generator_degrees))


@dataclass
class AGReport:
    verdict: Verdict
    e_C: int
    mu_C: Optional[int]
    cumulative_diffs: tuple[int, ...]
    criteria_fired: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "e_C": self.e_C,
            "mu_C": self.mu_C,
            "diffs": list(self.cumulative_diffs),
            "rules": list(self.criteria_fired),
            "warnings": list(self.warnings),
        }


AG, NOT_AG, GOR = (Verdict.ALMOST_GORENSTEIN, Verdict.NOT_ALMOST_GORENSTEIN,
                   Verdict.GORENSTEIN)


def _compatible(a: Verdict, b: Verdict) -> bool:
    positive = {AG, GOR}
    return (a in positive) == (b in positive)


def applicable_rules(profile: RingProfile) -> list[tuple[str, Verdict]]:
    """Every rule that applies to ``profile``, in priority order."""
    c = profile.h.coeffs
    s = len(c) - 1
    dom = profile.is_domain
    e = e_C(c)
    out = []
    if dom and is_gorenstein_symmetric(c):
        out.append(("symmetric", GOR))
    if s == 1:
        out.append(("socle-1", AG))
    if suff_almost_symmetric(c):
        out.append(("almost-symmetric", AG))
    if dom and s == 2:
        out.append(("domain-socle-2", AG if c[2] == 1 else NOT_AG))
    if dom and s == 3:
        out.append(("domain-socle-3", AG if c[3] == 1 else NOT_AG))
    if profile.cm_type is not None:
        out.append(("type-criterion", AG if profile.cm_type - 1 == e else NOT_AG))
    if profile.generator_degrees is not None and s >= 1:
        out.append(("generator-degrees", _degree_verdict(profile)))
    if dom and s >= 2 and c[-1] > 1 and e - (type_upper_bound(c) - 1) > 0:
        out.append(("bound-gap", NOT_AG))
    return out


def _degree_verdict(profile: RingProfile) -> Verdict:
    c = profile.h.coeffs
    s = len(c) - 1
    diffs = cumulative_diffs(c)
    deg = list(profile.generator_degrees) + [0] * s
    return AG if all(deg[j] == diffs[j] for j in range(1, s)) else NOT_AG


def classify(profile: RingProfile) -> AGReport:
    """First applicable rule decides; all applicable rules are recorded.

    Rules, by priority: ``symmetric`` (domain, symmetric h: Gorenstein),
    ``socle-1``, ``almost-symmetric``, ``domain-socle-2``, ``domain-socle-3``,
    ``type-criterion`` (``r - 1 == e(C)``), ``generator-degrees`` (degree
    histogram of the canonical module against ``h'_j``, j >= 1), and
    ``bound-gap`` -- for a domain, ``mu(C) <= bound - 1``, so
    ``e(C) > bound - 1`` rules out almost Gorenstein.  ``bound-gap`` is a
    consequence of a proof rather than a stated theorem and is reported as
    such.

    Raises :class:`InconsistentProfileError` when the data cannot come from
    any ring satisfying the hypotheses: some ``h'_j < 0``, ``r - 1 > e(C)``,
    ``r`` above the domain type bound, a degree histogram inconsistent with
    ``r``, or two applicable rules disagreeing.
    """
    if not profile.satisfies_embedding:
        raise NotApplicableError(
            "classification needs a degree-0 embedding into the canonical module")
    c = profile.h.coeffs
    s = len(c) - 1
    diffs = cumulative_diffs(c)
    e = e_C(c)
    r = profile.cm_type
    mu = None if r is None else mu_C(r)
    warnings = []

    if r is not None:
        if mu > e:
            raise InconsistentProfileError(
                f"mu(C) = r - 1 = {mu} exceeds e(C) = {e}")
        if profile.is_domain and s >= 2 and r > type_upper_bound(c):
            raise InconsistentProfileError(
                f"type r = {r} exceeds the domain bound {type_upper_bound(c)}")
    if profile.generator_degrees is not None:
        deg = profile.generator_degrees
        if deg and deg[0] != c[-1]:
            raise InconsistentProfileError(
                f"{deg[0]} generators in the lowest degree, expected h_s = {c[-1]}")
        if r is not None and sum(deg) != r:
            raise InconsistentProfileError(
                f"degree histogram sums to {sum(deg)}, type is {r}")
        if any(deg[j] > diffs[j] for j in range(1, min(len(deg), s))):
            raise InconsistentProfileError(
                "generator count exceeds h'_j in some degree")

    fired = applicable_rules(profile)
    for name, v in fired[1:]:
        if not _compatible(fired[0][1], v):
            raise InconsistentProfileError(
                f"rule {fired[0][0]} gives {fired[0][1]}, rule {name} gives {v}")

    if fired:
        verdict = fired[0][1]
    else:
        verdict = Verdict.UNDECIDED
    if verdict is GOR and e != 0:
        raise InconsistentProfileError("Gorenstein verdict with e(C) != 0")

    names = [name for name, _ in fired]
    if "bound-gap" in names:
        warnings.append("bound-gap is derived from the proof of the socle-3 case, "
                        "not a stated theorem")
    if profile.is_domain and s >= 2 and verdict is AG and c[-1] != 1:
        warnings.append(f"almost Gorenstein domain with h_s = {c[-1]} != 1 "
                        "contradicts the h_s = 1 theorem")
    return AGReport(verdict, e, mu, diffs, names, warnings)
