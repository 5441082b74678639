"""h*-vectors, socle degrees, reciprocity and IDP probes from point counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

from .errors import ConsistencyError, InvalidInputError
from .polytope import LatticePolytope, count_points, lattice_points

__all__ = [
    "HVector", "EhrhartProfile", "counts_from_hstar", "ehrhart_profile",
    "h_star", "h_star_from_counts", "idp_check", "interior_counts_from_hstar",
    "reciprocity_check", "socle_degree_geometric",
]


@dataclass(frozen=True)
class HVector:
    """``(h_0, ..., h_s)`` with ``h_0 = 1``, nonnegative entries, ``h_s != 0``.

    ``ambient_degree`` is the exponent context of the denominator when known
    (``d`` for a ring of Krull dimension ``d``; for an h*-vector we store the
    polytope dimension).  It does not take part in comparisons.
    """

    coeffs: tuple[int, ...]
    ambient_degree: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        object.__setattr__(self, "coeffs", c)
        if not c:
            raise InvalidInputError("empty h-vector")
        if c[0] != 1:
            raise InvalidInputError(f"h_0 must be 1, got {c[0]}")
        if any(x < 0 for x in c):
            raise InvalidInputError(f"negative entry in h-vector {c}")
        if c[-1] == 0:
            raise InvalidInputError(f"trailing zero in h-vector {c}")

    @classmethod
    def strip(cls, coeffs: Sequence[int], ambient_degree=None) -> "HVector":
        c = list(coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return cls(tuple(c), ambient_degree)

    @classmethod
    def parse(cls, text: str) -> "HVector":
        try:
            return cls(tuple(int(p) for p in text.replace(" ", "").strip("()").split(",")))
        except ValueError:
            raise InvalidInputError(f"cannot parse h-vector {text!r}") from None

    @property
    def socle_degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.coeffs) + ")"


@dataclass(frozen=True)
class EhrhartProfile:
    dimension: int
    counts: tuple[int, ...]                 # L(0..N)
    hstar: HVector
    geometric_socle: int
    interior_counts: tuple[int, ...] = ()   # L_int(1..M)

    def __post_init__(self):
        if self.counts and self.counts[0] != 1:
            raise ConsistencyError(f"L(0) = {self.counts[0]}, expected 1")


def counts_from_hstar(hstar: Sequence[int], d: int, n: int) -> int:
    """``L(n) = sum_i h*_i C(n + d - i, d)``."""
    return sum(h * comb(n + d - i, d) for i, h in enumerate(hstar) if n + d - i >= 0)


def interior_counts_from_hstar(hstar: Sequence[int], d: int, n: int) -> int:
    """Interior count predicted by reciprocity.

    The interior series is ``sum_i h*_i t^(d+1-i) / (1-t)^(d+1)``, so the
    coefficient of ``t^n`` is ``sum_i h*_i C(n - (d+1-i) + d, d)``.
    """
    total = 0
    for i, h in enumerate(hstar):
        k = n - (d + 1 - i)
        if k >= 0:
            total += h * comb(k + d, d)
    return total


def h_star_from_counts(counts: Sequence[int], d: int) -> tuple[int, ...]:
    """Raw ``h*_i = sum_j (-1)^j C(d+1, j) L(i-j)`` for ``i = 0..d``."""
    if len(counts) < d + 1:
        raise InvalidInputError(f"need L(0..{d}), got {len(counts)} values")
    return tuple(sum((-1) ** j * comb(d + 1, j) * counts[i - j] for j in range(i + 1))
                 for i in range(d + 1))


def _validated(raw, d) -> HVector:
    if raw[0] != 1:
        raise ConsistencyError(f"h*_0 = {raw[0]}; the point counts are wrong")
    if any(x < 0 for x in raw):
        raise ConsistencyError(f"negative h* entry in {raw}; the point counts are wrong")
    return HVector.strip(raw, d)


def h_star(polytope: LatticePolytope, threads: int = 1) -> HVector:
    """h*-vector of a full-dimensional lattice polytope from ``L(0..d)``."""
    d = polytope.dimension
    counts = [count_points(polytope, n, threads=threads) for n in range(d + 1)]
    return _validated(h_star_from_counts(counts, d), d)


def socle_degree_geometric(polytope: LatticePolytope) -> int:
    """``d + 1 - min{m >= 1 : m*int(P) has a lattice point}``."""
    d = polytope.dimension
    for m in range(1, d + 2):
        if next(lattice_points(polytope, m, interior_only=True), None) is not None:
            return d + 1 - m
    raise ConsistencyError(f"no interior lattice point in {d + 1}*P")


def ehrhart_profile(polytope: LatticePolytope, verify: bool = False,
                    threads: int = 1) -> EhrhartProfile:
    """Counts, h*, geometric socle degree; with ``verify`` also the extra
    count ``L(d+1)`` and interior counts up to ``d+1`` used by the checks."""
    d = polytope.dimension
    top = d + 1 if verify else d
    counts = tuple(count_points(polytope, n, threads=threads) for n in range(top + 1))
    hs = _validated(h_star_from_counts(counts, d), d)
    interior = ()
    if verify:
        interior = tuple(count_points(polytope, n, interior_only=True, threads=threads)
                         for n in range(1, d + 2))
    return EhrhartProfile(d, counts, hs, socle_degree_geometric(polytope), interior)


def reproduces_counts(profile: EhrhartProfile) -> bool:
    """Binomial transform round trip over every stored count (including the
    extrapolated ``L(d+1)`` when present)."""
    return all(counts_from_hstar(profile.hstar, profile.dimension, n) == c
               for n, c in enumerate(profile.counts))


def reciprocity_check(profile: EhrhartProfile, hstar: Optional[Sequence[int]] = None) -> bool:
    """Interior counts against the reversed h*-numerator, coefficientwise.

    ``hstar`` overrides the profile's vector (negative controls pass a
    corrupted one).  Needs interior counts up to at least ``d``.
    """
    h = tuple(profile.hstar) if hstar is None else tuple(hstar)
    d = profile.dimension
    if len(profile.interior_counts) < d:
        raise InvalidInputError(f"need interior counts for n = 1..{d}")
    return all(interior_counts_from_hstar(h, d, n) == c
               for n, c in enumerate(profile.interior_counts, 1))


def idp_check(polytope: LatticePolytope, n_max: int = 4) -> dict[int, bool]:
    """For n = 2..n_max: is every lattice point of n*P a sum of n points of P?

    Sum-sets are built up degree by degree, ``S_n = S_{n-1} + S_1``.  A
    ``True`` entry is a finite probe, not a proof of the integer
    decomposition property.
    """
    if n_max < 2:
        raise InvalidInputError("n_max must be at least 2")
    base = list(lattice_points(polytope, 1))
    reach = set(base)
    out = {}
    for n in range(2, n_max + 1):
        reach = {tuple(a + b for a, b in zip(p, q)) for p in reach for q in base}
        target = set(lattice_points(polytope, n))
        out[n] = target <= reach
    return out
