import itertools

import pytest

from aghkit.errors import (EmbeddingViolatedError, InconsistentProfileError,
                           InvalidInputError, NotApplicableError)
from aghkit.gorenstein import (RingProfile, Verdict, applicable_rules, classify,
                               cumulative_diffs, e_C, is_gorenstein_symmetric,
                               mu_C, suff_almost_symmetric, type_upper_bound)

AG, NOT_AG, GOR, UND = (Verdict.ALMOST_GORENSTEIN, Verdict.NOT_ALMOST_GORENSTEIN,
                        Verdict.GORENSTEIN, Verdict.UNDECIDED)


def all_h_vectors(max_s=4, max_entry=6):
    for s in range(0, max_s + 1):
        for tail in itertools.product(range(max_entry + 1), repeat=s):
            if s and tail[-1] == 0:
                continue
            yield (1,) + tail


class TestNumerics:
    def test_diffs_P1(self):
        # (1-1, 8-5, 12-12)
        assert cumulative_diffs((1, 4, 7, 1)) == (0, 3, 0)
        assert e_C((1, 4, 7, 1)) == 3

    def test_symmetric_zero(self):
        assert e_C((1, 3, 3, 1)) == 0
        assert is_gorenstein_symmetric((1, 3, 3, 1))

    def test_violation(self):
        with pytest.raises(EmbeddingViolatedError):
            e_C((1, 3, 1, 1))

    def test_mu(self):
        assert mu_C(3) == 2
        with pytest.raises(InvalidInputError):
            mu_C(0)

    def test_almost_symmetric(self):
        assert suff_almost_symmetric((1, 5, 2, 1))
        assert not suff_almost_symmetric((1, 5, 2, 2))

    def test_type_bound(self):
        assert type_upper_bound((1, 4, 7, 1)) == 4
        with pytest.raises(NotApplicableError):
            type_upper_bound((1, 3))


class TestVerdicts:
    def test_P1_domain(self):
        rep = classify(RingProfile((1, 4, 7, 1), is_domain=True))
        assert rep.verdict is AG
        assert rep.criteria_fired[:2] == ["almost-symmetric", "domain-socle-3"]

    def test_123_domain(self):
        # socle 2 with h_2 = 3 != 1
        rep = classify(RingProfile((1, 2, 3), is_domain=True))
        assert rep.verdict is NOT_AG

    @pytest.mark.parametrize("k", [1, 2, 5, 10])
    def test_socle_one(self, k):
        assert classify(RingProfile((1, k))).verdict is AG

    def test_symmetric_domain(self):
        rep = classify(RingProfile((1, 3, 1), cm_type=1, is_domain=True))
        assert rep.verdict is GOR and rep.e_C == 0

    def test_undecided(self):
        assert classify(RingProfile((1, 3, 4, 5, 2))).verdict is UND

    @pytest.mark.parametrize("m,h", [
        (3, (1, 8, 9, 1)),
        (4, (1, 15, 36, 16, 1)),
        (5, (1, 24, 100, 100, 25, 1)),
        (6, (1, 35, 225, 400, 225, 36, 1)),
    ])
    def test_Pm_type_criterion(self, m, h):
        rep = classify(RingProfile(h, cm_type=m - 1, is_domain=True))
        assert rep.verdict is AG
        assert rep.e_C == m - 2 == rep.mu_C
        assert "type-criterion" in rep.criteria_fired

    def test_json_keys(self):
        out = classify(RingProfile((1, 4, 7, 1), is_domain=True)).to_json()
        assert set(out) == {"verdict", "e_C", "mu_C", "diffs", "rules", "warnings"}
        assert out["verdict"] == "AlmostGorenstein"


class TestConsistency:
    def test_type_below_top(self):
        with pytest.raises(InconsistentProfileError):
            RingProfile((1, 3, 2), cm_type=1)

    def test_mu_exceeds_e(self):
        with pytest.raises(InconsistentProfileError):
            classify(RingProfile((1, 3, 1), cm_type=2))

    def test_domain_bound(self):
        # bound for (1,5,8,2) is 10 - 5 = 5 while e_C = 1 + 4 + 1 allows r = 6
        assert type_upper_bound((1, 5, 8, 2)) == 5 and e_C((1, 5, 8, 2)) == 6
        classify(RingProfile((1, 5, 8, 2), cm_type=6))
        with pytest.raises(InconsistentProfileError):
            classify(RingProfile((1, 5, 8, 2), cm_type=6, is_domain=True))

    def test_no_embedding(self):
        with pytest.raises(NotApplicableError):
            classify(RingProfile((1, 3), satisfies_embedding=False))

    def test_histogram_sum(self):
        with pytest.raises(InconsistentProfileError):
            classify(RingProfile((1, 8, 9, 1), cm_type=2, generator_degrees=(1, 0, 0)))


def test_property_sweep():
    """Every h-vector with s <= 4 and entries <= 6, with every r up to e_C + 1."""
    checked = 0
    for h in all_h_vectors():
        diffs = cumulative_diffs(h)
        if any(x < 0 for x in diffs):
            with pytest.raises(EmbeddingViolatedError):
                classify(RingProfile(h))
            continue
        e = e_C(h)
        assert (e == 0) == is_gorenstein_symmetric(h)
        s = len(h) - 1
        for dom in (False, True):
            for r in [None] + list(range(h[-1], e + 2)):
                try:
                    rep = classify(RingProfile(h, cm_type=r, is_domain=dom))
                except InconsistentProfileError:
                    continue
                checked += 1
                verdicts = {v for _, v in applicable_rules(RingProfile(h, cm_type=r, is_domain=dom))}
                assert not ({AG, GOR} & verdicts and NOT_AG in verdicts)
                warned = any("h_s" in w for w in rep.warnings)
                assert warned == (dom and s >= 2 and rep.verdict is AG and h[-1] > 1)
                if r is not None and r - 1 > e:
                    pytest.fail("profile with mu > e accepted")
    assert checked > 1000
