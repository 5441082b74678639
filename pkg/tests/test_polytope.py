import itertools

import pytest

from aghkit.ehrhart import counts_from_hstar
from aghkit.errors import DimensionError, InvalidInputError, ParseError
from aghkit.poset import Poset, make_Pm
from aghkit.polytope import (LatticePolytope, count_points, format_polytope,
                             lattice_points, make_cross_plus, order_polytope,
                             parse_polytope, unit_cube)

from conftest import EXAMPLE_POSET, box_scan, corpus_polytopes, random_natural_poset


def test_cross_plus_e1():
    P = make_cross_plus(1)
    assert P.dimension == 3
    assert len(P.vertices) == 7
    assert (1, 1, 2) in P.vertices


def test_cross_plus_e2():
    P = make_cross_plus(2)
    assert P.dimension == 5
    assert len(P.vertices) == 11
    assert (1, 1, 1, 1, 2) in P.vertices


@pytest.mark.parametrize("bad", [0, -1])
def test_cross_plus_rejects(bad):
    with pytest.raises(InvalidInputError):
        make_cross_plus(bad)


def test_order_polytope_antichain_is_square():
    P = order_polytope(Poset.antichain(2))
    assert sorted(P.vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_order_polytope_chain():
    P = order_polytope(Poset.chain(2))
    assert sorted(P.vertices) == [(0, 0), (1, 0), (1, 1)]
    # a1 >= a2 orientation
    assert P.contains((1, 0)) and not P.contains((0, 1))


def _brute_down_sets(poset):
    n = poset.n
    count = 0
    for bits in itertools.product((0, 1), repeat=n):
        if all(bits[i] for j in range(n) if bits[j] for i in poset.below[j]):
            count += 1
    return count


def test_order_polytope_example_poset():
    P = order_polytope(EXAMPLE_POSET)
    assert P.dimension == 4
    assert len(P.vertices) == _brute_down_sets(EXAMPLE_POSET) == 8


def test_order_polytope_vertex_count_random(rng):
    for _ in range(25):
        poset = random_natural_poset(rng, rng.randint(1, 8))
        P = order_polytope(poset)
        assert len(P.vertices) == _brute_down_sets(poset)
        # every vertex is a genuine vertex of the hull
        assert set(P.vertices) == {v for v in P.vertices if sum(h.is_tight(v) for h in P.hrep) >= P.dimension}


def test_order_polytope_hrep_matches_hull():
    for poset in (EXAMPLE_POSET, make_Pm(3), Poset.chain(3)):
        P = order_polytope(poset)
        hull = LatticePolytope(P.vertices, P.dimension)
        for n in range(3):
            assert count_points(P, n) == count_points(hull, n)


class TestCounting:
    def test_unit_square(self):
        assert count_points(unit_cube(2), 2) == 9

    def test_P1_small(self):
        P = make_cross_plus(1)
        assert count_points(P, 0) == 1
        assert count_points(P, 1) == 8 == len(box_scan(P, 1))
        assert count_points(P, 1, interior_only=True) == 1 == len(box_scan(P, 1, interior=True))
        assert list(lattice_points(P, 1, interior_only=True)) == [(0, 0, 0)]

    @pytest.mark.parametrize("name", sorted(corpus_polytopes(4)))
    def test_matches_box_scan(self, name):
        P = corpus_polytopes(4)[name]
        for n in range(5):
            if P.dimension == 4 and n > 3:
                continue
            pts = box_scan(P, n) if n else [(0,) * P.dimension]
            assert count_points(P, n) == len(pts)
            assert list(lattice_points(P, n)) == sorted(pts)
            if n:
                assert count_points(P, n, interior_only=True) == len(box_scan(P, n, interior=True))

    @pytest.mark.parametrize("name", sorted(corpus_polytopes(4)))
    def test_monotone(self, name):
        P = corpus_polytopes(4)[name]
        counts = [count_points(P, n) for n in range(4)]
        assert counts == sorted(counts)
        for n in range(1, 4):
            assert count_points(P, n, interior_only=True) <= counts[n]

    @pytest.mark.parametrize("name", ["P1", "skew_triangle", "reeve", "order_example"])
    def test_dilation_consistency(self, name):
        P = corpus_polytopes(4)[name]
        for n in (1, 2, 3):
            assert count_points(P, n) == count_points(P.scaled(n), 1)

    def test_threads_do_not_change_result(self):
        P = make_cross_plus(1)
        assert count_points(P, 3, threads=2) == count_points(P, 3) == counts_from_hstar((1, 4, 7, 1), 3, 3)
        assert count_points(P, 3, interior_only=True, threads=2) == count_points(P, 3, interior_only=True)

    def test_negative_n(self):
        with pytest.raises(InvalidInputError):
            count_points(unit_cube(2), -1)


def test_degenerate_rejected():
    with pytest.raises(DimensionError):
        LatticePolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0)])


def test_non_integer_rejected():
    with pytest.raises(InvalidInputError):
        LatticePolytope([(0, 0), (0.5, 0), (0, 1)])


class TestFormat:
    def test_round_trip(self):
        P = make_cross_plus(1)
        Q = parse_polytope(format_polytope(P, "comment\nmore"))
        assert Q.vertices == P.vertices and Q.dimension == 3

    def test_comments_and_blank_lines(self):
        Q = parse_polytope("# hi\n\ndim 2\n0 0\n# mid\n1 0\n0 1\n")
        assert len(Q.vertices) == 3

    @pytest.mark.parametrize("text,line", [
        ("dim 2\n0 0\n1\n", 3),
        ("dim x\n", 1),
        ("vertices 2\n", 1),
        ("dim 2\n0 a\n", 2),
    ])
    def test_errors_have_line_numbers(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_polytope(text)
        assert exc.value.line == line

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_polytope("# nothing\n")
