from itertools import combinations
from math import comb

import pytest

from polysew import VertexSet, cyclic_polytope, gale_even, is_neighbourly, neighbourly_facet_count, vset
from polysew.errors import BadParameters

from oracles import moment_curve_facets


def literal_gale(S, n):
    # the condition exactly as stated: every pair of non-members is separated
    # by an even number of members
    out = [v for v in range(n) if v not in S]
    return all(sum(1 for s in S if u < s < v) % 2 == 0 for u, v in combinations(out, 2))


@pytest.mark.parametrize("S,n,expected", [((2, 3), 5, True), ((0, 1, 2, 3), 6, True), ((0, 2), 5, False)])
def test_gale_examples(S, n, expected):
    assert gale_even(vset(*S), n) is expected


@pytest.mark.parametrize("n,d", [(7, 4), (8, 3), (9, 6), (10, 5)])
def test_gale_matches_literal_condition(n, d):
    for c in combinations(range(n), d):
        assert gale_even(VertexSet(c), n) == literal_gale(set(c), n)


def test_pentagon():
    P = cyclic_polytope(5, 2)
    assert {F.members for F in P.facets} == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}


def test_c64_listing():
    listed = [{2, 3, 4, 5}, {0, 3, 4, 5}, {0, 1, 4, 5}, {0, 1, 2, 5}, {0, 1, 2, 3},
              {1, 2, 4, 5}, {0, 2, 3, 5}, {0, 1, 3, 4}, {1, 2, 3, 4}]
    P = cyclic_polytope(6, 4)
    assert {frozenset(F) for F in P.facets} == {frozenset(s) for s in listed}


def test_c74_count():
    assert len(cyclic_polytope(7, 4).facets) == 14 == comb(5, 2) + comb(4, 1)


@pytest.mark.parametrize("m", [2, 3])
def test_facet_formula_and_neighbourliness(m):
    d = 2 * m
    for n in range(d + 1, 21 if m == 2 else 15):
        P = cyclic_polytope(n, d)
        assert len(P.facets) == neighbourly_facet_count(n, d) == comb(n - m, m) + comb(n - m - 1, m - 1)
        assert is_neighbourly(P)


@pytest.mark.parametrize("n,d", [(6, 4), (8, 4), (10, 4), (8, 6), (9, 6), (7, 3), (8, 5)])
def test_matches_moment_curve_hull(n, d):
    hull = moment_curve_facets(n, d)
    assert {F.members for F in cyclic_polytope(n, d).facets} == hull


def test_contiguous_blocks_are_facets():
    P = cyclic_polytope(11, 6)
    for i in range(11 - 6 + 1):
        assert VertexSet(range(i, i + 6)) in P.facet_index


@pytest.mark.parametrize("n,d", [(3, 4), (4, 4), (5, 1), (2, 1)])
def test_bad_parameters(n, d):
    with pytest.raises(BadParameters):
        cyclic_polytope(n, d)
