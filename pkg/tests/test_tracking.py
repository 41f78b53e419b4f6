import pytest

from polysew import (
    UniversalCatalog,
    cyclic_polytope,
    find_towers,
    is_universal_face,
    sew,
    sew_with_tracking,
    survives,
    universal_catalog,
    universal_faces,
    vset,
)
from polysew.errors import CatalogOrderViolation

from oracles import naive_universal


def _catalog_sets(cat):
    return {k: set(v) for k, v in cat.faces.items()}


class TestCatalog:
    def test_brute_force_catalog(self, c74):
        cat = universal_catalog(c74)
        assert cat.dims() == [1, 3]
        assert list(cat[3]) == list(c74.facets)
        assert cat.sizes() == {1: 7, 3: 14}
        for U in cat[1]:
            assert naive_universal(c74, U)


class TestSurvives:
    def _setup(self, P):
        T = find_towers(P, limit=1)[0]
        plus = sew(P, T)
        plus_faces = {k: set(v) for k, v in universal_catalog(plus).faces.items()}
        return T, plus, plus_faces

    def test_edges_away_from_phi1(self, c74):
        T, plus, plus_faces = self._setup(c74)
        x1 = T.x(1)
        checked = 0
        for U in universal_faces(c74, 1):
            if U & T.phi(1):
                continue
            expect = U.add(plus.n - 1, x1) in set(plus.facets)
            assert survives(plus_faces, T, U, c74.n) == expect
            assert expect == (U in plus_faces[1])
            checked += 1
        assert checked > 0

    def test_phi1_never_survives(self, c74):
        T, _, plus_faces = self._setup(c74)
        assert survives(plus_faces, T, T.phi(1), c74.n) is False

    def test_c96_level_two(self, c96):
        T, plus, plus_faces = self._setup(c96)
        hits = 0
        for U in universal_faces(c96, 3):
            if T.phi(2).issubset(U):
                expect = U.add(c96.n, T.x(3)) in set(plus.facets)
                assert survives(plus_faces, T, U, c96.n) == expect == (U in plus_faces[3])
                hits += 1
        assert hits == 1  # Phi_2 itself is the only 3-face containing Phi_2

    def test_agrees_with_brute_force_everywhere(self, c74_towers, c96_towers):
        for T in c74_towers[::3] + c96_towers[:3]:
            P = T.polytope
            plus = sew(P, T)
            plus_faces = {k: set(v) for k, v in universal_catalog(plus).faces.items()}
            for k in range(1, P.dim - 1, 2):
                for U in universal_faces(P, k):
                    assert survives(plus_faces, T, U, P.n) == (U in plus_faces[k])

    def test_order_violation(self, c74):
        T = find_towers(c74, limit=1)[0]
        with pytest.raises(CatalogOrderViolation):
            survives({1: set()}, T, vset(2, 3), c74.n)


class TestSewWithTracking:
    @pytest.mark.parametrize("n,d", [(7, 4), (8, 4), (9, 6), (10, 6)])
    def test_matches_brute_force(self, n, d):
        P = cyclic_polytope(n, d)
        cat = universal_catalog(P)
        towers = find_towers(P)
        for T in towers[:: max(1, len(towers) // 10)]:
            plus, plus_cat = sew_with_tracking(P, T, cat)
            assert plus.facets == sew(P, T).facets
            assert plus_cat == universal_catalog(plus)

    def test_all_c74_towers(self, c74, c74_towers):
        cat = universal_catalog(c74)
        for T in c74_towers:
            plus, plus_cat = sew_with_tracking(c74, T, cat)
            assert plus_cat == universal_catalog(plus)
            x1, y1 = T.pairs[0]
            assert vset(x1, c74.n) in plus_cat[1]
            assert vset(y1, c74.n) in plus_cat[1]

    def test_new_universal_faces_meet_phi1(self, c96, c96_towers):
        cat = universal_catalog(c96)
        for T in c96_towers:
            plus, plus_cat = sew_with_tracking(c96, T, cat)
            for k in plus_cat.dims():
                for U in plus_cat[k]:
                    assert plus.has_face(U.bits)
                    assert is_universal_face(plus, U)
                    if c96.n in U:
                        assert U & T.phi(1)

    def test_chained(self):
        P = cyclic_polytope(7, 4)
        cat = universal_catalog(P)
        for k in range(1, 4):
            T = find_towers(P, limit=1)[0]
            P, cat = sew_with_tracking(P, T, cat, f"s{k}")
        assert cat == universal_catalog(P)

    def test_catalog_dimension_mismatch(self, c74):
        T = find_towers(c74, limit=1)[0]
        with pytest.raises(ValueError):
            sew_with_tracking(c74, T, UniversalCatalog(6, {1: (), 3: (), 5: ()}))
