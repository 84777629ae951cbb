"""Polygon validation, measurement, and exhaustive generation."""

import pytest
from hypothesis import given, settings, strategies as st

from haruspex.polygons import (
    Polygon,
    PolygonError,
    RowProfile,
    cells_to_polygon,
    generate_all,
    generate_with_vertical_bonds,
    validate,
)

UNIT_SQUARE = [
    [[0, 0], [1, 0]],
    [[1, 0], [1, 1]],
    [[1, 1], [0, 1]],
    [[0, 1], [0, 0]],
]


class TestValidate:
    def test_unit_square(self):
        p = validate(UNIT_SQUARE)
        assert p.hhp == 1 and p.vhp == 1

    def test_dangling_bond(self):
        with pytest.raises(PolygonError, match="degree"):
            validate(UNIT_SQUARE + [[[1, 1], [2, 1]]])

    def test_disconnected(self):
        far = [[[a + 5, b], [c + 5, d]] for [a, b], [c, d] in UNIT_SQUARE]
        with pytest.raises(PolygonError, match="disconnected"):
            validate(UNIT_SQUARE + far)

    def test_empty(self):
        with pytest.raises(PolygonError, match="empty"):
            validate([])

    def test_duplicate(self):
        with pytest.raises(PolygonError, match="duplicate"):
            validate(UNIT_SQUARE + [UNIT_SQUARE[0]])

    def test_non_unit_bond(self):
        with pytest.raises(PolygonError):
            validate([[[0, 0], [2, 0]]])

    def test_normalization(self):
        shifted = [
            [[a + 3, b - 2], [c + 3, d - 2]] for [a, b], [c, d] in UNIT_SQUARE
        ]
        assert validate(shifted) == validate(UNIT_SQUARE)

    def test_pinched_figure_eight(self):
        # two unit squares sharing only the corner (1,1): degree 4 there
        upper = cells_to_polygon([(0, 0)]).bonds
        lower = [(x + 1, y + 1, o) for x, y, o in upper]
        with pytest.raises(PolygonError, match="degree"):
            validate(list(upper) + lower)


class TestMeasure:
    def test_unit_square(self):
        p = validate(UNIT_SQUARE)
        assert p.measure() == (1, 1, RowProfile((2,)))

    def test_two_by_two(self):
        p = cells_to_polygon([(0, 0), (0, 1), (1, 0), (1, 1)])
        assert p.measure() == (2, 2, RowProfile((2, 2)))

    def test_l_tromino(self):
        p = cells_to_polygon([(0, 0), (1, 0), (0, 1)])
        assert p.measure() == (2, 2, RowProfile((2, 2)))

    def test_profile_top_first(self):
        # single column of three cells plus a foot to the right at bottom
        p = cells_to_polygon([(0, 0), (1, 0), (0, 1), (0, 2)])
        assert p.row_profile() == RowProfile((2, 2, 2))
        q = cells_to_polygon([(0, 0), (1, 0), (2, 0), (0, 1), (2, 1)])
        assert q.row_profile() == RowProfile((4, 2))


class TestRowProfile:
    @pytest.mark.parametrize(
        "k,counts",
        [(1, (2,)), (2, (2, 4, 2)), (3, (2, 4, 2, 4, 2))],
    )
    def test_two_four_two(self, k, counts):
        prof = RowProfile.two_four_two(k)
        assert prof.counts == counts
        assert prof.matches_242()
        assert prof.total() == 6 * k - 4

    @pytest.mark.parametrize("counts", [(2, 2), (4,), (2, 4), (2, 4, 4, 2)])
    def test_non_242(self, counts):
        assert not RowProfile(counts).matches_242()


class TestGenerateAll:
    def test_bound_two(self):
        polys = list(generate_all(2))
        assert len(polys) == 1
        assert polys[0].measure()[:2] == (1, 1)

    def test_bound_three(self):
        polys = list(generate_all(3))
        assert len(polys) == 3
        assert sorted((p.hhp, p.vhp) for p in polys) == [(1, 1), (1, 2), (2, 1)]

    def test_exact_counts(self):
        by_p = {}
        for p in generate_all(7):
            by_p[p.hhp + p.vhp] = by_p.get(p.hhp + p.vhp, 0) + 1
        assert by_p == {2: 1, 3: 2, 4: 7, 5: 28, 6: 124, 7: 588}

    def test_duplicate_free_and_valid(self):
        seen = set()
        for p in generate_all(6):
            assert p.bonds not in seen
            seen.add(p.bonds)
            q = validate(p.to_bond_pairs())
            assert q == p

    def test_profiles_even(self):
        for p in generate_all(6):
            for c in p.row_profile():
                assert c >= 2 and c % 2 == 0

    def test_transpose_symmetry(self):
        # counts grouped by (hhp, vhp) must be symmetric under swapping
        counts = {}
        for p in generate_all(7):
            key = (p.hhp, p.vhp)
            counts[key] = counts.get(key, 0) + 1
        for (m, n), c in counts.items():
            assert counts.get((n, m)) == c


class TestGenerateWithVerticalBonds:
    def test_unit_height_rectangles(self):
        polys = list(generate_with_vertical_bonds(2, 5))
        assert len(polys) == 5
        assert sorted(p.hhp for p in polys) == [1, 2, 3, 4, 5]
        assert all(p.vhp == 1 for p in polys)

    def test_two_v_four(self):
        got = {p.bonds for p in generate_with_vertical_bonds(4, 2)}
        want = {
            p.bonds for p in generate_all(4) if p.vhp == 2 and p.hhp <= 2
        }
        assert got == want
        assert len(got) == 6

    @pytest.mark.parametrize("two_v,max_hhp", [(2, 4), (4, 4), (6, 3)])
    def test_agrees_with_generate_all(self, two_v, max_hhp):
        bound = two_v // 2 + max_hhp
        want = {
            p.bonds
            for p in generate_all(bound)
            if 2 * p.vhp == two_v and p.hhp <= max_hhp
        }
        got = {p.bonds for p in generate_with_vertical_bonds(two_v, max_hhp)}
        assert got == want

    def test_242_filter(self):
        prof = RowProfile.two_four_two(2)
        got = {
            p.bonds
            for p in generate_with_vertical_bonds(8, 4, profile_filter=prof)
        }
        want = {
            p.bonds
            for p in generate_with_vertical_bonds(8, 4)
            if p.row_profile().matches_242()
        }
        assert got == want
        assert got
        for p in generate_with_vertical_bonds(8, 4, profile_filter=prof):
            assert p.row_profile() == prof

    def test_zero_is_empty(self):
        assert list(generate_with_vertical_bonds(0, 5)) == []

    def test_rejects_odd(self):
        with pytest.raises(ValueError):
            list(generate_with_vertical_bonds(3, 5))


class TestSerialization:
    def test_bond_pairs_roundtrip(self):
        for p in generate_all(5):
            assert Polygon.from_bond_pairs(p.to_bond_pairs()) == p

    @given(st.integers(0, 6))
    @settings(max_examples=10, deadline=None)
    def test_translation_invariance(self, shift):
        p = cells_to_polygon([(0, 0), (1, 0), (0, 1)])
        moved = [
            [[a + shift, b + 2 * shift], [c + shift, d + 2 * shift]]
            for [a, b], [c, d] in p.to_bond_pairs()
        ]
        assert validate(moved) == p
