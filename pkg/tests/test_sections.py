"""Page decomposition, duplicate deletion, reduction, and witness builders."""

import json
from itertools import islice

import pytest
from hypothesis import given, settings, strategies as st

from haruspex.polygons import cells_to_polygon, generate_all, validate
from haruspex.sections import (
    PageDecomposition,
    SectionError,
    construct_hook,
    construct_many,
    decompose,
    delete_duplicate,
    reduce_minimal,
    sigma,
    _duplicate_indices,
    _identical,
)


def rectangle(w, h):
    return cells_to_polygon([(x, y) for x in range(w) for y in range(h)])


def per_page_section_counts(d: PageDecomposition):
    per = {}
    for s in d.sections:
        per[s.page] = per.get(s.page, 0) + 1
    return sorted(per.values())


# A three-page polygon with shielded interior bonds: the foot's vertical
# bonds source full-height cuts at abscissas 2 and 4 that sever both
# bridges, while the shield rows' inner bonds at abscissas 1 and 5 match
# no row extreme anywhere, so no cut ray ever reaches them.
THREE_PAGE_CELLS = (
    [(x, 0) for x in range(2, 4)]
    + [(x, 1) for x in range(6)]
    + [(x, 2) for x in range(6)]
    + [(0, 3), (5, 3), (0, 4), (5, 4)]
)


class TestDecompose:
    def test_unit_square(self):
        d = decompose(rectangle(1, 1))
        assert len(d.pages) == 1
        assert len(d.sections) == 1
        assert d.sections[0].k == 1
        assert d.sigma() == {1: 1}

    def test_one_by_three(self):
        d = decompose(rectangle(3, 1))
        assert len(d.pages) == 1
        assert [s.k for s in d.sections] == [1, 1, 1]

    def test_three_page_split(self):
        p = cells_to_polygon(THREE_PAGE_CELLS)
        d = decompose(p)
        assert 2 * p.vhp == 14
        assert len(d.pages) == 3
        assert per_page_section_counts(d) == [2, 2, 2]
        assert d.between_page_vertical_bonds == 10
        assert d.within_page_vertical_bonds == 4

    def test_section_lines_cover_every_row(self):
        p = construct_hook(3)
        d = decompose(p)
        rows = {y for x, y, o in p.bonds if o == "v"}
        assert len(d.section_lines) == 2 * len(rows)
        vbonds = {(x, y) for x, y, o in p.bonds if o == "v"}
        for line in d.section_lines:
            bx, by, bo = line.blocking_bond
            assert bo == "v" and (bx, by) in vbonds and by == line.row

    def test_report_is_json_ready(self):
        d = decompose(cells_to_polygon(THREE_PAGE_CELLS))
        report = json.loads(json.dumps(d.to_report()))
        assert report["sigma"] == {"1": 6}
        assert report["vertical_bonds"] == {
            "between_pages": 10,
            "within_pages": 4,
        }
        assert len(report["sections"]) == 6


class TestSigma:
    def test_unit_square(self):
        assert sigma(rectangle(1, 1)) == {1: 1}

    def test_two_by_two(self):
        assert sigma(rectangle(2, 2)) == {1: 2}

    def test_hook_two(self):
        assert sigma(construct_hook(2))[2] == 1


class TestDeleteDuplicate:
    def test_domino_to_unit_square(self):
        p = rectangle(2, 1)
        q = delete_duplicate(p, 1)
        assert q == rectangle(1, 1)

    def test_one_by_m_stepwise(self):
        p = rectangle(5, 1)
        for _ in range(4):
            p = delete_duplicate(p, 0)
        assert p == rectangle(1, 1)

    def test_two_by_two_either_column(self):
        p = rectangle(2, 2)
        for idx in (0, 1):
            q = delete_duplicate(p, idx)
            assert (q.hhp, q.vhp) == (1, 2)
            assert q == rectangle(1, 2)

    def test_not_a_duplicate(self):
        with pytest.raises(SectionError, match="not a duplicate"):
            delete_duplicate(construct_hook(2), 0)

    def test_bad_index(self):
        with pytest.raises(SectionError, match="no section"):
            delete_duplicate(rectangle(2, 1), 7)

    def test_preserves_vhp_and_decrements_census(self):
        p = construct_many(3, 2)
        d = decompose(p)
        dups = _duplicate_indices(d)
        assert dups
        idx = dups[0]
        k = d.sections[idx].k
        q = delete_duplicate(p, idx, d)
        assert q.vhp == p.vhp
        assert q.hhp == p.hhp - k
        before, after = sigma(p), sigma(q)
        assert after.get(k, 0) == before[k] - 1


class TestReduceMinimal:
    @pytest.mark.parametrize("m", [1, 2, 3, 7])
    def test_one_by_m(self, m):
        assert reduce_minimal(rectangle(m, 1)) == rectangle(1, 1)

    def test_minimal_fixpoint(self):
        for p in (rectangle(1, 1), construct_hook(2), construct_hook(4)):
            assert reduce_minimal(p) == p

    def test_idempotent(self):
        p = construct_many(2, 2)
        r = reduce_minimal(p)
        assert reduce_minimal(r) == r

    def test_wide_rectangle(self):
        assert reduce_minimal(rectangle(6, 3)) == rectangle(1, 3)


def _deletable_indices(d: PageDecomposition):
    by_loc = {(s.page, s.column): s for s in d.sections}
    return [
        i
        for i, s in enumerate(d.sections)
        if _identical(by_loc.get((s.page, s.column - 1)), s)
        or _identical(by_loc.get((s.page, s.column + 1)), s)
    ]


class TestConfluence:
    def test_all_orders_small(self):
        # every deletion order must land on the same minimal polygon
        memo = {}

        def terminals(p):
            if p.bonds in memo:
                return memo[p.bonds]
            d = decompose(p)
            idxs = _deletable_indices(d)
            if not idxs:
                out = frozenset([p.bonds])
            else:
                out = frozenset().union(
                    *(terminals(delete_duplicate(p, i, d)) for i in idxs)
                )
            memo[p.bonds] = out
            return out

        for p in generate_all(6):
            ends = terminals(p)
            assert len(ends) == 1
            (end,) = ends
            assert end == reduce_minimal(p).bonds


class TestConstructHook:
    def test_unit_square_base(self):
        assert construct_hook(1) == rectangle(1, 1)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_counts(self, k):
        p = construct_hook(k)
        assert 2 * p.vhp == 6 * k - 4
        assert sigma(p).get(k, 0) == 1
        assert reduce_minimal(p) == p

    def test_frozen_censuses(self):
        assert sigma(construct_hook(2)) == {1: 3, 2: 1}
        assert sigma(construct_hook(3)) == {1: 3, 3: 1}
        assert sigma(construct_hook(4)) == {1: 5, 4: 1}
        assert sigma(construct_hook(5)) == {1: 5, 5: 1}

    @pytest.mark.parametrize("k", range(2, 7))
    def test_flanking_is_tight(self, k):
        # the hook meets the 3k-2 flanking bound with equality on both sides
        p = construct_hook(k)
        d = decompose(p)
        cols = [s.column for s in d.sections if s.k == k]
        vxs = [x for x, y, o in p.bonds if o == "v"]
        left = sum(1 for a in vxs if a <= min(cols))
        right = sum(1 for a in vxs if a >= max(cols) + 1)
        assert left == 3 * k - 2
        assert right == 3 * k - 2

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            construct_hook(0)


class TestConstructMany:
    def test_zero_copies_is_hook(self):
        for k in range(1, 6):
            assert construct_many(k, 0) == construct_hook(k)

    def test_staircase_counts(self):
        p = construct_many(1, 2)
        assert 2 * p.vhp == 6
        assert sigma(p) == {1: 5}

    def test_pair_insertion_counts(self):
        p = construct_many(2, 1)
        assert 2 * p.vhp == 10
        assert sigma(p)[2] == 3

    @pytest.mark.parametrize("k", range(1, 6))
    @pytest.mark.parametrize("m", range(0, 4))
    def test_grid(self, k, m):
        p = construct_many(k, m)
        assert 2 * p.vhp == 6 * k - 4 + 2 * m
        assert sigma(p).get(k, 0) == 2 * m + 1
        # the builder output is a valid polygon boundary
        assert validate(p.to_bond_pairs()) == p

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            construct_many(0, 1)
        with pytest.raises(ValueError):
            construct_many(1, -1)


@pytest.fixture(scope="module")
def small_polygons():
    return list(generate_all(8))


@pytest.fixture(scope="module")
def reduced_small_polygons(small_polygons):
    return [reduce_minimal(p) for p in small_polygons]


def check_decomposition_invariants(p):
    d = decompose(p)
    two_v = 2 * p.vhp
    all_h = sorted(b for b in p.bonds if b[2] == "h")
    sec_h = sorted(b for s in d.sections for b in s.bonds())
    assert all_h == sec_h
    assert (
        d.between_page_vertical_bonds + d.within_page_vertical_bonds == two_v
    )
    vxs = [x for x, y, o in p.bonds if o == "v"]
    for k in d.sigma():
        assert two_v >= 6 * k - 4
        cols = [s.column for s in d.sections if s.k == k]
        left = sum(1 for a in vxs if a <= min(cols))
        right = sum(1 for a in vxs if a >= max(cols) + 1)
        assert left >= 3 * k - 2
        assert right >= 3 * k - 2
    return d


def check_minimal_bounds(r):
    d = decompose(r)
    two_v = 2 * r.vhp
    assert not _duplicate_indices(d)
    assert len(d.sections) <= two_v - 1 or two_v == 2
    rows = len({y for x, y, o in r.bonds if o == "v"})
    assert len(d.pages) <= 2 * rows - 1
    census = d.sigma()
    k = 1
    while two_v >= 6 * k - 4:
        m = (two_v - (6 * k - 4)) // 2
        assert sum(c for j, c in census.items() if j >= k) <= 2 * m + 1
        k += 1


class TestExhaustiveInvariants:
    def test_decompositions(self, small_polygons):
        for p in small_polygons:
            check_decomposition_invariants(p)

    def test_minimal_polygon_bounds(self, small_polygons, reduced_small_polygons):
        for p, r in zip(small_polygons, reduced_small_polygons):
            assert r.vhp == p.vhp
            check_minimal_bounds(r)

    def test_every_duplicate_deletion(self, small_polygons):
        for p in small_polygons:
            d = decompose(p)
            census = d.sigma()
            for idx in _duplicate_indices(d):
                k = d.sections[idx].k
                q = delete_duplicate(p, idx, d)
                assert q.vhp == p.vhp
                assert q.hhp == p.hhp - k
                assert sigma(q).get(k, 0) == census[k] - 1

    def test_larger_samples(self):
        sample = islice(generate_all(10), 2000, 6000, 17)
        count = 0
        for p in sample:
            check_decomposition_invariants(p)
            check_minimal_bounds(reduce_minimal(p))
            count += 1
        assert count > 100


class TestRectangleProperties:
    @given(st.integers(1, 6), st.integers(1, 6))
    @settings(max_examples=30, deadline=None)
    def test_rectangle_reduces_to_column(self, w, h):
        p = rectangle(w, h)
        d = decompose(p)
        assert len(d.pages) == 1
        assert d.sigma() == {1: w}
        assert reduce_minimal(p) == rectangle(1, h)
