"""Exact counting: DP vs hook-length and enumeration oracles, bounds, roots."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gridext import (
    DomainError,
    DownSet,
    GridShape,
    ResourceCapError,
    backtracking_count,
    completion_counts,
    count_extensions,
    count_root_window,
    enumerate_index_orders,
    factorial_product_lower_bound,
    hook_length_count,
    normalized_count_root,
    width_power_upper_bound,
)


class TestDownSet:
    def test_empty_and_full(self, square3):
        e = DownSet.empty(square3)
        f = DownSet.full(square3)
        assert len(e) == 0 and len(f) == 9
        assert e.pit_indices() == (0,)
        assert f.pit_indices() == ()

    def test_membership_and_add(self, diamond):
        d = DownSet.empty(diamond).add(diamond.point_at(0))
        assert 0 in d and 1 not in d
        assert diamond.point_at(0) in d
        d2 = d.add(diamond.point_at(1))
        assert sorted(p.index for p in d2.points()) == [0, 1]

    def test_pits_of_bottom_only(self, diamond):
        d = DownSet.empty(diamond).add(diamond.point_at(0))
        assert d.pit_indices() == (1, 2)
        assert [p.index for p in d.pits()] == [1, 2]

    def test_rejects_non_down_closed(self, diamond):
        with pytest.raises(DomainError):
            DownSet(diamond, 0b1000)  # top without its lower covers

    def test_add_non_pit_rejected(self, diamond):
        with pytest.raises(DomainError):
            DownSet.empty(diamond).add(diamond.point_at(3))

    def test_from_points(self, square3):
        pts = [square3.point((1, 1)), square3.point((1, 2))]
        d = DownSet.from_points(square3, pts)
        assert len(d) == 2 and 1 in d


class TestCounts:
    def test_diamond(self):
        assert count_extensions(GridShape((2, 2))) == 2

    def test_3x3_vs_hook(self, square3):
        assert count_extensions(square3) == 42
        assert hook_length_count(square3) == 42

    def test_2x3_vs_hook(self):
        s = GridShape((2, 3))
        assert count_extensions(s) == 5
        assert hook_length_count(s) == 5

    def test_cube_vs_enumeration(self, cube2):
        n = count_extensions(cube2)
        assert n == 48
        assert len(list(enumerate_index_orders(cube2))) == n

    def test_4d_cube_vs_backtracking(self):
        s = GridShape.equilateral(2, 4)
        assert count_extensions(s) == backtracking_count(s)

    def test_chain(self):
        assert count_extensions(GridShape((7,))) == 1
        assert count_extensions(GridShape((1, 5))) == 1

    def test_singleton(self):
        assert count_extensions(GridShape((1,))) == 1

    def test_hook_sweep(self):
        for a in range(1, 6):
            for b in range(a, 7):
                s = GridShape((a, b))
                assert count_extensions(s) == hook_length_count(s)

    def test_hook_requires_two_chains(self, cube2):
        with pytest.raises(DomainError):
            hook_length_count(cube2)

    def test_boolean_lattice_5(self):
        # regression pin; n<=4 members of this family are oracle-checked above
        assert count_extensions(GridShape.equilateral(2, 5)) == 14807804035657359360

    def test_completion_identity(self, square3):
        g = completion_counts(square3)
        for bits, val in g.items():
            d = DownSet(square3, bits)
            pits = d.pit_indices()
            if pits:
                assert val == sum(g[bits | (1 << v)] for v in pits)
            else:
                assert val == 1

    def test_state_cap(self):
        with pytest.raises(ResourceCapError) as exc:
            count_extensions(GridShape.equilateral(3, 3), cap=10)
        assert exc.value.cap == 10
        assert "10" in str(exc.value)


class TestBounds:
    def test_examples(self, square3):
        assert factorial_product_lower_bound(square3) == 24
        assert width_power_upper_bound(square3) == 3**9
        s = GridShape((2, 3))
        assert factorial_product_lower_bound(s) == 4  # rank sizes 1,2,2,1
        s16 = GridShape.equilateral(2, 4)
        assert factorial_product_lower_bound(s16) == 1 * 24 * 720 * 24 * 1
        # (size / longest chain)^size = (16/2)^16
        assert width_power_upper_bound(s16) == 8**16
        assert width_power_upper_bound(GridShape((2, 3))) == 64

    def test_diamond_lower_is_tight(self, diamond):
        assert factorial_product_lower_bound(diamond) == count_extensions(diamond) == 2

    @pytest.mark.parametrize(
        "lengths",
        [(2, 2), (3, 3), (4, 4), (2, 2, 2), (2, 3), (2, 5), (3, 4), (2, 2, 3), (2, 6)],
    )
    def test_sandwich(self, lengths):
        s = GridShape(lengths)
        n = count_extensions(s)
        assert factorial_product_lower_bound(s) <= n <= width_power_upper_bound(s)

    @given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
    @settings(deadline=None)
    def test_sandwich_property(self, lengths):
        s = GridShape(tuple(lengths))
        n = count_extensions(s)
        assert factorial_product_lower_bound(s) <= n <= width_power_upper_bound(s)

    def test_upper_bound_is_ceiling(self):
        s = GridShape((3, 3))
        exact = Fraction(9, 3) ** 9
        assert width_power_upper_bound(s) == int(exact)  # integer case, no rounding


class TestRoots:
    def test_root_in_window(self):
        for m, n in [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3)]:
            s = GridShape.equilateral(m, n)
            v = normalized_count_root(m, n, count_extensions(s))
            lo, hi = count_root_window(n)
            assert lo - 1e-9 <= v <= hi + 1e-9

    def test_root_value_3x3(self):
        v = normalized_count_root(3, 2, 42)
        assert v == pytest.approx(math.exp(math.log(42) / 9) / 3, rel=1e-12)

    def test_window_values(self):
        lo, hi = count_root_window(2)
        assert lo == pytest.approx(1 / (2 * math.e), rel=1e-12)
        assert hi == pytest.approx(math.e / 2, rel=1e-12)
        assert lo < hi

    def test_root_domain_errors(self):
        with pytest.raises(DomainError):
            normalized_count_root(1, 2, 1)
        with pytest.raises(DomainError):
            normalized_count_root(2, 1, 1)
        with pytest.raises(DomainError):
            normalized_count_root(2, 2, 0)
        with pytest.raises(DomainError):
            count_root_window(1)
