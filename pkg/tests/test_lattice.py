import pytest
from hypothesis import given
from hypothesis import strategies as st

import romp
from romp.lattice import Pattern, PatternType, StaircasePath
from romp.moments import LatticePoint


points_st = st.tuples(st.integers(0, 5), st.integers(0, 5))
point_sets = st.lists(points_st, min_size=1, max_size=6)


class TestFoundation:
    def test_drops_dominated_points(self):
        pat = romp.foundation([(0, 2), (1, 1), (3, 0), (2, 2), (4, 1)])
        assert pat.foundation == (LatticePoint(0, 2), LatticePoint(1, 1), LatticePoint(3, 0))

    def test_single_point(self):
        assert romp.foundation([(1, 1)]).foundation == (LatticePoint(1, 1),)

    def test_origin_generates_whole_lattice(self):
        assert romp.foundation([(0, 0)]).foundation == (LatticePoint(0, 0),)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            romp.foundation([])

    @given(point_sets)
    def test_idempotent_and_canonical(self, points):
        pat = romp.foundation(points)
        assert romp.foundation(pat.foundation) == pat
        # adding dominated points never changes the foundation
        extra = [(p[0] + 1, p[1] + 2) for p in points]
        assert romp.foundation(list(points) + extra) == pat

    @given(point_sets)
    def test_staircase_order(self, points):
        fnd = romp.foundation(points).foundation
        assert all(a.k1 < b.k1 and a.k2 > b.k2 for a, b in zip(fnd, fnd[1:]))


class TestClosureMembership:
    BASE = romp.foundation([(0, 2), (1, 1), (3, 0)])

    def test_dominating_point(self):
        assert romp.closure_membership(self.BASE, (2, 1))

    def test_gap_point(self):
        assert not romp.closure_membership(self.BASE, (2, 0))

    def test_foundation_points_belong(self):
        assert romp.closure_membership(self.BASE, (0, 2))

    @given(point_sets, points_st)
    def test_agrees_with_brute_force(self, points, k):
        pat = romp.foundation(points)
        brute = any(p[0] <= k[0] and p[1] <= k[1] for p in points)
        assert romp.closure_membership(pat, k) == brute


class TestCorners:
    def test_meet(self):
        assert romp.meet_corner((0, 2), (1, 1)) == LatticePoint(1, 2)

    def test_meet_idempotent(self):
        assert romp.meet_corner((1, 1), (1, 1)) == LatticePoint(1, 1)

    def test_meet_of_axis_points(self):
        # the intersection of the (0,el) and (k,0) subspaces sits at (k,el)
        assert romp.meet_corner((0, 3), (2, 0)) == LatticePoint(2, 3)

    def test_join(self):
        assert romp.join_origin((0, 2), (1, 1)) == LatticePoint(0, 1)
        assert romp.join_origin((1, 3), (4, 1)) == LatticePoint(1, 1)

    def test_join_idempotent(self):
        assert romp.join_origin((2, 2), (2, 2)) == LatticePoint(2, 2)

    def test_join_order_violation(self):
        with pytest.raises(ValueError):
            romp.join_origin((3, 0), (0, 2))


class TestStaircase:
    def test_three_point_foundation(self):
        path = romp.staircase(romp.foundation([(0, 2), (1, 1), (3, 0)]))
        # corners computed by the brute meet rule between neighbours
        assert path.points == (
            LatticePoint(0, 2),
            LatticePoint(1, 2),
            LatticePoint(1, 1),
            LatticePoint(3, 1),
            LatticePoint(3, 0),
        )

    def test_single_point(self):
        assert romp.staircase(romp.foundation([(1, 1)])).points == (LatticePoint(1, 1),)

    def test_two_axis_points(self):
        path = romp.staircase(romp.foundation([(0, 1), (1, 0)]))
        assert path.points == (LatticePoint(0, 1), LatticePoint(1, 1), LatticePoint(1, 0))

    def test_monotonicity_validated(self):
        with pytest.raises(ValueError):
            StaircasePath([(0, 0), (1, 1)])

    @given(point_sets)
    def test_contains_foundation_and_recovers_full_set(self, points):
        pat = romp.foundation(points)
        path = romp.staircase(pat)
        assert path.foundation_points == pat.foundation
        # nonincreasing when read left to right
        for a, b in zip(path.points, path.points[1:]):
            assert a.k1 <= b.k1 and a.k2 >= b.k2
        # closure generated from staircase points equals the pattern's
        for k1 in range(7):
            for k2 in range(7):
                from_path = any(p.k1 <= k1 and p.k2 <= k2 for p in path.points)
                assert from_path == romp.closure_membership(pat, (k1, k2))


class TestClassify:
    @pytest.mark.parametrize(
        "points,expected",
        [
            ([(0, 2), (1, 1)], PatternType.I),
            ([(2, 1), (3, 0)], PatternType.II),
            ([(0, 2), (3, 0)], PatternType.III),
            ([(1, 1)], PatternType.IV),
            ([(0, 0)], PatternType.III),
        ],
    )
    def test_examples(self, points, expected):
        assert romp.classify_type(romp.foundation(points)) is expected

    @given(point_sets)
    def test_types_partition(self, points):
        pat = romp.foundation(points)
        ptype = romp.classify_type(pat)
        touches_vertical = any(p.k1 == 0 for p in pat.foundation)
        touches_horizontal = any(p.k2 == 0 for p in pat.foundation)
        expected = {
            (True, True): PatternType.III,
            (True, False): PatternType.I,
            (False, True): PatternType.II,
            (False, False): PatternType.IV,
        }[(touches_vertical, touches_horizontal)]
        assert ptype is expected


class TestPatternEquality:
    def test_generating_sets_with_same_closure_are_equal(self):
        a = romp.foundation([(0, 1), (1, 0)])
        b = romp.foundation([(0, 1), (1, 0), (1, 1), (5, 5)])
        assert a == b and hash(a) == hash(b)

    def test_type_annotations_of_pattern(self):
        assert isinstance(Pattern([(1, 1)]).foundation[0], LatticePoint)
