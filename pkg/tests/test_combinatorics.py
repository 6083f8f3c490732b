from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from generators import enumerate_walks
from sticky.combinatorics import (
    DomainError,
    GuardError,
    WalkSpec,
    YoungShape,
    asymptotic_trend_report,
    catalan,
    cluster_count_distribution_exact,
    count_paths,
    count_paths_bruteforce,
    endpoints,
    one_cluster_probability,
    one_cluster_probability_bruteforce,
    positive_bridge_probability,
    ssrw_strict_above_count,
    young_shape_for,
)

F = Fraction


def walk_count_by_enumeration(n, c):
    hits = 0
    for steps in enumerate_walks(n):
        s, ok = 0, True
        for j, step in enumerate(steps[:-1], 1):
            s += step
            if n * s <= c * j:
                ok = False
                break
        if ok and sum(steps) == c:
            hits += 1
    return hits


class TestShapes:
    def test_validation(self):
        with pytest.raises(DomainError):
            YoungShape((1, 2))
        with pytest.raises(DomainError):
            YoungShape((1, -1))
        with pytest.raises(DomainError):
            YoungShape(())
        assert YoungShape((3, 3, 0)).rows == (3, 3, 0)

    @pytest.mark.parametrize(
        "n, c, rows",
        [(6, 0, (1, 0)), (8, 0, (2, 1, 0)), (6, -2, (1,)), (6, 2, (1, 0, 0)), (9, -1, (3, 2, 1))],
    )
    def test_shape_for(self, n, c, rows):
        # frozen from the ceiling formula; each is cross-checked against walk enumeration below
        assert young_shape_for(n, c).rows == rows
        assert count_paths(young_shape_for(n, c)) == walk_count_by_enumeration(n, c)

    @pytest.mark.parametrize("n, c", [(6, 6), (6, 4), (6, -4), (6, 1), (3, 1), (7, 9)])
    def test_shape_for_rejects(self, n, c):
        with pytest.raises(DomainError):
            young_shape_for(n, c)


class TestPaths:
    @pytest.mark.parametrize(
        "rows, expected", [((4, 2, 1, 0, 0), 19), ((0,), 1), ((0, 0, 0), 1), ((1,), 2), ((2, 2), 6), ((3,), 4)]
    )
    def test_examples(self, rows, expected):
        shape = YoungShape(rows)
        assert count_paths(shape) == expected
        assert count_paths_bruteforce(shape) == expected

    def test_rectangles_are_binomials(self):
        for h in range(1, 7):
            for w in range(0, 7):
                assert count_paths(YoungShape((w,) * h)) == comb(w + h, h)

    @settings(max_examples=400, deadline=None)
    @given(st.lists(st.integers(0, 8), min_size=1, max_size=8))
    def test_determinant_matches_dp(self, rows):
        shape = YoungShape(tuple(sorted(rows, reverse=True)))
        assert count_paths(shape) == count_paths_bruteforce(shape)

    def test_bruteforce_guard(self):
        with pytest.raises(GuardError):
            count_paths_bruteforce(YoungShape((13,)))
        with pytest.raises(GuardError):
            count_paths_bruteforce(YoungShape((1,) * 13))

    def test_large_shape_exact(self):
        # 30x30 square: binomial(60, 30) exceeds 64-bit range
        assert count_paths(YoungShape((30,) * 30)) == comb(60, 30)


class TestWalks:
    @pytest.mark.parametrize("n, c, expected", [(2, 0, 1), (4, 2, 1), (3, 3, 0), (5, 1, 2), (1, 1, 1), (1, -1, 1)])
    def test_examples(self, n, c, expected):
        assert ssrw_strict_above_count(WalkSpec(n, c)) == expected

    def test_matches_enumeration(self):
        for n in range(1, 13):
            for c in endpoints(n):
                assert ssrw_strict_above_count(WalkSpec(n, c)) == walk_count_by_enumeration(n, c)

    def test_spec_validation(self):
        with pytest.raises(DomainError):
            WalkSpec(4, 1)
        with pytest.raises(DomainError):
            WalkSpec(4, 6)
        with pytest.raises(DomainError):
            WalkSpec(0, 0)

    def test_reflection_symmetry(self):
        for n in range(1, 31):
            for c in endpoints(n):
                assert ssrw_strict_above_count(WalkSpec(n, c)) == ssrw_strict_above_count(WalkSpec(n, -c))

    def test_boundary_endpoints(self):
        for n in range(3, 25):
            assert ssrw_strict_above_count(WalkSpec(n, n)) == 0
            assert ssrw_strict_above_count(WalkSpec(n, -n)) == 0
            assert ssrw_strict_above_count(WalkSpec(n, n - 2)) == 1
            assert ssrw_strict_above_count(WalkSpec(n, 2 - n)) == 1

    def test_interior_determinant_bridge(self):
        for n in range(4, 27):
            for c in range(4 - n, n - 3, 2):
                assert ssrw_strict_above_count(WalkSpec(n, c)) == count_paths(young_shape_for(n, c))


class TestOneCluster:
    @pytest.mark.parametrize("n, p", [(2, F(1, 4)), (3, F(1, 4)), (4, F(3, 16)), (5, F(3, 16))])
    def test_small(self, n, p):
        assert one_cluster_probability(n) == p
        assert one_cluster_probability_bruteforce(n) == p

    def test_triple_equivalence(self):
        for n in range(2, 15):
            walks = F(sum(ssrw_strict_above_count(WalkSpec(n, c)) for c in endpoints(n)), 2**n)
            assert one_cluster_probability(n) == walks == one_cluster_probability_bruteforce(n)

    def test_closed_form_matches_walk_sum_large(self):
        for n in range(15, 41):
            walks = F(sum(ssrw_strict_above_count(WalkSpec(n, c)) for c in endpoints(n)), 2**n)
            assert one_cluster_probability(n) == walks

    def test_domain(self):
        with pytest.raises(DomainError):
            one_cluster_probability(1)
        with pytest.raises(GuardError):
            one_cluster_probability_bruteforce(23)


class TestDistribution:
    def test_small(self):
        assert cluster_count_distribution_exact(1) == {1: 1}
        assert cluster_count_distribution_exact(2) == {1: F(1, 4), 2: F(3, 4)}

    def test_identities(self):
        for n in range(2, 13):
            dist = cluster_count_distribution_exact(n)
            assert sum(dist.values()) == 1
            assert dist[1] == one_cluster_probability(n)
            # n clusters means no collision at all: velocities weakly increasing,
            # i.e. some -1s followed by some +1s
            assert dist[n] == F(n + 1, 2**n)

    def test_workers_agree(self):
        assert cluster_count_distribution_exact(9, workers=3) == cluster_count_distribution_exact(9)

    def test_guard(self):
        with pytest.raises(GuardError):
            cluster_count_distribution_exact(23)


class TestCatalan:
    @pytest.mark.parametrize("k, value", [(0, 1), (1, 1), (3, 5), (10, 16796)])
    def test_values(self, k, value):
        assert catalan(k) == value

    def test_recurrence(self):
        for k in range(1, 40):
            assert catalan(k) == sum(catalan(i) * catalan(k - 1 - i) for i in range(k))

    @pytest.mark.parametrize("n, joint, cond", [(1, F(1, 4), F(1, 2)), (2, F(1, 16), F(1, 6))])
    def test_bridge_examples(self, n, joint, cond):
        assert positive_bridge_probability(n) == (joint, cond)

    def test_bridge_by_enumeration(self):
        for n in range(1, 9):
            hits = bridges = 0
            for steps in enumerate_walks(2 * n):
                if sum(steps) != 0:
                    continue
                bridges += 1
                partial = [sum(steps[:k]) for k in range(1, 2 * n)]
                hits += all(s > 0 for s in partial)
            joint, cond = positive_bridge_probability(n)
            assert hits == catalan(n - 1)
            assert joint == F(hits, 4**n) and cond == F(hits, bridges)
            assert joint == cond * comb(2 * n, n) / 4**n


class TestTrend:
    def test_rows(self):
        rows = asymptotic_trend_report(10)
        assert len(rows) == 9
        assert [r.probability for r in rows[:3]] == [F(1, 4), F(1, 4), F(3, 16)]
        assert all(r.scaled == r.n * r.probability for r in rows)

    def test_budget(self):
        with pytest.raises(GuardError):
            asymptotic_trend_report(31)
        assert len(asymptotic_trend_report(30)) == 29
