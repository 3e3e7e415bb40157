import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dslab.circle import (CircleSet, arc_measure_identity, arc_overlap,
                          arc_union, check_union_scaling, coprime_arcs,
                          hit_count, point_in_arcs, union_all)
from dslab.numtheory import euler_phi
from dslab.psi import constant_psi, table_psi


def sweep_union_measure(arcs):
    """Independent oracle: integrate over the partition cut at all
    endpoints, testing each cell's midpoint."""
    pts = sorted({F(0), F(1), *(a for a, _ in arcs), *(b for _, b in arcs)})
    total = F(0)
    for lo, hi in zip(pts, pts[1:]):
        mid = (lo + hi) / 2
        if any(a < mid < b for a, b in arcs):
            total += hi - lo
    return total


class TestBuild:
    def test_zero_radius_empty(self):
        s = coprime_arcs(5, F(0))
        assert s.is_empty() and s.measure() == 0

    def test_single_arc(self):
        s = coprime_arcs(2, F(1, 2))
        assert s.intervals() == ((F(1, 4), F(3, 4)),)

    def test_touching_arcs_merge(self):
        s = coprime_arcs(3, F(1, 2))
        assert s.intervals() == ((F(1, 6), F(5, 6)),)
        assert s.measure() == F(2, 3)

    def test_five_half(self):
        assert coprime_arcs(5, F(1, 2)).measure() == F(4, 5)

    def test_full_cover_detected(self):
        assert coprime_arcs(2, F(1)).is_full()
        assert coprime_arcs(1, F(1, 2)).is_full()

    def test_wrap_splits_at_zero(self):
        # radius 1/4 around 1/6 and 5/6: both arcs wrap past 0
        s = coprime_arcs(6, F(3, 2))
        assert not s.is_full()
        assert s.intervals() == ((F(0), F(5, 12)), (F(7, 12), F(1)))
        assert s.measure() == F(5, 6)
        assert s.contains(F(0))  # interior point of the wrapped arc

    def test_two_long_arcs_cover(self):
        assert coprime_arcs(4, F(3, 2)).is_full()

    def test_measure_identity_sampled(self):
        for n in (1, 2, 17, 97, 360, 1999, 2000):
            for c in (F(1, 10), F(1, 3), F(1, 2)):
                assert coprime_arcs(n, c).measure() == arc_measure_identity(n, c)

    def test_empty_and_full_singletons(self):
        assert CircleSet.empty().measure() == 0
        assert CircleSet.full().measure() == 1


class TestMeasureBounds:
    def test_two_sided_bound_random(self):
        rng = random.Random(2024)
        for _ in range(800):
            n = rng.randint(1, 3000)
            psi_n = F(rng.randint(0, 5 * 97), 97)
            lam = coprime_arcs(n, psi_n).measure()
            lo = min(psi_n * euler_phi(n) / n, F(1, 2))
            hi = min(2 * psi_n * euler_phi(n) / n, F(1))
            assert lo <= lam <= hi, (n, psi_n)


class TestOverlap:
    def test_example_two_three(self):
        ov = arc_overlap(2, 3, constant_psi(F(1, 2), 2, 3))
        assert ov.measure == F(1, 2)
        assert ov.ds_bound_ok  # 1/2 <= 8 * 1/4 = 2

    def test_zero_psi(self):
        ov = arc_overlap(2, 3, table_psi({}))
        assert ov.measure == 0 and ov.ds_bound_ok and ov.empty_by_d

    def test_small_d_forces_empty(self):
        ov = arc_overlap(7, 11, constant_psi(F(1, 100), 2, 20))
        assert ov.params_d == F(11, 100) < F(1, 2)
        assert ov.measure == 0 and ov.empty_by_d

    def test_oracle_cross_check(self):
        psi = constant_psi(F(1, 2), 2, 12)
        for m, n in [(2, 3), (4, 6), (5, 7), (8, 12), (9, 10)]:
            em = coprime_arcs(m, F(1, 2)).intervals()
            en = coprime_arcs(n, F(1, 2)).intervals()
            cells = sorted({F(0), F(1),
                            *(x for iv in em + en for x in iv)})
            expect = F(0)
            for lo, hi in zip(cells, cells[1:]):
                mid = (lo + hi) / 2
                if any(a < mid < b for a, b in em) and \
                   any(a < mid < b for a, b in en):
                    expect += hi - lo
            assert arc_overlap(m, n, psi).measure == expect

    def test_rejects_equal_or_small(self):
        psi = constant_psi(F(1, 2), 2, 5)
        with pytest.raises(ValueError):
            arc_overlap(3, 3, psi)
        with pytest.raises(ValueError):
            arc_overlap(1, 3, psi)


class TestUnion:
    def test_empty(self):
        assert arc_union(table_psi({})).is_empty()

    def test_single_support(self):
        z = arc_union(table_psi({3: F(1, 4)}))
        assert z.measure() == F(1, 3)
        assert z.intervals() == ((F(1, 4), F(5, 12)), (F(7, 12), F(3, 4)))

    def test_two_supports_oracle_value(self):
        # arcs: (1/4,3/4), (1/6,1/2), (1/2,5/6); the sweep oracle gives 2/3
        arcs = [(F(1, 4), F(3, 4)), (F(1, 6), F(1, 2)), (F(1, 2), F(5, 6))]
        assert sweep_union_measure(arcs) == F(2, 3)
        z = arc_union(table_psi({2: F(1, 2), 3: F(1, 2)}))
        assert z.measure() == F(2, 3)

    def test_subadditivity_random(self):
        rng = random.Random(7)
        for _ in range(25):
            values = {rng.randint(2, 300): F(rng.randint(0, 32), 64)
                      for _ in range(12)}
            psi = table_psi(values)
            total = sum((coprime_arcs(n, psi.value(n)).measure()
                         for n in psi.support), F(0))
            assert arc_union(psi).measure() <= min(total, 1)

    def test_range_restriction(self):
        psi = table_psi({2: F(1, 4), 30: F(1, 4)})
        assert arc_union(psi, lo=3).measure() == \
            coprime_arcs(30, F(1, 4)).measure()


class TestCanonicity:
    @given(st.lists(st.tuples(st.integers(0, 96), st.integers(1, 20)),
                    min_size=1, max_size=12), st.randoms())
    @settings(max_examples=60, deadline=None)
    def test_union_order_invariant(self, raw, rnd):
        arcs = [(F(a, 97), F(a, 97) + F(w, 89)) for a, w in raw]
        s1 = CircleSet.from_fractions(arcs)
        shuffled = list(arcs)
        rnd.shuffle(shuffled)
        assert s1 == CircleSet.from_fractions(shuffled)

    def test_measure_against_oracle(self):
        rng = random.Random(5)
        for _ in range(40):
            arcs = [(F(rng.randint(0, 96), 97),
                     F(rng.randint(0, 96), 97) + F(rng.randint(1, 30), 89))
                    for _ in range(8)]
            # reduce mod 1 and split at 0 by hand, then integrate cells
            pieces = []
            for a, b in arcs:
                length = b - a
                a %= 1
                if a + length <= 1:
                    pieces.append((a, a + length))
                else:
                    pieces.append((a, F(1)))
                    pieces.append((F(0), a + length - 1))
            assert CircleSet.from_fractions(arcs).measure() == \
                sweep_union_measure(pieces)

    def test_associativity_of_union(self):
        a = coprime_arcs(5, F(1, 3))
        b = coprime_arcs(7, F(1, 4))
        c = coprime_arcs(9, F(1, 5))
        assert a.union(b).union(c) == a.union(b.union(c)) == union_all([c, a, b])


class TestScaling:
    def test_example_single_support(self):
        r = check_union_scaling(table_psi({3: F(1, 4)}), F(2))
        assert (r.lhs, r.rhs, r.holds) == (F(2, 3), F(2, 3), True)

    def test_identity_scaling(self):
        psi = table_psi({2: F(1, 2), 3: F(1, 2)})
        r = check_union_scaling(psi, F(1))
        assert r.lhs == r.rhs and r.holds

    def test_mixed_support(self):
        r = check_union_scaling(table_psi({2: F(1, 2), 3: F(1, 2)}), F(3, 2))
        assert r.holds

    def test_rejects_small_t(self):
        with pytest.raises(ValueError):
            check_union_scaling(table_psi({3: F(1, 4)}), F(1, 2))

    def test_random_suite(self):
        rng = random.Random(13)
        for k in range(30):
            values = {rng.randint(2, 500): F(rng.randint(0, 32), 64)
                      for _ in range(10)}
            psi = table_psi(values)
            for t in (F(3, 2), F(2), F(5)):
                assert check_union_scaling(psi, t).holds, (k, t)


class TestHitCount:
    def test_zero_psi(self):
        assert hit_count(100, F(1, 7), table_psi({})) == 0

    def test_center_point_counts(self):
        # 1/3 is a center of an arc of E_3(1/4): open arc contains it
        assert hit_count(3, F(1, 3), table_psi({3: F(1, 4)})) == 1

    def test_brute_force_agreement(self):
        rng = random.Random(3)
        psi = table_psi({n: F(rng.randint(0, 24), 48) for n in range(1, 41)})
        for _ in range(60):
            x = F(rng.randint(0, 996), 997)
            expect = sum(1 for n in range(1, 41)
                         if coprime_arcs(n, psi.value(n)).contains(x))
            assert hit_count(40, x, psi) == expect, x

    def test_wide_psi_respects_membership(self):
        # nearest m = 2 is not coprime to 4, but m = 1 is within range
        assert point_in_arcs(4, F(6, 5), F(1, 2))

    def test_at_zero(self):
        psi = constant_psi(F(1, 2), 1, 10)
        assert hit_count(10, F(0), psi) == 1  # only n = 1 wraps through 0
