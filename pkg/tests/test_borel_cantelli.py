import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dslab.blocks import BlockScheme, block_mass
from dslab.borel_cantelli import (EventSystem, bc_lower_bound,
                                  best_bc_lower_bound, classify_pairs,
                                  convolution_select, divergence_criterion,
                                  selection_objective)
from dslab.circle import CircleSet, union_all
from dslab.enclosure import Enc, enc_exp
from dslab.errors import ZeroDenominatorError
from dslab.psi import block_target_psi, table_psi

SCHEME = BlockScheme.custom([4, 16, 64, 256])


def random_sets(rng, count=None):
    sets = []
    for _ in range(count or rng.randint(2, 6)):
        arcs = [(F(rng.randint(0, 80), 101),
                 F(rng.randint(0, 80), 101) + F(rng.randint(1, 12), 103))
                for _ in range(rng.randint(1, 3))]
        sets.append(CircleSet.from_fractions(arcs))
    return sets


class TestEventSystem:
    def test_validation(self):
        with pytest.raises(ValueError):
            EventSystem.from_measures([F(1, 2)], [[F(1, 3)]])  # diagonal
        with pytest.raises(ValueError):
            EventSystem.from_measures(
                [F(1, 2), F(1, 2)],
                [[F(1, 2), F(3, 4)], [F(3, 4), F(1, 2)]])  # pp > min p

    def test_single_event(self):
        es = EventSystem.from_measures([F(1, 2)], [[F(1, 2)]])
        assert bc_lower_bound(es, 1) == F(1, 2)

    def test_two_identical(self):
        es = EventSystem.from_measures([F(1, 2)] * 2, [[F(1, 2)] * 2] * 2)
        assert bc_lower_bound(es, 2) == F(1, 2)

    def test_two_disjoint(self):
        es = EventSystem.from_measures(
            [F(1, 2)] * 2, [[F(1, 2), F(0)], [F(0), F(1, 2)]])
        assert bc_lower_bound(es, 2) == 1

    def test_zero_denominator(self):
        es = EventSystem.from_measures([F(0)], [[F(0)]])
        with pytest.raises(ZeroDenominatorError):
            bc_lower_bound(es, 1)
        assert best_bc_lower_bound(es) == (0, None)


class TestSoundness:
    def test_bound_below_union_random(self):
        rng = random.Random(17)
        for _ in range(150):
            sets = random_sets(rng)
            es = EventSystem.from_circle_sets(sets)
            bound, _ = best_bc_lower_bound(es)
            assert bound <= union_all(sets).measure()

    def test_disjoint_equality(self):
        sets = [CircleSet.from_fractions([(F(i, 5), F(i, 5) + F(1, 7))])
                for i in range(4)]
        es = EventSystem.from_circle_sets(sets)
        bound, _ = best_bc_lower_bound(es)
        assert bound == union_all(sets).measure()

    @given(st.integers(1, 10**6), st.integers(1, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_weight_invariance(self, num, den):
        rng = random.Random(23)
        sets = random_sets(rng, count=3)
        w = [F(2), F(1, 3), F(5)]
        es = EventSystem.from_circle_sets(sets, weights=w)
        c = F(num, den)
        es2 = es.reweighted([c * x for x in w])
        for prefix in range(1, 4):
            try:
                assert bc_lower_bound(es, prefix) == bc_lower_bound(es2, prefix)
            except ZeroDenominatorError:
                pass

    def test_unit_weights_match_unweighted_formula(self):
        rng = random.Random(29)
        sets = random_sets(rng, count=4)
        es = EventSystem.from_circle_sets(sets)
        for prefix in range(1, 5):
            num = sum((es.p[k] for k in range(prefix)), F(0)) ** 2
            den = sum((es.pp[i][j] for i in range(prefix)
                       for j in range(prefix)), F(0))
            if den == 0:
                continue
            assert bc_lower_bound(es, prefix) == num / den


class TestCriterion:
    def test_all_small_masses_contribute_zero(self):
        psi = table_psi({5: F(1, 100)})
        rows = divergence_criterion(psi, SCHEME, 3)
        assert all(r.term.lo == r.term.hi == 0 for r in rows)
        assert rows[-1].partial.hi == 0

    def test_term_against_float_reference(self):
        psi = block_target_psi(SCHEME, {2: F(16)})
        rows = divergence_criterion(psi, SCHEME, 2)
        assert rows[0].term.hi == 0  # S_1 = 0 < 3
        t = rows[1].term
        ref = math.log(16) / (2 * math.log(math.log(16)))
        assert float(t.lo) <= ref <= float(t.hi)
        assert t.hi - t.lo < F(1, 2**100)
        assert rows[1].partial.lo == t.lo

    def test_threshold_is_exact_on_mass(self):
        # S = 3 exactly enters the sum; S slightly below does not
        base = block_mass(block_target_psi(SCHEME, {1: F(1)}), SCHEME, 1)
        assert base == 1
        at3 = divergence_criterion(block_target_psi(SCHEME, {1: F(3)}),
                                   SCHEME, 1)[0]
        assert at3.term.lo > 0
        below = divergence_criterion(
            block_target_psi(SCHEME, {1: F(3) - F(1, 10**9)}), SCHEME, 1)[0]
        assert below.term.hi == 0

    def test_monotone_under_increase_above_ee(self):
        # with S >= e^e the per-block term increases with the mass
        lo = divergence_criterion(block_target_psi(SCHEME, {2: F(16)}),
                                  SCHEME, 2)[-1].partial
        hi = divergence_criterion(block_target_psi(SCHEME, {2: F(32)}),
                                  SCHEME, 2)[-1].partial
        assert lo.hi < hi.lo


class TestClassification:
    def test_exact_unity_lands_in_class_zero(self):
        # members 6, 8 in block [5,16]: D = max(8 psi6, 6 psi8)/2 = 1
        psi = table_psi({6: F(1, 4), 8: F(1, 3)})
        assert list(classify_pairs(psi, SCHEME, 1)) == [0]

    def test_class_masses_sum_both_orders(self):
        psi = table_psi({6: F(1, 4), 8: F(1, 3)})
        a = classify_pairs(psi, SCHEME, 1)
        from dslab.numtheory import euler_phi

        w = (F(1, 4) * euler_phi(6) / 6) * (F(1, 3) * euler_phi(8) / 8)
        assert a[0] == 2 * w

    def test_tiny_d_pairs_skipped(self):
        # D = max(8 psi6, 6 psi8)/2 far below 1/e: no classes
        psi = table_psi({6: F(1, 100), 8: F(1, 100)})
        assert classify_pairs(psi, SCHEME, 1) == {}

    def test_boundary_class_matches_log(self):
        rng = random.Random(31)
        for _ in range(20):
            psi = table_psi({n: F(rng.randint(1, 64), 64)
                             for n in rng.sample(range(5, 17), 4)})
            a = classify_pairs(psi, SCHEME, 1)
            for j in a:
                assert j >= -1


class TestConvolutionSelect:
    def setup_method(self):
        self.psi = block_target_psi(SCHEME, {2: F(16)})

    def test_requires_large_mass(self):
        with pytest.raises(ValueError):
            convolution_select(table_psi({20: F(1, 2)}), SCHEME, 2)

    def test_shift_certified_within_log_mass(self):
        plan = convolution_select(self.psi, SCHEME, 2)
        assert 0 <= plan.k <= plan.k_max
        # k_max = floor(log S): e^k_max <= S
        assert plan.k_max == 2 and plan.s == 16

    def test_minimality_of_shift(self):
        plan = convolution_select(self.psi, SCHEME, 2)
        best = selection_objective(plan.a, 2, plan.k, plan.y_ceil)
        for k in range(plan.k_max + 1):
            other = selection_objective(plan.a, 2, k, plan.y_ceil)
            assert best <= other
            if other == best:
                assert plan.k <= k  # smallest minimizer wins

    def test_omega_in_unit_interval(self):
        plan = convolution_select(self.psi, SCHEME, 2)
        assert plan.omega.lo >= 0 and plan.omega.hi <= 1

    def test_l1_identity(self):
        plan = convolution_select(self.psi, SCHEME, 2)
        assert plan.young_ok
        assert plan.conv_l1 == plan.f_l1 * plan.g_l1

    def test_psibar_kept_symbolic(self):
        plan = convolution_select(self.psi, SCHEME, 2)
        assert plan.sbar_core == plan.s
        assert set(plan.psibar_core) == {n for n in self.psi.support
                                         if 17 <= n <= 64}
        # the rescaled block mass S e^(-k) stays >= 1 because k <= log S
        sbar = Enc.exact(plan.sbar_core) * enc_exp(-plan.k)
        assert sbar.hi >= 1

    def test_single_member_block_all_classes_empty(self):
        # one nonzero value, mass pushed above e^e via a heavy weight
        psi = table_psi({20: F(40)})
        plan = convolution_select(psi, SCHEME, 2)
        assert plan.a == {} and plan.k == 0
        assert plan.f_l1 == 0 and plan.conv_l1 == 0
