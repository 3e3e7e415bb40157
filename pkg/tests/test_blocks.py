import random
from fractions import Fraction as F

import pytest

from dslab.blocks import (BlockScheme, block_mass, block_members,
                          block_stats_exact, block_stats_mc, cap_block_mass,
                          cauchy_schwarz_lower, check_assumptions,
                          scheme_from_descriptor, wilson_halfwidth)
from dslab.circle import coprime_arcs
from dslab.errors import FeasibilityError
from dslab.numtheory import euler_phi
from dslab.psi import constant_psi, table_psi


class TestScheme:
    def test_canonical_ranges(self):
        s = BlockScheme.canonical()
        assert s.block_range(0) == (3, 4)
        assert s.block_range(1) == (5, 16)
        assert s.block_range(2) == (17, 256)
        assert s.block_range(3) == (257, 65536)

    def test_canonical_index(self):
        s = BlockScheme.canonical()
        assert s.block_index(2) is None
        assert s.block_index(5) == 1
        assert s.block_index(16) == 1
        assert s.block_index(17) == 2
        assert s.block_index(65536) == 3

    def test_custom(self):
        s = BlockScheme.custom([4, 16, 64])
        assert s.block_range(1) == (5, 16)
        assert s.block_range(2) == (17, 64)
        assert s.block_index(64) == 2
        assert s.block_index(65) is None
        with pytest.raises(ValueError):
            s.block_range(3)
        with pytest.raises(ValueError):
            BlockScheme.custom([5, 5])

    def test_descriptor_roundtrip(self):
        for s in (BlockScheme.canonical(), BlockScheme.custom([4, 16, 64])):
            assert scheme_from_descriptor(s.descriptor()) == s


class TestExactStats:
    def test_zero_psi(self):
        st = block_stats_exact(table_psi({}), BlockScheme.canonical(), 1)
        assert (st.s, st.b, st.q, st.r) == (0, 0, 0, None)

    def test_mass_matches_direct_sum(self):
        psi = constant_psi(F(1, 2), 5, 16)
        st = block_stats_exact(psi, BlockScheme.canonical(), 1)
        assert st.s == sum(F(euler_phi(n), 2 * n) for n in range(5, 17))

    def test_single_support_member(self):
        psi = table_psi({20: F(1, 3)})
        st = block_stats_exact(psi, BlockScheme.canonical(), 2)
        assert st.q == 0
        assert st.b == coprime_arcs(20, F(1, 3)).measure()

    def test_invariants_random(self):
        scheme = BlockScheme.canonical()
        for seed in range(8):
            rng = random.Random(seed)
            psi = table_psi({n: F(rng.randint(0, 32), 64)
                             for n in range(5, 17)})
            st = block_stats_exact(psi, scheme, 1)
            assert st.b <= min(2 * st.s, 1)
            if st.s > 0:
                assert st.b >= cauchy_schwarz_lower(st.s, st.q)
                assert st.r * st.s**2 == st.q

    def test_q_counts_both_orders(self):
        psi = table_psi({5: F(1, 2), 6: F(1, 2)})
        st = block_stats_exact(psi, BlockScheme.canonical(), 1)
        one_way = coprime_arcs(5, F(1, 2)).intersect(
            coprime_arcs(6, F(1, 2))).measure()
        assert st.q == 2 * one_way

    def test_feasibility_cap(self):
        psi = constant_psi(F(1, 2), 5, 16)
        with pytest.raises(FeasibilityError):
            block_stats_exact(psi, BlockScheme.canonical(), 4)
        # custom block too populous for a tiny cap
        with pytest.raises(FeasibilityError):
            block_stats_exact(constant_psi(F(1, 2), 5, 64),
                              BlockScheme.custom([4, 64]), 1, phi_cap=10)


class TestMonteCarlo:
    def test_zero_psi(self):
        st = block_stats_mc(table_psi({}), BlockScheme.canonical(), 1,
                            samples=200, seed=0)
        assert st.b == 0 and st.exact is False and st.q is None

    def test_full_cover(self):
        psi = table_psi({n: F(n, 2) for n in range(5, 17)})
        st = block_stats_mc(psi, BlockScheme.canonical(), 1,
                            samples=100, seed=1)
        assert st.b == 1

    def test_deterministic_in_seed(self):
        psi = constant_psi(F(1, 4), 5, 16)
        a = block_stats_mc(psi, BlockScheme.canonical(), 1, 500, seed=3)
        b = block_stats_mc(psi, BlockScheme.canonical(), 1, 500, seed=3)
        assert a.b == b.b and a.b_halfwidth == b.b_halfwidth

    def test_bracketing(self):
        psi = constant_psi(F(1, 2), 5, 16)
        exact = block_stats_exact(psi, BlockScheme.canonical(), 1)
        hits = sum(
            1 for s in range(25)
            if abs(block_stats_mc(psi, BlockScheme.canonical(), 1, 1200,
                                  seed=s).b - exact.b)
            <= block_stats_mc(psi, BlockScheme.canonical(), 1, 1200,
                              seed=s).b_halfwidth)
        assert hits >= 24

    def test_wilson_halfwidth_edges(self):
        assert wilson_halfwidth(0, 100) > 0
        assert wilson_halfwidth(100, 100) > 0
        assert wilson_halfwidth(50, 100) < F(1, 5)


class TestCauchySchwarz:
    def test_examples(self):
        assert cauchy_schwarz_lower(F(1), F(0)) == 1
        assert cauchy_schwarz_lower(F(1, 2), F(1, 2)) == F(1, 4)
        with pytest.raises(ValueError):
            cauchy_schwarz_lower(F(0), F(0))

    def test_lower_bound_on_block(self):
        psi = constant_psi(F(1, 4), 5, 16)
        st = block_stats_exact(psi, BlockScheme.canonical(), 1)
        assert st.b >= cauchy_schwarz_lower(st.s, st.q)


class TestAssumptions:
    def test_vacuous(self):
        ac = check_assumptions(table_psi({}), BlockScheme.canonical(), 1)
        assert ac.a1 and ac.a2 and ac.a3 and ac.q_over_s is None

    def test_a1_constructed(self):
        scheme = BlockScheme.canonical()
        base = sum(F(euler_phi(n), n) for n in range(5, 17))
        # choose theta so the block mass is exactly 1/h with h = 1
        psi = table_psi({n: 1 / base for n in range(5, 17)})
        ac = check_assumptions(psi, scheme, 1)
        assert ac.s == 1 and ac.a1

    def test_a3_chain(self):
        scheme = BlockScheme.canonical()
        psi = table_psi({n: F(1, 8 * n) for n in range(5, 17)})
        ac = check_assumptions(psi, scheme, 1)
        assert ac.a3
        st = block_stats_exact(psi, scheme, 1)
        plain = sum((psi.value(n) for n in range(5, 17)), F(0))
        assert st.q <= 8 * plain**2 <= 8 * st.s * ac.heavy_sum

    def test_h_zero_rejected(self):
        with pytest.raises(ValueError):
            check_assumptions(table_psi({}), BlockScheme.canonical(), 0)


class TestMassCap:
    def test_identity_when_small(self):
        scheme = BlockScheme.canonical()
        psi = constant_psi(F(1, 100), 5, 16)
        assert cap_block_mass(psi, scheme).values == psi.values

    def test_single_block_quartered(self):
        scheme = BlockScheme.custom([4, 16])
        base = block_mass(constant_psi(F(1, 2), 5, 16), scheme, 1)
        psi = constant_psi(F(1, 2) * 4 / base, 5, 16)  # mass exactly 4
        assert block_mass(psi, scheme, 1) == 4
        capped = cap_block_mass(psi, scheme)
        assert block_mass(capped, scheme, 1) == 1
        assert all(capped.value(n) == psi.value(n) / 4 for n in psi.support)

    def test_mixed_blocks_and_idempotence(self):
        scheme = BlockScheme.custom([4, 16, 64])
        psi = table_psi({n: F(2) for n in range(5, 17)} |
                        {n: F(1, 1000) for n in range(17, 30)})
        capped = cap_block_mass(psi, scheme)
        assert block_mass(capped, scheme, 1) == 1
        assert block_mass(capped, scheme, 2) == block_mass(psi, scheme, 2)
        assert cap_block_mass(capped, scheme).values == capped.values
        assert all(capped.value(n) <= psi.value(n) for n in psi.support)

    def test_out_of_block_members_pass_through(self):
        scheme = BlockScheme.canonical()
        psi = table_psi({1: F(7), 2: F(7), 5: F(1, 4)})
        capped = cap_block_mass(psi, scheme)
        assert capped.value(1) == F(7) and capped.value(2) == F(7)


def test_block_members_restriction():
    psi = table_psi({4: F(1), 5: F(1), 16: F(1), 17: F(1)})
    assert block_members(psi, BlockScheme.canonical(), 1) == [5, 16]
