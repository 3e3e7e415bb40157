from fractions import Fraction as F

import pytest

from dslab.blocks import BlockScheme, block_mass
from dslab.psi import (block_target_psi, constant_psi, generate_psi,
                       indicator_psi, random_psi, reciprocal_psi, table_psi)


def test_table_drops_zeros_and_sorts():
    psi = table_psi({9: F(0), 3: F(1, 4), 7: "1/2"})
    assert psi.support == (3, 7)
    assert psi.value(9) == 0 and psi.value(3) == F(1, 4)


def test_negative_rejected():
    with pytest.raises(ValueError):
        table_psi({3: F(-1, 4)})


def test_constant_and_reciprocal():
    c = constant_psi("1/3", 2, 5)
    assert c.support == (2, 3, 4, 5) and c.value(4) == F(1, 3)
    r = reciprocal_psi(2, 4)
    assert r.value(3) == F(1, 3)


def test_indicator_families():
    ind = indicator_psi("1/2", 2, 20, residue=1, modulus=4)
    assert ind.support == (5, 9, 13, 17)
    pr = indicator_psi("1/2", 2, 20, primes=True)
    assert pr.support == (2, 3, 5, 7, 11, 13, 17, 19)


def test_block_target_hits_mass_exactly():
    scheme = BlockScheme.canonical()
    psi = block_target_psi(scheme, {1: F(1)})
    assert block_mass(psi, scheme, 1) == 1


def test_block_target_clamp_rejects_unachievable():
    scheme = BlockScheme.canonical()
    # max achievable with psi <= 1/2 on block 1 is sum(phi/(2n)) < 4
    with pytest.raises(ValueError):
        block_target_psi(scheme, {1: F(100)}, clamp_half=True)


def test_random_family_deterministic():
    a = random_psi(2, 50, seed=7)
    b = random_psi(2, 50, seed=7)
    c = random_psi(2, 50, seed=8)
    assert a.values == b.values
    assert a.values != c.values
    assert all(0 <= v <= F(1, 2) for v in a.values.values())


def test_scaled_and_clamps():
    psi = table_psi({4: F(3, 4), 100: F(1, 500)})
    assert psi.scaled(F(2)).value(4) == F(3, 2)
    assert psi.clamped_half().value(4) == F(1, 2)
    ev = psi.erdos_vaaler_floor()
    assert ev.value(100) == F(1, 100)
    assert ev.value(4) == F(3, 4)


def test_generate_psi_roundtrip_and_errors():
    psi = generate_psi({"family": "constant", "value": "1/2", "lo": 2, "hi": 4})
    assert psi.support == (2, 3, 4)
    with pytest.raises(ValueError):
        generate_psi({"family": "constant", "value": "1/2", "lo": 2})  # unbounded
    with pytest.raises(ValueError):
        generate_psi({"family": "uniform", "lo": 5, "hi": 2})
    with pytest.raises(ValueError):
        generate_psi({"family": "unknown"})


def test_mass_matches_definition():
    from dslab.numtheory import euler_phi

    psi = table_psi({5: F(1, 2), 12: F(1, 3)})
    assert psi.mass() == F(1, 2) * euler_phi(5) / 5 + F(1, 3) * euler_phi(12) / 12
