from fractions import Fraction as F
from math import gcd

import pytest

from dslab.numtheory import (coprime_residues, euler_phi, factorize,
                             pair_params, primes_up_to)


@pytest.mark.parametrize("n,pairs", [
    (1, ()),
    (12, ((2, 2), (3, 1))),
    (97, ((97, 1),)),
    (2**16, ((2, 16),)),
    (3 * 5 * 7 * 11, ((3, 1), (5, 1), (7, 1), (11, 1))),
])
def test_factorize(n, pairs):
    f = factorize(n)
    assert f.pairs == pairs
    assert f.value() == n


def test_factorize_reconstructs():
    for n in range(1, 3000):
        assert factorize(n).value() == n


def test_factorize_large_semiprime():
    # beyond the sieve cap, falls back to plain trial division
    p, q = 65537, 65539
    assert factorize(p * q).pairs == ((p, 1), (q, 1))


@pytest.mark.parametrize("n,phi", [(1, 1), (12, 4), (97, 96)])
def test_euler_phi_examples(n, phi):
    assert euler_phi(n) == phi


def test_euler_phi_by_enumeration():
    for n in (1, 12, 97, 360, 1024):
        assert euler_phi(n) == sum(1 for m in range(1, n + 1) if gcd(m, n) == 1)


def test_phi_multiplicative_small():
    for m in range(1, 201):
        for n in range(1, 201):
            if gcd(m, n) == 1:
                assert euler_phi(m * n) == euler_phi(m) * euler_phi(n)


def test_phi_divisor_sum():
    # sum of phi(d) over d | n equals n
    limit = 10**4
    acc = [0] * (limit + 1)
    for d in range(1, limit + 1):
        phi_d = euler_phi(d)
        for mult in range(d, limit + 1, d):
            acc[mult] += phi_d
    assert all(acc[n] == n for n in range(1, limit + 1))


@pytest.mark.parametrize("n,res", [(1, (1,)), (6, (1, 5)), (10, (1, 3, 7, 9))])
def test_coprime_residues_examples(n, res):
    assert coprime_residues(n) == res


def test_coprime_residue_counts():
    for n in range(1, 2001):
        assert len(coprime_residues(n)) == euler_phi(n)


@pytest.mark.parametrize("m,n,pm,pn,b,d,p", [
    (4, 6, F(1, 2), F(1, 2), 6, F(3, 2), F(3)),
    (2, 3, F(0), F(0), 6, F(0), F(3)),
    (3, 9, F(1), F(1), 3, F(3), F(1)),
])
def test_pair_params_examples(m, n, pm, pn, b, d, p):
    pp = pair_params(m, n, pm, pn)
    assert (pp.b, pp.d, pp.p_product) == (b, d, p)


def test_pair_params_rejects_equal():
    with pytest.raises(ValueError):
        pair_params(5, 5, F(1), F(1))


def test_p_product_at_least_one():
    import random

    rng = random.Random(0)
    for _ in range(300):
        m, n = rng.randint(2, 400), rng.randint(2, 400)
        if m == n:
            continue
        pm = F(rng.randint(0, 20), rng.randint(1, 20))
        pn = F(rng.randint(0, 20), rng.randint(1, 20))
        pp = pair_params(m, n, pm, pn)
        assert pp.p_product >= 1
        big = [q for q in factorize(pp.b).primes() if q > pp.d]
        if not big:
            assert pp.p_product == 1


def test_primes_up_to():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
