"""Seeded invariant suites behind the `verify` CLI subcommand.

Each suite returns a list of verdict dicts: {"name", "ok", ...operands},
with every asserted inequality carrying its exact operands as num/den
strings.  Suites are deterministic in (parameters, seed).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from . import blocks as bl
from . import borel_cantelli as bc
from . import circle as ci
from . import laurent as la
from . import padic as pa
from . import series_dimfn as sd
from .numtheory import euler_phi
from .psi import PsiSpec, table_psi


def frac_str(x) -> str:
    if x is None:
        return ""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _verdict(name: str, ok: bool, **detail) -> dict:
    out = {"name": name, "ok": bool(ok)}
    out.update(detail)
    return out


def random_finite_psi(rng: random.Random, lo: int = 2, hi: int = 500,
                      count: int = 20, denominator: int = 64) -> PsiSpec:
    values = {}
    for _ in range(count):
        n = rng.randint(lo, hi)
        values[n] = Fraction(rng.randint(0, denominator // 2), denominator)
    return table_psi(values)


def verify_real(max_n: int = 300, pair_max: int = 60, draws: int = 500,
                seed: int = 0) -> list[dict]:
    verdicts = []
    # exact arc measure identity for radii <= 1/2
    bad = []
    for n in range(1, max_n + 1):
        for c in (Fraction(1, 10), Fraction(1, 3), Fraction(1, 2)):
            if ci.coprime_arcs(n, c).measure() != ci.arc_measure_identity(n, c):
                bad.append((n, c))
    verdicts.append(_verdict("arc-measure-identity", not bad,
                             max_n=max_n, failures=[str(t) for t in bad[:3]]))
    # two-sided measure bound for random radii
    rng = random.Random(seed)
    bad = []
    for _ in range(draws):
        n = rng.randint(1, max_n * 4)
        psi_n = Fraction(rng.randint(0, 5 * 64), 64)
        lam = ci.coprime_arcs(n, psi_n).measure()
        lo = min(psi_n * euler_phi(n) / n, Fraction(1, 2))
        hi = min(2 * psi_n * euler_phi(n) / n, Fraction(1))
        if not lo <= lam <= hi:
            bad.append((n, psi_n))
    verdicts.append(_verdict("arc-measure-two-sided-bound", not bad,
                             draws=draws, failures=[str(t) for t in bad[:3]]))
    # pairwise overlap bounds
    bad = []
    max_ratio = Fraction(0)
    for c in (Fraction(1, 4), Fraction(1, 2)):
        psi = table_psi({n: c for n in range(2, pair_max + 1)})
        for m, n in combinations(range(2, pair_max + 1), 2):
            ov = ci.arc_overlap(m, n, psi)
            if not (ov.ds_bound_ok and ov.empty_by_d):
                bad.append((m, n, c))
            if ov.pv_ratio is not None and ov.pv_ratio > max_ratio:
                max_ratio = ov.pv_ratio
    verdicts.append(_verdict("pair-overlap-bounds", not bad, pair_max=pair_max,
                             max_pv_ratio=frac_str(max_ratio),
                             failures=[str(t) for t in bad[:3]]))
    # union scaling and subadditivity
    bad_s, bad_u = [], []
    for k in range(10):
        psi = random_finite_psi(random.Random(seed + k), hi=max_n)
        total = sum((ci.coprime_arcs(n, psi.value(n)).measure()
                     for n in psi.support), Fraction(0))
        z = ci.arc_union(psi).measure()
        if z > min(total, 1):
            bad_u.append(k)
        for t in (Fraction(3, 2), Fraction(2), Fraction(5)):
            if not ci.check_union_scaling(psi, t).holds:
                bad_s.append((k, t))
    verdicts.append(_verdict("union-subadditivity", not bad_u))
    verdicts.append(_verdict("union-scaling", not bad_s,
                             failures=[str(t) for t in bad_s[:3]]))
    # representation canonicity under insertion order
    rng = random.Random(seed + 99)
    ok = True
    for _ in range(20):
        arcs = [(Fraction(rng.randint(0, 90), 97),
                 Fraction(rng.randint(0, 90), 97) + Fraction(rng.randint(1, 9), 89))
                for _ in range(8)]
        s1 = ci.CircleSet.from_fractions(arcs)
        rng.shuffle(arcs)
        if s1 != ci.CircleSet.from_fractions(arcs):
            ok = False
    verdicts.append(_verdict("union-canonical-form", ok))
    return verdicts


def verify_padic(seed: int = 0, scaling_runs: int = 100,
                 chain_runs: int = 50) -> list[dict]:
    verdicts = []
    bad = []
    eq_cases = 0
    runs = 0
    for p in (2, 3, 5):
        for k in range(scaling_runs):
            psi = pa.admissible_random_psi(p, seed * 1000 + k)
            for t in (Fraction(2), Fraction(3)):
                r = pa.check_ball_union_scaling(p, psi, t)
                runs += 1
                if not r.holds:
                    bad.append((p, k, t))
                if r.equality:
                    eq_cases += 1
    verdicts.append(_verdict("ball-union-scaling", not bad, runs=runs,
                             equality_cases=eq_cases,
                             failures=[str(t) for t in bad[:3]]))
    # overlap chain on admissible triples
    rng = random.Random(seed + 1)
    bad = []
    for _ in range(chain_runs):
        p = rng.choice([2, 3, 5])
        while True:
            m, n = rng.randint(2, 60), rng.randint(2, 60)
            if m != n and m % p and n % p:
                break
        values = {}
        for kk in (m, n):
            j = 1
            while Fraction(kk, p**j) >= Fraction(1, 4):
                j += 1
            values[kk] = Fraction(kk, p ** (j + rng.randint(0, 2)))
        res = pa.overlap_chain(p, m, n, table_psi(values))
        if not res.chain_ok:
            bad.append((p, m, n))
    verdicts.append(_verdict("overlap-chain", not bad, runs=chain_runs,
                             failures=[str(t) for t in bad[:3]]))
    # constructed balls have measure p^z <= radius (and the union never
    # exceeds what the disjoint per-center balls could cover)
    rng = random.Random(seed + 2)
    bad = []
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 80)
        psi_n = Fraction(rng.randint(1, 256), 256)
        rho = psi_n / n
        z = pa.canonical_radius(p, rho)
        if not Fraction(p) ** z <= rho < Fraction(p) ** (z + 1):
            bad.append((p, n, psi_n))
        s = pa.coprime_balls(p, n, psi_n)
        if z < 0 and n % p and s.measure() > (2 * n + 1) * Fraction(p) ** z:
            bad.append((p, n, psi_n, "count"))
    verdicts.append(_verdict("ball-measure-at-most-radius", not bad,
                             failures=[str(t) for t in bad[:3]]))
    # inclusion-exclusion bookkeeping
    rng = random.Random(seed + 3)
    ok = True
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        s1 = pa.coprime_balls(p, rng.randint(2, 40), Fraction(rng.randint(1, 64), 64))
        s2 = pa.coprime_balls(p, rng.randint(2, 40), Fraction(rng.randint(1, 64), 64))
        if s1.union(s2).measure() != (s1.measure() + s2.measure()
                                      - s1.intersect(s2).measure()):
            ok = False
    verdicts.append(_verdict("inclusion-exclusion", ok))
    return verdicts


def verify_laurent(deg_max: int = 3) -> list[dict]:
    verdicts = []
    # Moebius-sum count vs enumeration
    bad = []
    for q in (2, 3):
        dm = deg_max if q == 2 else min(deg_max, 2)
        for deg in range(1, dm + 1):
            for Q in la.monic_polys(q, deg):
                for d in (1, 2):
                    if la.coprime_tuple_count(Q, d) != la.brute_coprime_tuple_count(Q, d):
                        bad.append((q, str(Q), d))
    verdicts.append(_verdict("coprime-count-vs-enumeration", not bad,
                             failures=[str(t) for t in bad[:3]]))
    # Moebius fundamental identity
    bad = []
    for q in (2, 3):
        for deg in (1, 2):
            for Q in la.monic_polys(q, deg):
                if sum(la.mobius_poly(R) for R in la.monic_divisors(Q)) != 0:
                    bad.append((q, str(Q)))
    verdicts.append(_verdict("mobius-divisor-sum-zero", not bad))
    # mass lower bounds, d = 2
    bad = []
    for q in (2, 3):
        dm = 3 if q == 2 else 2
        for deg in range(1, dm + 1):
            for Q in la.monic_polys(q, deg):
                for j in (0, 1, 2):
                    chk = la.cube_mass_check(Q, Fraction(1, q**j), 2)
                    if chk.bound_3_16_ok is False or chk.bound_half_ok is False:
                        bad.append((q, str(Q), j))
    verdicts.append(_verdict("cube-mass-lower-bounds", not bad,
                             failures=[str(t) for t in bad[:3]]))
    # overlap bounds, exhaustive small suite
    bad = []
    worst = Fraction(0)
    monics = [Q for deg in range(1, deg_max + 1) for Q in la.monic_polys(2, deg)]
    for c1 in (Fraction(1, 2), Fraction(1, 4)):
        for Q, Q2 in combinations(monics, 2):
            psi = la.PolyPsiSpec(2, {Q: c1, Q2: c1})
            ov = la.cube_overlap(Q, Q2, psi, 2)
            if not ov.product_bound_ok or ov.quasi_bound_ok is False:
                bad.append((str(Q), str(Q2), c1))
            if ov.quasi_constant is not None and ov.quasi_constant > worst:
                worst = ov.quasi_constant
    verdicts.append(_verdict("cube-overlap-bounds", not bad,
                             worst_quasi_constant=frac_str(worst),
                             failures=[str(t) for t in bad[:3]]))
    # shifted-cube overlap sums
    bad = []
    for q in (2, 3):
        for d in (1, 2):
            for z1 in range(-2, 3):
                for z2 in range(-2, 3):
                    for dg in (0, 1, 2):
                        if not la.shifted_cube_overlap_sum(q, d, z1, z2, dg).holds:
                            bad.append((q, d, z1, z2, dg))
    verdicts.append(_verdict("shifted-cube-overlap-sum", not bad))
    # union scaling
    bad = []
    for seed in range(10):
        rng = random.Random(seed)
        vals = {Q: Fraction(1, 2 ** rng.randint(0, 3))
                for Q in rng.sample(monics, 4)}
        psi = la.PolyPsiSpec(2, vals)
        for t in (Fraction(3, 2), Fraction(3)):
            for d in (1, 2):
                if not la.check_cube_union_scaling(psi, t, d).holds:
                    bad.append((seed, t, d))
    verdicts.append(_verdict("cube-union-scaling", not bad))
    return verdicts


def verify_blocks(seed: int = 0, mc_seeds: int = 10) -> list[dict]:
    verdicts = []
    scheme = bl.BlockScheme.canonical()
    bad = []
    for k in range(5):
        rng = random.Random(seed + k)
        psi = table_psi({n: Fraction(rng.randint(0, 32), 64)
                         for n in range(5, 17)})
        st = bl.block_stats_exact(psi, scheme, 1)
        if st.b > min(2 * st.s, 1):
            bad.append((k, "upper"))
        if st.s > 0 and st.b < bl.cauchy_schwarz_lower(st.s, st.q):
            bad.append((k, "lower"))
        if st.s > 0 and st.r * st.s**2 != st.q:
            bad.append((k, "ratio"))
    verdicts.append(_verdict("block-stats-invariants", not bad,
                             failures=[str(t) for t in bad[:3]]))
    # per-block renormalization
    psi = table_psi({n: Fraction(1, 2) for n in range(5, 17)}).scaled(8)
    capped = bl.cap_block_mass(psi, scheme)
    once_more = bl.cap_block_mass(capped, scheme)
    ok = (bl.block_mass(capped, scheme, 1) <= 1
          and once_more.values == capped.values
          and all(capped.value(n) <= psi.value(n) for n in psi.support))
    verdicts.append(_verdict("block-mass-cap", ok))
    # MC estimator brackets the exact value
    psi = table_psi({n: Fraction(1, 2) for n in range(5, 17)})
    exact = bl.block_stats_exact(psi, scheme, 1)
    hits = 0
    for s in range(mc_seeds):
        mc = bl.block_stats_mc(psi, scheme, 1, samples=1000, seed=s)
        if abs(mc.b - exact.b) <= mc.b_halfwidth:
            hits += 1
    verdicts.append(_verdict("mc-bracketing", hits >= mc_seeds - 1,
                             hits=hits, seeds=mc_seeds))
    return verdicts


def verify_bc(seed: int = 0, systems: int = 100) -> list[dict]:
    verdicts = []
    rng = random.Random(seed)
    bad = []
    for k in range(systems):
        sets = []
        for _ in range(rng.randint(2, 6)):
            arcs = [(Fraction(rng.randint(0, 80), 101),
                     Fraction(rng.randint(0, 80), 101) + Fraction(rng.randint(1, 12), 103))
                    for _ in range(rng.randint(1, 3))]
            sets.append(ci.CircleSet.from_fractions(arcs))
        es = bc.EventSystem.from_circle_sets(sets)
        bound, _ = bc.best_bc_lower_bound(es)
        if bound > ci.union_all(sets).measure():
            bad.append(k)
    verdicts.append(_verdict("bc-bound-below-union", not bad, systems=systems,
                             failures=bad[:3]))
    # disjoint systems achieve equality
    fifth = Fraction(1, 5)
    sets = [ci.CircleSet.from_fractions([(i * fifth, i * fifth + Fraction(1, 7))])
            for i in range(4)]
    es = bc.EventSystem.from_circle_sets(sets)
    bound, _ = bc.best_bc_lower_bound(es)
    verdicts.append(_verdict("bc-disjoint-equality",
                             bound == ci.union_all(sets).measure()))
    # weight rescaling invariance
    rng = random.Random(seed + 7)
    ok = True
    for _ in range(20):
        sets = [ci.CircleSet.from_fractions(
            [(Fraction(rng.randint(0, 80), 101),
              Fraction(rng.randint(0, 80), 101) + Fraction(rng.randint(1, 12), 103))])
            for _ in range(3)]
        w = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(3)]
        es = bc.EventSystem.from_circle_sets(sets, weights=w)
        c = Fraction(rng.randint(1, 20), rng.randint(1, 7))
        es2 = es.reweighted([c * x for x in w])
        for prefix in range(1, 4):
            try:
                if bc.bc_lower_bound(es, prefix) != bc.bc_lower_bound(es2, prefix):
                    ok = False
            except bc.ZeroDenominatorError:
                pass
    verdicts.append(_verdict("bc-weight-invariance", ok))
    return verdicts


def verify_series(i_max: int = 32) -> list[dict]:
    verdicts = []
    ys = sd.slow_divergent_transform([Fraction(1)] * 2000)
    ok = all(a > b for a, b in zip(ys, ys[1:])) and all(y > 0 for y in ys)
    lower = sd.weighted_sum_lower([Fraction(1)] * 2000, ys)
    verdicts.append(_verdict("slow-divergence", ok and lower > 5,
                             partial_lower_bound=frac_str(lower)))
    acc = sd.accelerate_convergent_transform([Fraction(0)] * 120)
    ok = all(a > b for a, b in zip(acc.heads, acc.heads[1:]))
    verdicts.append(_verdict("accelerated-increasing", ok))
    verdicts.append(_verdict("clamped-divergence", acc.z[-1].lo > 5,
                             z_last_lower=frac_str(acc.z[-1].lo)))
    g_log = sd.StepFn.from_pairs([(i, i) for i in range(1, 48)], increasing=True)
    chk = sd.check_dimfn_grid(sd.DimFn(mode="log", g=g_log), i_max)
    verdicts.append(_verdict("dimfn-log-grid", chk.monotone_ok and chk.ratio_ok))
    g_sqrt = sd.StepFn.from_pairs([(2**i, Fraction(1, 2**i)) for i in range(0, 33)],
                                  increasing=False)
    chk = sd.check_dimfn_grid(sd.DimFn(mode="sqrt", g=g_sqrt), i_max, base=4)
    verdicts.append(_verdict("dimfn-sqrt-grid", chk.monotone_ok and chk.ratio_ok))
    return verdicts


SUITES = {
    "real": verify_real,
    "padic": verify_padic,
    "laurent": verify_laurent,
    "blocks": verify_blocks,
    "bc": verify_bc,
    "series": verify_series,
}
