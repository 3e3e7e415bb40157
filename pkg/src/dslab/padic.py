"""Exact ball arithmetic in the p-adic integers.

A closed ball of radius p^(-k) inside Z_p is exactly a residue class
mod p^k, so finite unions of balls are finite sets of (residue, level)
pairs.  Two balls either nest or are disjoint, which makes exact
measures, unions and intersections straightforward; the Haar measure
gives a level-k ball mass p^(-k) and mu(Z_p) = 1.

The main constructor realizes the coprime approximation neighborhoods:
for a denominator n the union over |a| <= n, gcd(a, n) = 1 of the
closed balls of radius psi(n)/n around a/n, intersected with Z_p.  When
p divides n every center a/n lies outside Z_p at distance p^(v_p(n)),
so the set is empty or all of Z_p depending on whether the radius
reaches that far.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .circle import coprime_arcs
from .psi import PsiSpec


def canonical_radius(p: int, r: Fraction) -> int:
    """The unique integer z with p^z <= r < p^(z+1); the closed ball of
    radius r equals the closed ball of radius p^z."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    z = 0
    if r >= 1:
        while Fraction(p) ** (z + 1) <= r:
            z += 1
    else:
        while Fraction(p) ** z > r:
            z -= 1
    return z


@dataclass(frozen=True)
class PadicSet:
    """Normalized finite union of balls in Z_p.

    classes holds (residue, level) pairs with 0 <= residue < p^level;
    no stored ball contains another, and complete sibling families are
    coalesced into their parent, so Z_p itself is the single pair
    (0, 0) and equal sets have equal representations.
    """

    p: int
    classes: frozenset[tuple[int, int]]

    @staticmethod
    def empty(p: int) -> "PadicSet":
        return PadicSet(p, frozenset())

    @staticmethod
    def whole(p: int) -> "PadicSet":
        return PadicSet(p, frozenset({(0, 0)}))

    @staticmethod
    def from_balls(p: int, balls) -> "PadicSet":
        """Normalize arbitrary (residue, level) balls."""
        if p < 2:
            raise ValueError("p must be a prime >= 2")
        by_level: dict[int, set[int]] = {}
        for r, k in balls:
            if k < 0:
                raise ValueError("ball level must be >= 0")
            by_level.setdefault(k, set()).add(r % p**k)
        # drop balls contained in a kept coarser ball
        kept: dict[int, set[int]] = {}
        for k in sorted(by_level):
            for r in by_level[k]:
                contained = any(r % p**kc in kept[kc] for kc in kept)
                if not contained:
                    kept.setdefault(k, set()).add(r)
        # coalesce complete sibling families into their parent
        changed = True
        while changed:
            changed = False
            for k in sorted(kept, reverse=True):
                if k == 0:
                    continue
                level = kept[k]
                parents: dict[int, int] = {}
                for r in level:
                    parents[r % p ** (k - 1)] = parents.get(r % p ** (k - 1), 0) + 1
                full = [q for q, cnt in parents.items() if cnt == p]
                if full:
                    for q in full:
                        for j in range(p):
                            level.discard(q + j * p ** (k - 1))
                        kept.setdefault(k - 1, set()).add(q)
                    if not level:
                        del kept[k]
                    changed = True
        return PadicSet(p, frozenset((r, k) for k, rs in kept.items() for r in rs))

    def measure(self) -> Fraction:
        return sum((Fraction(1, self.p**k) for _, k in self.classes), Fraction(0))

    def is_empty(self) -> bool:
        return not self.classes

    def is_whole(self) -> bool:
        return self.classes == frozenset({(0, 0)})

    def contains_ball(self, r: int, k: int) -> bool:
        """Does some stored ball contain the ball (r, k)?"""
        p = self.p
        return any(kc <= k and r % p**kc == rc for rc, kc in self.classes)

    def intersect(self, other: "PadicSet") -> "PadicSet":
        if self.p != other.p:
            raise ValueError("mismatched primes")
        out = []
        for r, k in self.classes:
            if other.contains_ball(r, k):
                out.append((r, k))
        for r, k in other.classes:
            if self.contains_ball(r, k):
                out.append((r, k))
        return PadicSet.from_balls(self.p, out)

    def union(self, other: "PadicSet") -> "PadicSet":
        if self.p != other.p:
            raise ValueError("mismatched primes")
        return PadicSet.from_balls(self.p, list(self.classes) + list(other.classes))


def padic_union_all(sets) -> PadicSet:
    sets = list(sets)
    if not sets:
        raise ValueError("need at least one set")
    p = sets[0].p
    balls = []
    for s in sets:
        if s.p != p:
            raise ValueError("mismatched primes")
        balls.extend(s.classes)
    return PadicSet.from_balls(p, balls)


def _v_p(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def coprime_balls(p: int, n: int, psi_n: Fraction) -> PadicSet:
    """K_n: union over |a| <= n with gcd(a, n) = 1 of the closed balls of
    radius psi(n)/n around a/n, inside Z_p.

    Radius 0 yields the empty set (points are null).  When p | n the
    result is empty or all of Z_p; otherwise the centers map to residues
    a * n^(-1) mod p^k at the canonical level k.
    """
    if n < 1:
        raise ValueError("n must be positive")
    psi_n = Fraction(psi_n)
    if psi_n < 0:
        raise ValueError("psi(n) must be non-negative")
    if psi_n == 0:
        return PadicSet.empty(p)
    rho = psi_n / n
    v = _v_p(n, p)
    if v > 0:
        # every admissible center is at distance p^v from Z_p
        return PadicSet.whole(p) if rho >= p**v else PadicSet.empty(p)
    z = canonical_radius(p, rho)
    if z >= 0:
        return PadicSet.whole(p)
    k = -z
    mod = p**k
    inv = pow(n, -1, mod)
    balls = set()
    for a in range(-n, n + 1):
        if gcd(a, n) == 1:
            balls.add(((a * inv) % mod, k))
    return PadicSet.from_balls(p, balls)


def coprime_ball_union(p: int, psi: PsiSpec) -> PadicSet:
    """Union of K_n over the support of psi."""
    out = PadicSet.empty(p)
    for n in psi.support:
        out = out.union(coprime_balls(p, n, psi.value(n)))
    return out


@dataclass(frozen=True)
class PadicScalingResult:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    equality: bool
    pt_bound_ok: bool


def check_ball_union_scaling(p: int, psi: PsiSpec, t: Fraction) -> PadicScalingResult:
    """Compare mu(union K_n(t psi)) against t * mu(union K_n(psi)), t >= 1.

    Ball measures are quantized to powers of p, so enlarging a radius by
    t multiplies a ball's mass by p^(z(t r) - z(r)), which is at most t
    whenever the radii are themselves powers of p (more generally when
    no radius straddles a power boundary), but can reach the next power
    of p above t for generic rational radii.  `holds` reports the sharp
    comparison lhs <= t * base; `pt_bound_ok` reports the quantization-
    safe bound lhs <= p * t * base, which is a theorem for every input.
    Equality cases (radii scaling across exact powers of p) are flagged.
    """
    t = Fraction(t)
    if t < 1:
        raise ValueError("scaling comparison requires t >= 1")
    lhs = coprime_ball_union(p, psi.scaled(t)).measure()
    base = coprime_ball_union(p, psi).measure()
    rhs = t * base
    return PadicScalingResult(lhs=lhs, rhs=rhs, holds=lhs <= rhs,
                              equality=lhs == rhs,
                              pt_bound_ok=lhs <= p * rhs)


def admissible_random_psi(p: int, seed: int, count: int = 6,
                          n_max: int = 60, j_extra: int = 3) -> PsiSpec:
    """Seeded random finite-support psi whose radii psi(n)/n are negative
    powers of p (the p-adically natural family; rounding generic values
    down to this family changes nothing on the p-adic side).  Indices
    divisible by p are avoided so the ball systems are non-degenerate.
    """
    import random as _random

    rng = _random.Random(seed)
    values = {}
    for _ in range(count):
        n = rng.randint(2, n_max)
        if n % p == 0:
            n += 1
            if n % p == 0 or n > n_max:
                continue
        j_min = 0
        while Fraction(n, p**j_min) > 1:
            j_min += 1
        j = j_min + rng.randint(0, j_extra)
        values[n] = Fraction(n, p**j)
    return PsiSpec(kind="padic-admissible", seed=seed, values=values)


def is_admissible_radius(p: int, ratio: Fraction) -> bool:
    """Is psi(n)/n in {0, 1, p^-1, p^-2, ...}?"""
    ratio = Fraction(ratio)
    if ratio == 0 or ratio == 1:
        return True
    if ratio.numerator != 1:
        return False
    den = ratio.denominator
    while den % p == 0:
        den //= p
    return den == 1


@dataclass(frozen=True)
class OverlapChainResult:
    lower: Fraction
    mid: Fraction
    upper: Fraction
    chain_ok: bool


def overlap_chain(p: int, m: int, n: int, psi: PsiSpec) -> OverlapChainResult:
    """Sandwich the p-adic pair overlap between circle pair overlaps:

    lambda(E_m(psi/2) cap E_n(psi/2)) <= mu(K_m(psi) cap K_n(psi))
                                      <= 3/2 lambda(E_m(2psi) cap E_n(2psi)).

    Hypotheses checked and named on failure: p does not divide m or n,
    psi(k)/k is 0, 1 or a negative power of p, and psi(k) < 1/4, for
    k in {m, n}.
    """
    if m % p == 0:
        raise ValueError(f"hypothesis failed: p = {p} divides m = {m}")
    if n % p == 0:
        raise ValueError(f"hypothesis failed: p = {p} divides n = {n}")
    for k in (m, n):
        val = psi.value(k)
        if not is_admissible_radius(p, val / k):
            raise ValueError(
                f"hypothesis failed: psi({k})/{k} = {val / k} is not in "
                f"{{0, 1, {p}^-1, {p}^-2, ...}}")
        if not val < Fraction(1, 4):
            raise ValueError(f"hypothesis failed: psi({k}) = {val} is not < 1/4")
    half = [coprime_arcs(k, psi.value(k) / 2) for k in (m, n)]
    lower = half[0].intersect(half[1]).measure()
    mid = coprime_balls(p, m, psi.value(m)).intersect(
        coprime_balls(p, n, psi.value(n))).measure()
    double = [coprime_arcs(k, 2 * psi.value(k)) for k in (m, n)]
    upper = Fraction(3, 2) * double[0].intersect(double[1]).measure()
    return OverlapChainResult(lower=lower, mid=mid, upper=upper,
                              chain_ok=lower <= mid <= upper)
