"""Block statistics for doubly-exponential (or custom) index blocks.

For a block of integers the quantities of interest are its mass
S = sum psi(n) phi(n) / n, the exact measure B of the union of the
coprime arc systems over the block, the total pairwise overlap
Q = sum over ordered distinct pairs of lambda(E_m intersect E_n), and
the normalized overlap R = Q / S^2.  Exact computation is quadratic in
the block population, so a feasibility cap guards it; past the cap a
seeded Monte Carlo estimator stands in for B.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .circle import coprime_arcs, point_in_arcs, union_all
from .errors import FeasibilityError
from .numtheory import euler_phi
from .psi import PsiSpec

DEFAULT_PHI_CAP = 10**7
_MATERIALIZE_CAP = 10**6

# conservative rational upper bound for the 99% two-sided normal quantile
_Z99 = Fraction(2576, 1000)


@dataclass(frozen=True)
class BlockScheme:
    """Partition of the integers into consecutive blocks.

    canonical: block h (h >= 0) is [2^(2^h) + 1, 2^(2^(h+1))].
    custom: boundaries (N_0 < N_1 < ...) give block h = [N_(h-1)+1, N_h]
    for h in 1..len(boundaries)-1.
    """

    kind: str
    boundaries: tuple[int, ...] = ()

    @staticmethod
    def canonical() -> "BlockScheme":
        return BlockScheme(kind="canonical")

    @staticmethod
    def custom(boundaries) -> "BlockScheme":
        bs = tuple(int(b) for b in boundaries)
        if len(bs) < 2:
            raise ValueError("custom scheme needs at least two boundaries")
        if any(b < 1 for b in bs) or any(a >= b for a, b in zip(bs, bs[1:])):
            raise ValueError("boundaries must be strictly increasing positive integers")
        return BlockScheme(kind="custom", boundaries=bs)

    def block_range(self, h: int) -> tuple[int, int]:
        """Inclusive integer range of block h."""
        if self.kind == "canonical":
            if h < 0:
                raise ValueError("canonical block index must be >= 0")
            return (2 ** (2**h) + 1, 2 ** (2 ** (h + 1)))
        if not 1 <= h <= len(self.boundaries) - 1:
            raise ValueError(f"custom scheme has blocks 1..{len(self.boundaries) - 1}")
        return (self.boundaries[h - 1] + 1, self.boundaries[h])

    def block_index(self, n: int) -> int | None:
        """Index of the block containing n, or None if n precedes or
        exceeds every block."""
        if self.kind == "canonical":
            if n <= 2:
                return None
            h = 0
            while 2 ** (2 ** (h + 1)) < n:
                h += 1
            return h
        if n <= self.boundaries[0] or n > self.boundaries[-1]:
            return None
        for h in range(1, len(self.boundaries)):
            if n <= self.boundaries[h]:
                return h
        return None

    def descriptor(self) -> dict:
        if self.kind == "canonical":
            return {"kind": "canonical"}
        return {"kind": "custom", "boundaries": list(self.boundaries)}


def scheme_from_descriptor(desc) -> BlockScheme:
    kind = desc.get("kind", "canonical")
    if kind == "canonical":
        return BlockScheme.canonical()
    if kind == "custom":
        return BlockScheme.custom(desc["boundaries"])
    raise ValueError(f"unknown block scheme kind: {kind!r}")


def block_members(psi: PsiSpec, scheme: BlockScheme, h: int) -> list[int]:
    """Support members of psi inside block h, increasing."""
    lo, hi = scheme.block_range(h)
    return [n for n in psi.support if lo <= n <= hi]


def block_mass(psi: PsiSpec, scheme: BlockScheme, h: int) -> Fraction:
    """S_h: sum of psi(n) phi(n) / n over block h, exact."""
    return psi.mass(block_members(psi, scheme, h))


@dataclass(frozen=True)
class BlockStats:
    h: int
    s: Fraction
    b: Fraction
    q: Fraction | None
    r: Fraction | None
    exact: bool
    b_halfwidth: Fraction | None = None
    samples: int | None = None
    seed: int | None = None


def _check_exact_feasible(psi: PsiSpec, scheme: BlockScheme, h: int,
                          phi_cap: int) -> list[int]:
    members = block_members(psi, scheme, h)
    if scheme.kind == "canonical":
        if h <= 2:
            return members
        if h >= 4:
            raise FeasibilityError(
                f"canonical block {h} is never computed exactly; "
                "use block_stats_mc")
    work = sum(euler_phi(n) for n in members)
    if work > phi_cap:
        raise FeasibilityError(
            f"block {h} needs {work} arcs > cap {phi_cap}; use block_stats_mc")
    return members


def block_stats_exact(psi: PsiSpec, scheme: BlockScheme, h: int,
                      phi_cap: int = DEFAULT_PHI_CAP) -> BlockStats:
    """Exact S, B, Q, R for one block.

    Q sums ordered distinct pairs (both orders), matching the double
    sum over the block minus its diagonal.  R is None when S = 0.
    """
    members = _check_exact_feasible(psi, scheme, h, phi_cap)
    s = psi.mass(members)
    sets = {n: coprime_arcs(n, psi.value(n)) for n in members}
    b = union_all(list(sets.values())).measure()
    q = Fraction(0)
    live = [n for n in members if psi.value(n) != 0]
    for i, m in enumerate(live):
        for n in live[i + 1:]:
            q += 2 * sets[m].intersect(sets[n]).measure()
    r = (q / (s * s)) if s > 0 else None
    return BlockStats(h=h, s=s, b=b, q=q, r=r, exact=True)


def _sqrt_upper(f: Fraction) -> Fraction:
    """Rational upper bound for sqrt(f), f >= 0."""
    if f < 0:
        raise ValueError("negative operand")
    num, den = f.numerator, f.denominator
    return Fraction(isqrt(num * den) + 1, den)


def wilson_halfwidth(hits: int, samples: int) -> Fraction:
    """Rational half-width h such that [p_hat - h, p_hat + h] contains the
    99% Wilson score interval for a binomial proportion."""
    n = samples
    p = Fraction(hits, n)
    z2 = _Z99 * _Z99
    denom = 1 + z2 / n
    center = (p + z2 / (2 * n)) / denom
    rad = _Z99 * _sqrt_upper(p * (1 - p) / n + z2 / (4 * n * n)) / denom
    lo = max(center - rad, Fraction(0))
    hi = min(center + rad, Fraction(1))
    return max(p - lo, hi - p)


def block_stats_mc(psi: PsiSpec, scheme: BlockScheme, h: int,
                   samples: int, seed: int) -> BlockStats:
    """Monte Carlo stand-in for B on blocks too large for exact work.

    B is estimated as the hit fraction of uniform random points with
    denominator 2^64; each membership test is exact.  The reported
    half-width is a 99% Wilson bound.  S stays exact; Q and R are not
    estimated.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    members = [n for n in block_members(psi, scheme, h) if psi.value(n) != 0]
    s = psi.mass(members)
    rng = random.Random(seed)
    hits = 0
    two64 = 1 << 64
    values = [(n, psi.value(n)) for n in members]
    for _ in range(samples):
        x = Fraction(rng.getrandbits(64), two64)
        if any(point_in_arcs(n, v, x) for n, v in values):
            hits += 1
    return BlockStats(h=h, s=s, b=Fraction(hits, samples), q=None, r=None,
                      exact=False, b_halfwidth=wilson_halfwidth(hits, samples),
                      samples=samples, seed=seed)


def cauchy_schwarz_lower(s: Fraction, q: Fraction) -> Fraction:
    """s^2 / (s + q): the second-moment lower bound for the union measure
    of a block (valid once every arc radius is at most 1/2)."""
    s, q = Fraction(s), Fraction(q)
    if s < 0 or q < 0:
        raise ValueError("s and q must be non-negative")
    if s + q == 0:
        raise ValueError("s + q must be positive")
    return s * s / (s + q)


@dataclass(frozen=True)
class AssumptionCheck:
    a1: bool
    a2: bool
    a3: bool
    q_over_s: Fraction | None
    s: Fraction
    plain_sum: Fraction
    heavy_sum: Fraction


def check_assumptions(psi: PsiSpec, scheme: BlockScheme, h: int,
                      phi_cap: int = DEFAULT_PHI_CAP) -> AssumptionCheck:
    """Evaluate the three sufficient small-block conditions exactly.

    a1: sum psi phi / n <= 1/h      a2: sum psi <= 1/sqrt(h)
    a3: sum psi n / phi <= 1        (a2 compared via squaring)
    Also reports Q/S when S > 0 (requires exact feasibility).
    """
    if h < 1:
        raise ValueError("assumption thresholds need a block index h >= 1")
    members = block_members(psi, scheme, h)
    s = psi.mass(members)
    plain = sum((psi.value(n) for n in members), Fraction(0))
    heavy = sum((psi.value(n) * n / euler_phi(n) for n in members), Fraction(0))
    a1 = s * h <= 1
    a2 = plain * plain * h <= 1
    a3 = heavy <= 1
    q_over_s = None
    if s > 0:
        stats = block_stats_exact(psi, scheme, h, phi_cap=phi_cap)
        q_over_s = stats.q / s
    return AssumptionCheck(a1=a1, a2=a2, a3=a3, q_over_s=q_over_s,
                           s=s, plain_sum=plain, heavy_sum=heavy)


def cap_block_mass(psi: PsiSpec, scheme: BlockScheme) -> PsiSpec:
    """Per-block renormalization: on blocks whose mass S exceeds 1 divide
    the values by S, elsewhere keep them.  The result has every block
    mass at most 1, is pointwise dominated by psi, and is idempotent.
    Support members that precede or exceed every block pass through."""
    groups: dict[int | None, list[int]] = {}
    for n in psi.support:
        groups.setdefault(scheme.block_index(n), []).append(n)
    values = {}
    for h, ns in groups.items():
        if h is None:
            for n in ns:
                values[n] = psi.value(n)
            continue
        s = psi.mass(ns)
        scale = s if s > 1 else Fraction(1)
        for n in ns:
            values[n] = psi.value(n) / scale
    return PsiSpec(kind=f"blockcapped({psi.kind})", seed=psi.seed, values=values)
