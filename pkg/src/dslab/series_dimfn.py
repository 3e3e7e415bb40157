"""Series rate transforms and dimension-function constructions.

Two classical transforms: a divergent non-negative series (b_n) stays
divergent after multiplication by y_n = 1/(sum_{k<=n} (b_k + 1/k^2)),
and a convergent one stays convergent after multiplication by
x_n = 1/sqrt(sum_{k>=n} (a_k + 1/k^2)); the increments of x can be
clamped to 1 through z_1 = x_1, z_{n+1} = z_n + min(1, x_{n+1} - x_n).
The y_n are exact rationals; the x_n involve an infinite tail and are
returned as certified enclosures (the 1/k^2 tail beyond the data is
bracketed by its integral bounds 1/(N+1) <= tail <= 1/N).

Dimension functions are assembled from a monotone node polyline g:
either f(r) = r * g(max(1, -1 - log r)) for an increasing g with
g(1) = 1 and inter-node slope at most 1, so that f(r)/r grows without
bound as r -> 0; or f(r) = r * g(max(r^(-1/2), 1)) for a decreasing
positive g, so that f(r)/r -> 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .enclosure import Enc, enc_log, enc_sqrt

ZERO = Fraction(0)
ONE = Fraction(1)


def slow_divergent_transform(b: Sequence) -> list[Fraction]:
    """y_n = 1 / sum_{k=1}^n (b_k + 1/k^2), exact and strictly decreasing."""
    bs = [Fraction(x) for x in b]
    if not bs:
        raise ValueError("need a non-empty prefix")
    if any(x < 0 for x in bs):
        raise ValueError("series terms must be non-negative")
    ys = []
    acc = ZERO
    for k, bk in enumerate(bs, start=1):
        acc += bk + Fraction(1, k * k)
        ys.append(1 / acc)
    return ys


def weighted_sum_lower(b: Sequence, ys: Sequence[Fraction],
                       bits: int = 64) -> Fraction:
    """Certified rational lower bound for sum b_k y_k.

    Each term is floored to granularity 2^-bits before summing, so the
    result is exact, cheap to accumulate (one shared power-of-two
    denominator), and never exceeds the true sum.  The shortfall is
    below len(b) * 2^-bits.  The fully reduced exact sum is avoided on
    purpose: its denominator grows multiplicatively across terms and
    becomes astronomically large already for a few thousand terms.
    """
    scale = 1 << bits
    total = 0
    for bk, yk in zip(b, ys):
        t = Fraction(bk) * yk
        total += (t.numerator * scale) // t.denominator
    return Fraction(total, scale)


def threshold_crossing(b: Sequence, threshold: Fraction,
                       bits: int = 64) -> int | None:
    """Smallest n with a certified sum_{k<=n} b_k y_k > threshold, or
    None if the data prefix never crosses it."""
    ys = slow_divergent_transform(b)
    scale = 1 << bits
    goal = Fraction(threshold)
    total = 0
    for n, (bk, yk) in enumerate(zip((Fraction(x) for x in b), ys), start=1):
        t = bk * yk
        total += (t.numerator * scale) // t.denominator
        if Fraction(total, scale) > goal:
            return n
    return None


@dataclass(frozen=True)
class AcceleratedSeries:
    """x enclosures, clamped z enclosures, and the exact head sums C_n
    with T_n = C_n + tail (the shared tail interval certifies that the
    true x_n strictly increase: C_n strictly decreases)."""

    x: list[Enc]
    z: list[Enc]
    heads: list[Fraction]
    tail: Enc


def accelerate_convergent_transform(a: Sequence,
                                    tail_upper: Fraction = ZERO) -> AcceleratedSeries:
    """x_n = 1/sqrt(sum_{k>=n} (a_k + 1/k^2)) over the data prefix.

    `tail_upper` is a certified upper bound for sum_{k>N} a_k beyond the
    given prefix (0 for finitely supported series); the 1/k^2 part of
    the tail is bracketed by [1/(N+1), 1/N].
    """
    xs_data = [Fraction(v) for v in a]
    if not xs_data:
        raise ValueError("need a non-empty prefix")
    if any(v < 0 for v in xs_data):
        raise ValueError("series terms must be non-negative")
    tail_upper = Fraction(tail_upper)
    if tail_upper < 0:
        raise ValueError("tail bound must be non-negative")
    n_max = len(xs_data)
    tail = Enc(Fraction(1, n_max + 1), tail_upper + Fraction(1, n_max))

    heads = []
    acc = ZERO
    for k in range(n_max, 0, -1):
        acc += xs_data[k - 1] + Fraction(1, k * k)
        heads.append(acc)
    heads.reverse()

    xs = []
    for c in heads:
        t = tail + Enc.exact(c)
        xs.append(enc_sqrt(t).inverse().rounded())

    zs = [xs[0]]
    for prev, cur in zip(xs, xs[1:]):
        inc = (cur - prev).min_with(ONE)
        zs.append((zs[-1] + inc).rounded())
    return AcceleratedSeries(x=xs, z=zs, heads=heads, tail=tail)


@dataclass(frozen=True)
class StepFn:
    """Monotone piecewise-linear function through integer nodes.

    nodes are (index, value) with strictly increasing integer indices
    and exact rational values; between nodes the function interpolates
    linearly.  `increasing` records (and is checked against) the
    monotone direction.
    """

    nodes: tuple[tuple[int, Fraction], ...]
    increasing: bool

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("at least one node required")
        idx = [i for i, _ in self.nodes]
        if any(i < 1 for i in idx) or any(x >= y for x, y in zip(idx, idx[1:])):
            raise ValueError("node indices must be strictly increasing positive integers")
        vals = [v for _, v in self.nodes]
        pairs = list(zip(vals, vals[1:]))
        if self.increasing and any(x > y for x, y in pairs):
            raise ValueError("nodes are not non-decreasing")
        if not self.increasing and any(x < y for x, y in pairs):
            raise ValueError("nodes are not non-increasing")

    @staticmethod
    def from_pairs(pairs, increasing: bool) -> "StepFn":
        return StepFn(tuple((int(i), Fraction(v)) for i, v in pairs),
                      increasing=increasing)

    @property
    def first_index(self) -> int:
        return self.nodes[0][0]

    @property
    def last_index(self) -> int:
        return self.nodes[-1][0]

    def _tail_slope(self) -> Fraction:
        """Per-unit slope used beyond the last node (clamped to 1)."""
        if len(self.nodes) < 2:
            return ONE if self.increasing else ZERO
        (i0, v0), (i1, v1) = self.nodes[-2], self.nodes[-1]
        slope = (v1 - v0) / (i1 - i0)
        return min(slope, ONE)

    def value_at(self, t: Fraction, extend: bool = False) -> Fraction:
        """Exact value at a rational argument within the node range.

        extend=True continues past the last node with the clamped tail
        slope (only meaningful for the increasing flavor)."""
        t = Fraction(t)
        if t < self.first_index:
            raise ValueError(f"argument {t} precedes the first node")
        nodes = self.nodes
        if t > nodes[-1][0]:
            if not extend:
                raise ValueError(f"argument {t} exceeds the last node "
                                 f"{nodes[-1][0]}")
            i1, v1 = nodes[-1]
            return v1 + self._tail_slope() * (t - i1)
        lo, hi = 0, len(nodes) - 1
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if nodes[mid][0] <= t:
                lo = mid
            else:
                hi = mid
        (i0, v0), (i1, v1) = nodes[lo], nodes[hi]
        if t == i0:
            return v0
        if t >= i1:
            return v1
        return v0 + (v1 - v0) * (t - i0) / (i1 - i0)

    def value_over(self, arg: Enc, extend: bool = False) -> Enc:
        """Enclosure of the value over an argument enclosure; exact
        endpoint evaluation plus monotonicity."""
        a = self.value_at(arg.lo, extend=extend)
        b = self.value_at(arg.hi, extend=extend)
        return Enc(min(a, b), max(a, b))


@dataclass(frozen=True)
class DimFn:
    """Dimension-function construction from a node polyline.

    mode "log": f(r) = r * g(max(1, -1 - log r)); needs increasing g
    with g(1) = 1 and inter-node slope at most 1.
    mode "sqrt": f(r) = r * g(max(r^(-1/2), 1)); needs decreasing
    positive g (decreasing to 0 in the limit, never evaluated at
    infinity).
    """

    mode: str
    g: StepFn

    def __post_init__(self):
        if self.mode not in ("log", "sqrt"):
            raise ValueError("mode must be 'log' or 'sqrt'")
        if self.mode == "log":
            if not self.g.increasing:
                raise ValueError("the log construction needs an increasing g")
            if self.g.first_index != 1 or self.g.nodes[0][1] != 1:
                raise ValueError("the log construction requires g(1) = 1")
            for (i0, v0), (i1, v1) in zip(self.g.nodes, self.g.nodes[1:]):
                if v1 - v0 > i1 - i0:
                    raise ValueError("g must grow with slope at most 1")
        else:
            if self.g.increasing:
                raise ValueError("the sqrt construction needs a decreasing g")
            if self.g.nodes[-1][1] < 0:
                raise ValueError("g must stay non-negative")


def dimfn_eval(f: DimFn, r) -> Enc:
    """Certified enclosure of f(r) for rational (or enclosed) 0 < r <= 1."""
    r_enc = r if isinstance(r, Enc) else Enc.exact(Fraction(r))
    if r_enc.lo <= 0:
        raise ValueError("r must be positive")
    if r_enc.hi > 1:
        raise ValueError("r must be at most 1")
    if f.mode == "log":
        arg = (-enc_log(r_enc) - 1).max_with(ONE)
        g_val = f.g.value_over(arg, extend=True)
    else:
        arg = enc_sqrt(r_enc).inverse().max_with(ONE)
        g_val = f.g.value_over(arg, extend=False)
    return r_enc * g_val


@dataclass(frozen=True)
class GridCheck:
    monotone_ok: bool
    ratio_ok: bool
    values: list[Enc]
    ratios: list[Enc]


def check_dimfn_grid(f: DimFn, i_max: int, base: int = 2) -> GridCheck:
    """Verify on the grid r = base^(-i), i = 0..i_max, that f is
    non-decreasing in r and that f(r)/r moves in the direction the
    construction promises (up for "log", down for "sqrt"), all via
    certified comparisons."""
    values = []
    ratios = []
    for i in range(i_max + 1):
        r = Fraction(1, base**i)
        v = dimfn_eval(f, r)
        values.append(v)
        ratios.append(v * Enc.exact(Fraction(base**i)))
    monotone_ok = all(_certified_le(values[i + 1], values[i])
                      for i in range(i_max))
    if f.mode == "log":
        ratio_ok = all(_certified_le(ratios[i], ratios[i + 1])
                       for i in range(i_max))
    else:
        ratio_ok = all(_certified_le(ratios[i + 1], ratios[i])
                       for i in range(i_max))
    return GridCheck(monotone_ok=monotone_ok, ratio_ok=ratio_ok,
                     values=values, ratios=ratios)


def _certified_le(a: Enc, b: Enc) -> bool:
    """a <= b certified: either strictly separated enclosures or equal
    exact points."""
    if a.hi <= b.lo:
        return True
    return a.lo == a.hi == b.lo == b.hi
