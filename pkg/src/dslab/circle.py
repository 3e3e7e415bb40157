"""Exact interval-set algebra on the circle R/Z.

A CircleSet is a finite union of open arcs with rational endpoints,
normalized to a canonical form: arcs are stored as integer endpoint
pairs over one common denominator, sorted, pairwise disjoint, with
touching arcs merged (a single shared endpoint is a null set) and any
arc crossing 0 split at 0.  The denominator is reduced by the common
gcd, so equal sets have identical representations and `==` is set
equality up to null sets.

The central constructor is `coprime_arcs(n, psi_n)`, the union of open
arcs of radius psi(n)/n around the reduced fractions m/n.  On top of it
sit exact pairwise overlap measures, exact unions over a finite psi,
the scaling comparison for unions, and the membership hit counter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .numtheory import coprime_residues, euler_phi, pair_params
from .psi import PsiSpec, ZERO, HALF


@dataclass(frozen=True)
class CircleSet:
    """Canonical disjoint union of open arcs on R/Z.

    ivs holds integer pairs (l, r) with 0 <= l < r <= den; the arc is
    (l/den, r/den).  The full circle is ((0, 1), den=1), the empty set
    ((), den=1).
    """

    den: int
    ivs: tuple[tuple[int, int], ...]

    @staticmethod
    def empty() -> "CircleSet":
        return _EMPTY

    @staticmethod
    def full() -> "CircleSet":
        return _FULL

    @staticmethod
    def from_scaled(den: int, raw: list) -> "CircleSet":
        """Normalize raw integer arcs (l, r) over den; l may be any
        integer, arcs may overlap or be unsorted. Arcs of length >= den
        cover everything."""
        if den < 1:
            raise ValueError("denominator must be positive")
        pieces = []
        for l, r in raw:
            length = r - l
            if length <= 0:
                continue
            if length >= den:
                return _FULL
            l %= den
            r = l + length
            if r <= den:
                pieces.append((l, r))
            else:
                pieces.append((l, den))
                pieces.append((0, r - den))
        return CircleSet._merge(den, pieces)

    @staticmethod
    def _merge(den: int, pieces: list) -> "CircleSet":
        if not pieces:
            return _EMPTY
        if any(pieces[i][0] > pieces[i + 1][0] for i in range(len(pieces) - 1)):
            pieces.sort()
        out = []
        cl, cr = pieces[0]
        for l, r in pieces[1:]:
            if l <= cr:
                if r > cr:
                    cr = r
            else:
                out.append((cl, cr))
                cl, cr = l, r
        out.append((cl, cr))
        if len(out) == 1 and out[0] == (0, den):
            return _FULL
        g = den
        for l, r in out:
            g = gcd(g, gcd(l, r))
            if g == 1:
                break
        if g > 1:
            den //= g
            out = [(l // g, r // g) for l, r in out]
        return CircleSet(den, tuple(out))

    @staticmethod
    def from_fractions(arcs: Iterable[tuple[Fraction, Fraction]]) -> "CircleSet":
        """Build from (left, right) rational pairs, interpreted mod 1."""
        arcs = [(Fraction(l), Fraction(r)) for l, r in arcs]
        if not arcs:
            return _EMPTY
        den = 1
        for l, r in arcs:
            den = lcm(den, lcm(l.denominator, r.denominator))
        raw = [(int(l * den), int(r * den)) for l, r in arcs]
        return CircleSet.from_scaled(den, raw)

    def measure(self) -> Fraction:
        return Fraction(sum(r - l for l, r in self.ivs), self.den)

    def is_empty(self) -> bool:
        return not self.ivs

    def is_full(self) -> bool:
        return self.ivs == ((0, 1),) and self.den == 1

    def intervals(self) -> tuple[tuple[Fraction, Fraction], ...]:
        d = self.den
        return tuple((Fraction(l, d), Fraction(r, d)) for l, r in self.ivs)

    def rescaled(self, den: int) -> list:
        """Integer arcs over the given common denominator (den multiple
        of self.den)."""
        f = den // self.den
        return [(l * f, r * f) for l, r in self.ivs]

    def union(self, other: "CircleSet") -> "CircleSet":
        return union_all([self, other])

    def intersect(self, other: "CircleSet") -> "CircleSet":
        if self.is_empty() or other.is_empty():
            return _EMPTY
        if self.is_full():
            return other
        if other.is_full():
            return self
        den = lcm(self.den, other.den)
        a = self.rescaled(den)
        b = other.rescaled(den)
        out = []
        i = j = 0
        while i < len(a) and j < len(b):
            l = a[i][0] if a[i][0] > b[j][0] else b[j][0]
            r = a[i][1] if a[i][1] < b[j][1] else b[j][1]
            if l < r:
                out.append((l, r))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return CircleSet._merge(den, out)

    def contains(self, x: Fraction) -> bool:
        """Membership in the canonical representation.  Exact for points
        interior to a stored arc; the point 0 counts as inside when the
        set wraps through it (the canonical cut at 0 is not a boundary)."""
        x = Fraction(x) % 1
        num = x.numerator * self.den
        d = x.denominator
        if num == 0:
            return bool(self.ivs) and self.ivs[0][0] == 0 \
                and self.ivs[-1][1] == self.den
        for l, r in self.ivs:
            if l * d < num < r * d:
                return True
        return False


_EMPTY = CircleSet(1, ())
_FULL = CircleSet(1, ((0, 1),))


def union_all(sets: Sequence[CircleSet]) -> CircleSet:
    """Exact union of many CircleSets by a single sorted sweep."""
    sets = [s for s in sets if not s.is_empty()]
    if not sets:
        return _EMPTY
    if any(s.is_full() for s in sets):
        return _FULL
    den = 1
    for s in sets:
        den = lcm(den, s.den)
    pieces = []
    for s in sets:
        pieces.extend(s.rescaled(den))
    return CircleSet._merge(den, pieces)


def coprime_arcs(n: int, psi_n: Fraction) -> CircleSet:
    """E_n: union over m in [1, n] coprime to n of the open arcs
    ((m - psi_n)/n, (m + psi_n)/n) mod 1.

    psi_n = 0 gives the empty set; once the arcs cover the circle the
    result collapses to the canonical full set.
    """
    if n < 1:
        raise ValueError("n must be positive")
    psi_n = Fraction(psi_n)
    if psi_n < 0:
        raise ValueError("psi(n) must be non-negative")
    if psi_n == 0:
        return _EMPTY
    pn, pd = psi_n.numerator, psi_n.denominator
    den = n * pd
    if 2 * pn >= den:
        return _FULL
    raw = []
    for m in coprime_residues(n):
        c = m * pd
        raw.append((c - pn, c + pn))
    return CircleSet.from_scaled(den, raw)


def arc_measure_identity(n: int, psi_n: Fraction) -> Fraction:
    """2 psi(n) phi(n) / n, the exact measure of E_n when psi(n) <= 1/2."""
    return 2 * Fraction(psi_n) * euler_phi(n) / n


@dataclass(frozen=True)
class OverlapResult:
    """Outcome of an exact pairwise overlap computation."""

    measure: Fraction
    ds_bound_ok: bool
    empty_by_d: bool
    pv_ratio: Fraction | None
    params_d: Fraction
    params_b: int
    params_p: Fraction


def arc_overlap(m: int, n: int, psi: PsiSpec) -> OverlapResult:
    """Exact lambda(E_m intersect E_n) with the classical checks.

    ds_bound_ok asserts the Duffin-Schaeffer estimate
    measure <= 8 psi(m) psi(n); empty_by_d asserts that D(m, n) < 1/2
    forces an exactly empty intersection; pv_ratio reports
    measure / (lambda(E_m) lambda(E_n) P(m, n)) when defined (the
    Strauch / Pollington-Vaughan comparison; no constant is asserted).
    """
    if m == n:
        raise ValueError("overlap is studied only for m != n")
    if m < 2 or n < 2:
        raise ValueError("overlap requires m, n >= 2")
    pm, pn = psi.value(m), psi.value(n)
    em = coprime_arcs(m, pm)
    en = coprime_arcs(n, pn)
    inter = em.intersect(en)
    meas = inter.measure()
    params = pair_params(m, n, pm, pn)
    ds_ok = meas <= 8 * pm * pn
    empty_by_d = (params.d >= HALF) or (meas == 0)
    lm, ln = em.measure(), en.measure()
    denom = lm * ln * params.p_product
    ratio = (meas / denom) if denom != 0 else None
    return OverlapResult(measure=meas, ds_bound_ok=ds_ok, empty_by_d=empty_by_d,
                         pv_ratio=ratio, params_d=params.d, params_b=params.b,
                         params_p=params.p_product)


def arc_union(psi: PsiSpec, lo: int | None = None, hi: int | None = None) -> CircleSet:
    """Z(psi): the exact union of E_n over the (finite) support of psi,
    optionally restricted to lo <= n <= hi."""
    sets = []
    for n in psi.support:
        if lo is not None and n < lo:
            continue
        if hi is not None and n > hi:
            continue
        sets.append(coprime_arcs(n, psi.value(n)))
    return union_all(sets)


@dataclass(frozen=True)
class ScalingResult:
    lhs: Fraction
    rhs: Fraction
    holds: bool


def check_union_scaling(psi: PsiSpec, t: Fraction) -> ScalingResult:
    """Compare lambda(Z(t psi)) against t * lambda(Z(psi)) for t >= 1.

    The inequality lhs <= rhs is a theorem (scaling an open arc about
    its center multiplies each maximal component's length by at most t);
    this builds both unions exactly and checks it.
    """
    t = Fraction(t)
    if t < 1:
        raise ValueError("scaling comparison requires t >= 1")
    lhs = arc_union(psi.scaled(t)).measure()
    rhs = t * arc_union(psi).measure()
    return ScalingResult(lhs=lhs, rhs=rhs, holds=lhs <= rhs)


def point_in_arcs(n: int, psi_n: Fraction, x: Fraction) -> bool:
    """Exact test of x in E_n without materializing the arc system.

    Checks the integers m with |n x - m| < psi(n) (for psi <= 1/2 only
    the nearest integer can qualify) and accepts when one of them maps
    to a residue coprime to n.
    """
    psi_n = Fraction(psi_n)
    if psi_n <= 0:
        return False
    x = Fraction(x)
    xn, xd = x.numerator, x.denominator
    pn, pd = psi_n.numerator, psi_n.denominator
    # |x - m/n| < psi/n  <=>  |x.num * n - m * x.den| * psi.den < psi.num * x.den
    t = xn * n
    m0 = (2 * t + xd) // (2 * xd)  # nearest integer to t / xd
    rhs = pn * xd
    width = pn // pd + 1
    for m in range(m0 - width, m0 + width + 1):
        if abs(t - m * xd) * pd < rhs:
            mm = m % n
            if mm == 0:
                mm = n
            if gcd(mm, n) == 1:
                return True
    return False


def hit_count(N: int, x: Fraction, psi: PsiSpec) -> int:
    """M(N, x): the number of n <= N with x in E_n(psi)."""
    if N < 1:
        return 0
    x = Fraction(x)
    count = 0
    for n in psi.support:
        if n > N:
            break
        if point_in_arcs(n, psi.value(n), x):
            count += 1
    return count
