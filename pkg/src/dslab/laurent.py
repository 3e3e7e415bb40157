"""Exact arithmetic over GF(q)[X] and cube-set measure algebra in the
field of formal Laurent series in 1/X.

Polynomials are coefficient tuples over a prime field; |f| = q^deg(f).
The unit ball L (series of negative degree) carries the Haar measure
with nu(L) = 1; an open ball of radius q^s inside L is exactly the set
of series agreeing with its center on the coefficients of X^-1..X^-t
(t = -s), so finite ball unions in L^d are finite sets of d-tuples of
coefficient prefixes.  All measures, unions, intersections and the
classical bounds built on them (coprime-tuple counts via the Moebius
divisor sum, the 3/16 and 1/2 mass lower bounds, the product and 256/9
overlap bounds, the shifted-cube overlap sum, and the q^d t^d union
scaling comparison) are computed exactly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product as iproduct
from typing import Iterable, Mapping

ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class Poly:
    """Polynomial over GF(q), coefficients ascending, no trailing zeros."""

    q: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("field size must be a prime >= 2")
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        if any(not 0 <= c < self.q for c in self.coeffs):
            raise ValueError("coefficients must lie in [0, q)")

    @staticmethod
    def make(q: int, coeffs: Iterable[int]) -> "Poly":
        cs = [c % q for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Poly(q, tuple(cs))

    @staticmethod
    def zero(q: int) -> "Poly":
        return Poly(q, ())

    @staticmethod
    def one(q: int) -> "Poly":
        return Poly(q, (1,))

    @staticmethod
    def x(q: int) -> "Poly":
        return Poly(q, (0, 1))

    @staticmethod
    def from_code(q: int, code: int) -> "Poly":
        cs = []
        while code:
            code, c = divmod(code, q)
            cs.append(c)
        return Poly(q, tuple(cs))

    def code(self) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.q + c
        return v

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def norm(self) -> int:
        """|P| = q^deg(P); requires P != 0."""
        if self.is_zero():
            raise ValueError("the zero polynomial has no norm")
        return self.q**self.degree

    def __add__(self, other: "Poly") -> "Poly":
        q = self._same_field(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly.make(q, [(x + y) % q for x, y in zip(a, b)])

    def __neg__(self) -> "Poly":
        return Poly.make(self.q, [(-c) % self.q for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        q = self._same_field(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(q)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % q
        return Poly.make(q, out)

    def shift(self, k: int) -> "Poly":
        """Multiply by X^k (k >= 0)."""
        if self.is_zero():
            return self
        return Poly(self.q, (0,) * k + self.coeffs)

    def scale(self, c: int) -> "Poly":
        return Poly.make(self.q, [c * a % self.q for a in self.coeffs])

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        q = self._same_field(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lc = pow(other.coeffs[-1], -1, q)
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c:
                f = c * inv_lc % q
                quot[i - dq] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] = (rem[i - dq + j] - f * b) % q
        return Poly.make(q, quot), Poly.make(q, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(pow(self.coeffs[-1], -1, self.q))

    def __pow__(self, e: int) -> "Poly":
        out = Poly.one(self.q)
        for _ in range(e):
            out = out * self
        return out

    def _same_field(self, other: "Poly") -> int:
        if self.q != other.q:
            raise ValueError("mixed field sizes")
        return self.q

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                parts.append(f"{head}X^{i}" if i > 1 else f"{head}X")
        return "+".join(parts)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (0 for gcd(0, 0))."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def gcd_many(polys: Iterable[Poly]) -> Poly:
    return reduce(poly_gcd, polys)


def all_polys(q: int, deg_below: int) -> list[Poly]:
    """All polynomials of degree < deg_below (q^deg_below of them,
    including 0)."""
    if deg_below < 0:
        raise ValueError("deg_below must be >= 0")
    count = q**deg_below
    if count > ENUMERATION_CAP:
        raise ValueError("enumeration too large")
    return [Poly.from_code(q, c) for c in range(count)]


def monic_polys(q: int, deg: int) -> list[Poly]:
    """All monic polynomials of exact degree deg."""
    if deg < 0:
        raise ValueError("degree must be >= 0")
    lead = q**deg
    return [Poly.from_code(q, lead + c) for c in range(lead)]


_IRRED_CACHE: dict[tuple[int, int], list[Poly]] = {}


def monic_irreducibles(q: int, deg: int) -> list[Poly]:
    """Monic irreducible polynomials of exact degree deg (trial division
    by lower-degree irreducibles)."""
    key = (q, deg)
    if key not in _IRRED_CACHE:
        if deg == 0:
            _IRRED_CACHE[key] = []
        else:
            lower = []
            for d in range(1, deg // 2 + 1):
                lower.extend(monic_irreducibles(q, d))
            out = []
            for cand in monic_polys(q, deg):
                if deg == 1 or all(not (cand % r).is_zero() for r in lower):
                    out.append(cand)
            _IRRED_CACHE[key] = out
    return _IRRED_CACHE[key]


def factor_poly(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factorization (unit dropped), degree-ordered."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    p = p.monic()
    out: list[tuple[Poly, int]] = []
    deg = 1
    while p.degree >= 1:
        if deg > p.degree // 2:
            out.append((p, 1))
            break
        found = False
        for r in monic_irreducibles(p.q, deg):
            if (p % r).is_zero():
                e = 0
                while (p % r).is_zero():
                    p = p // r
                    e += 1
                out.append((r, e))
                found = True
        if not found:
            deg += 1
    return out


def mobius_poly(p: Poly) -> int:
    """Moebius function on monic polynomials: 1 at degree 0, (-1)^k on
    squarefree products of k monic irreducibles, 0 otherwise."""
    if not p.is_monic():
        raise ValueError("Moebius function is defined on monic polynomials")
    if p.degree == 0:
        return 1
    factors = factor_poly(p)
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def monic_divisors(p: Poly) -> list[Poly]:
    """All monic divisors of a monic polynomial."""
    factors = factor_poly(p)
    divs = [Poly.one(p.q)]
    for r, e in factors:
        divs = [d * r**k if k else d for d in divs for k in range(e + 1)]
    return divs


def coprime_tuple_count(Q: Poly, d: int) -> int:
    """Theta(Q, d): the number of d-tuples P with max deg(P_i) < deg(Q)
    and gcd(P_1, ..., P_d, Q) = 1, via the Moebius divisor sum
    |Q|^d sum_{R | Q} mu(R) / |R|^d (only squarefree R contribute)."""
    if not Q.is_monic() or Q.degree < 1:
        raise ValueError("Q must be monic of degree >= 1")
    if d < 1:
        raise ValueError("d must be >= 1")
    q = Q.q
    distinct = [r for r, _ in factor_poly(Q)]
    total = 0
    for mask in range(1 << len(distinct)):
        deg_sum = sum(distinct[i].degree for i in range(len(distinct))
                      if mask >> i & 1)
        sign = -1 if bin(mask).count("1") % 2 else 1
        total += sign * q ** (d * (Q.degree - deg_sum))
    return total


def brute_coprime_tuple_count(Q: Poly, d: int) -> int:
    """Independent enumeration oracle for coprime_tuple_count."""
    q = Q.q
    cands = all_polys(q, Q.degree)
    if len(cands) ** d > ENUMERATION_CAP:
        raise ValueError("enumeration too large")
    count = 0
    for tup in iproduct(cands, repeat=d):
        if poly_gcd(gcd_many(tup), Q).degree == 0:
            count += 1
    return count


def q_power_floor_exp(q: int, r: Fraction) -> int:
    """Largest s with q^s <= r (r > 0)."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("need r > 0")
    s = 0
    if r >= 1:
        while Fraction(q) ** (s + 1) <= r:
            s += 1
    else:
        while Fraction(q) ** s > r:
            s -= 1
    return s


def q_power_ceil_exp(q: int, r: Fraction) -> int:
    """Smallest s with q^s >= r (r > 0)."""
    s = q_power_floor_exp(q, r)
    return s if Fraction(q) ** s == r else s + 1


def ball_measure(q: int, r: Fraction) -> Fraction:
    """nu(B(f, r)) for an open ball of radius r > 0: the measure is
    q^s for the smallest power q^s >= r, so r <= nu(B(f, r)) <= q r."""
    return Fraction(q) ** q_power_ceil_exp(q, r)


@dataclass(frozen=True)
class LaurentCubeSet:
    """Finite union of prefix cubes in L^d.

    Each element of `prefixes` is a d-tuple of base-q integer codes; a
    code encodes the coefficients of X^-1..X^-depth of one coordinate.
    Measure is |prefixes| * q^(-depth * d); refining to a deeper level
    multiplies the count by q^(d * extra) and preserves the measure.
    """

    q: int
    d: int
    depth: int
    prefixes: frozenset[tuple[int, ...]]

    @staticmethod
    def empty(q: int, d: int) -> "LaurentCubeSet":
        return LaurentCubeSet(q, d, 0, frozenset())

    @staticmethod
    def full(q: int, d: int) -> "LaurentCubeSet":
        return LaurentCubeSet(q, d, 0, frozenset({(0,) * d}))

    def measure(self) -> Fraction:
        return len(self.prefixes) * Fraction(1, self.q ** (self.depth * self.d))

    def is_empty(self) -> bool:
        return not self.prefixes

    def refine(self, depth: int) -> "LaurentCubeSet":
        if depth < self.depth:
            raise ValueError("can only refine to a deeper level")
        if depth == self.depth:
            return self
        extra = depth - self.depth
        step = self.q**self.depth
        exts = [t * step for t in range(self.q**extra)]
        if len(self.prefixes) * len(exts) ** self.d > ENUMERATION_CAP:
            raise ValueError("refinement too large")
        out = set()
        for tup in self.prefixes:
            for add in iproduct(exts, repeat=self.d):
                out.add(tuple(c + a for c, a in zip(tup, add)))
        return LaurentCubeSet(self.q, self.d, depth, frozenset(out))

    def _align(self, other: "LaurentCubeSet") -> tuple["LaurentCubeSet", "LaurentCubeSet"]:
        if self.q != other.q or self.d != other.d:
            raise ValueError("mismatched field size or dimension")
        depth = max(self.depth, other.depth)
        return self.refine(depth), other.refine(depth)

    def union(self, other: "LaurentCubeSet") -> "LaurentCubeSet":
        a, b = self._align(other)
        return LaurentCubeSet(a.q, a.d, a.depth, a.prefixes | b.prefixes)

    def intersect(self, other: "LaurentCubeSet") -> "LaurentCubeSet":
        a, b = self._align(other)
        return LaurentCubeSet(a.q, a.d, a.depth, a.prefixes & b.prefixes)

    def power(self, d: int) -> "LaurentCubeSet":
        """d-fold Cartesian power of a 1-dimensional set."""
        if self.d != 1:
            raise ValueError("power is defined for 1-dimensional sets")
        codes = sorted(t[0] for t in self.prefixes)
        if len(codes) ** d > ENUMERATION_CAP:
            raise ValueError("power too large")
        return LaurentCubeSet(self.q, d, self.depth,
                              frozenset(iproduct(codes, repeat=d)))


def cube_union_all(sets: Iterable[LaurentCubeSet]) -> LaurentCubeSet:
    sets = list(sets)
    if not sets:
        raise ValueError("need at least one set")
    out = sets[0]
    for s in sets[1:]:
        out = out.union(s)
    return out


def fraction_prefix_code(P: Poly, Q: Poly, depth: int) -> int:
    """Base-q code of the first `depth` Laurent coefficients of P/Q
    (deg P < deg Q, so P/Q lies in the unit ball)."""
    if P.degree >= Q.degree:
        raise ValueError("need deg P < deg Q")
    t = P.shift(depth) // Q
    q = Q.q
    code = 0
    for i in range(1, depth + 1):
        c = t.coeffs[depth - i] if depth - i <= t.degree else 0
        code += c * q ** (i - 1)
    return code


def _effective_radius_exponent(Q: Poly, psi_q: Fraction) -> int | None:
    """Depth of the prefix cubes for radius psi(Q)/|Q|, or None for an
    empty set (psi = 0).  psi values that are not powers of q are
    rounded down to one, with a warning."""
    psi_q = Fraction(psi_q)
    if psi_q < 0:
        raise ValueError("psi(Q) must be non-negative")
    if psi_q == 0:
        return None
    e = q_power_floor_exp(Q.q, psi_q)
    if Fraction(Q.q) ** e != psi_q:
        warnings.warn(
            f"psi(Q) = {psi_q} is not a power of {Q.q}; rounded down to "
            f"{Q.q}^{e} (ball radii are quantized to powers of q)",
            stacklevel=3)
    return e - Q.degree


def coprime_cubes(Q: Poly, psi_q: Fraction) -> LaurentCubeSet:
    """E_Q: the union over P with deg P < deg Q, gcd(P, Q) = 1 of the
    open balls of radius psi(Q)/|Q| around P/Q, inside the unit ball
    (1-dimensional)."""
    return _center_cubes(Q, psi_q, 1, joint=False)


def joint_coprime_cubes(Q: Poly, psi_q: Fraction, d: int) -> LaurentCubeSet:
    """H_Q: the union over d-tuples P with deg P_i < deg Q and
    gcd(P_1, ..., P_d, Q) = 1 of products of open balls of radius
    psi(Q)/|Q| around P_i/Q, inside L^d."""
    return _center_cubes(Q, psi_q, d, joint=True)


def _center_cubes(Q: Poly, psi_q: Fraction, d: int, joint: bool) -> LaurentCubeSet:
    if not Q.is_monic() or Q.degree < 1:
        raise ValueError("Q must be monic of degree >= 1")
    if d < 1:
        raise ValueError("d must be >= 1")
    q = Q.q
    s = _effective_radius_exponent(Q, psi_q)
    if s is None:
        return LaurentCubeSet.empty(q, d)
    if s >= 0:
        return LaurentCubeSet.full(q, d)
    depth = -s
    cands = all_polys(q, Q.degree)
    if joint:
        if len(cands) ** d > ENUMERATION_CAP:
            raise ValueError("enumeration too large")
        prefixes = {tuple(fraction_prefix_code(p, Q, depth) for p in tup)
                    for tup in iproduct(cands, repeat=d)
                    if poly_gcd(gcd_many(tup), Q).degree == 0}
    else:
        good = [p for p in cands if poly_gcd(p, Q).degree == 0]
        prefixes = {(fraction_prefix_code(p, Q, depth),) for p in good}
    return LaurentCubeSet(q, d, depth, frozenset(prefixes))


@dataclass(frozen=True)
class CubeMassCheck:
    measure: Fraction
    psi: Fraction
    bound_3_16: Fraction
    bound_3_16_ok: bool | None
    bound_half: Fraction | None
    bound_half_ok: bool | None


def cube_mass_check(Q: Poly, psi_q: Fraction, d: int) -> CubeMassCheck:
    """Exact nu(H_Q) against the classical lower bounds: 3/16 times
    min(psi^d, 1) for d >= 2, sharpened to 1/2 psi^d when q^(d-1) >= 3
    and psi < 1.  For d = 1 the bounds are reported but not asserted
    (highly composite Q push the coprime density below 3/16)."""
    psi_q = Fraction(psi_q)
    meas = joint_coprime_cubes(Q, psi_q, d).measure()
    b316 = Fraction(3, 16) * min(psi_q**d, Fraction(1))
    ok316 = (meas >= b316) if d >= 2 else None
    bhalf = okhalf = None
    if d >= 2 and Q.q ** (d - 1) >= 3 and psi_q < 1:
        bhalf = Fraction(1, 2) * psi_q**d
        okhalf = meas >= bhalf
    return CubeMassCheck(measure=meas, psi=psi_q, bound_3_16=b316,
                         bound_3_16_ok=ok316, bound_half=bhalf,
                         bound_half_ok=okhalf)


@dataclass(frozen=True)
class CubeOverlapResult:
    measure: Fraction
    product_bound: Fraction
    product_bound_ok: bool
    quasi_constant: Fraction | None
    quasi_bound_ok: bool | None


def cube_overlap(Q: Poly, Q2: Poly, psi: "PolyPsiSpec", d: int) -> CubeOverlapResult:
    """Exact nu(H_Q cap H_Q2) with the product bound psi(Q)^d psi(Q2)^d
    and, for d >= 2, the quasi-independence constant
    measure / (nu(H_Q) nu(H_Q2)) <= 256/9."""
    if Q == Q2:
        raise ValueError("overlap is studied only for distinct moduli")
    a = joint_coprime_cubes(Q, psi.value(Q), d)
    b = joint_coprime_cubes(Q2, psi.value(Q2), d)
    meas = a.intersect(b).measure()
    pbound = psi.value(Q) ** d * psi.value(Q2) ** d
    denom = a.measure() * b.measure()
    quasi = (meas / denom) if denom else None
    quasi_ok = None
    if d >= 2 and quasi is not None:
        quasi_ok = quasi <= Fraction(256, 9)
    return CubeOverlapResult(measure=meas, product_bound=pbound,
                             product_bound_ok=meas <= pbound,
                             quasi_constant=quasi, quasi_bound_ok=quasi_ok)


@dataclass(frozen=True)
class ShiftedOverlapResult:
    total: Fraction
    bound: Fraction
    holds: bool
    contributing: int


def shifted_cube_overlap_sum(q: int, d: int, z1: int, z2: int,
                             g) -> ShiftedOverlapResult:
    """sum over nonzero tuples P of nu_d(L_z1^d cap (L_z2^d + g P)),
    where L_z collects the series of degree < z.

    Only |g| = q^deg(g) matters; g may be a Poly or an integer degree.
    A tuple contributes iff every deg(g P_i) < max(z1, z2), which forces
    deg P_i < max(z1, z2) - deg g; each contributing tuple adds
    q^(d min(z1, z2)).  The comparison bound is
    nu(L_z1^d) nu(L_z2^d) / |g|^d.
    """
    if isinstance(g, Poly):
        if g.is_zero():
            raise ValueError("g must be nonzero")
        dg = g.degree
    else:
        dg = int(g)
    zmax, zmin = max(z1, z2), min(z1, z2)
    c = zmax - dg
    total = Fraction(0)
    contributing = 0
    if c > 0:
        if q ** (c * d) > ENUMERATION_CAP:
            raise ValueError("enumeration too large")
        per_tuple = Fraction(q) ** (zmin * d)
        for codes in iproduct(range(q**c), repeat=d):
            if all(v == 0 for v in codes):
                continue
            # every coordinate shift g P_i has degree < zmax here, so the
            # translated cube meets L_zmax^d in a full L_zmin-cube
            total += per_tuple
            contributing += 1
    bound = Fraction(q) ** (z1 * d) * Fraction(q) ** (z2 * d) / Fraction(q) ** (dg * d)
    return ShiftedOverlapResult(total=total, bound=bound, holds=total <= bound,
                                contributing=contributing)


@dataclass(frozen=True)
class PolyPsiSpec:
    """Non-negative rational values keyed by monic polynomials."""

    q: int
    values: Mapping[Poly, Fraction]

    def __post_init__(self):
        clean = {}
        for p, v in self.values.items():
            if p.q != self.q:
                raise ValueError("mixed field sizes")
            if not p.is_monic() or p.degree < 1:
                raise ValueError("support must be monic of degree >= 1")
            v = Fraction(v)
            if v < 0:
                raise ValueError("psi values must be non-negative")
            if v:
                clean[p] = v
        object.__setattr__(
            self, "values",
            dict(sorted(clean.items(), key=lambda kv: kv[0].sort_key())))

    def value(self, p: Poly) -> Fraction:
        return self.values.get(p, Fraction(0))

    @property
    def support(self) -> tuple[Poly, ...]:
        return tuple(self.values)

    def scaled(self, t: Fraction) -> "PolyPsiSpec":
        t = Fraction(t)
        return PolyPsiSpec(self.q, {p: t * v for p, v in self.values.items()})


@dataclass(frozen=True)
class CubeScalingResult:
    lhs: Fraction
    rhs: Fraction
    bound: Fraction
    holds: bool


def check_cube_union_scaling(psi: PolyPsiSpec, t: Fraction, d: int) -> CubeScalingResult:
    """Compare nu_d(union_Q E_Q(t psi)^d) against q^d t^d times
    nu_d(union_Q E_Q(psi)^d) for t >= 1.

    The scaled radii t psi(Q)/|Q| are rounded UP to powers of q, which
    for open balls in this ultrametric is the identical ball (|.| only
    takes power-of-q values), so the left side is exact.
    """
    t = Fraction(t)
    if t < 1:
        raise ValueError("scaling comparison requires t >= 1")
    if not psi.support:
        raise ValueError("psi must have non-empty support")
    q = psi.q
    base_sets = []
    scaled_sets = []
    for Q in psi.support:
        base_sets.append(coprime_cubes(Q, psi.value(Q)).power(d))
        radius = t * psi.value(Q) / Q.norm()
        s = q_power_ceil_exp(q, radius)
        scaled_sets.append(_cubes_at_radius_exponent(Q, s).power(d))
    rhs_meas = cube_union_all(base_sets).measure()
    lhs = cube_union_all(scaled_sets).measure()
    bound = Fraction(q) ** d * t**d * rhs_meas
    return CubeScalingResult(lhs=lhs, rhs=rhs_meas, bound=bound,
                             holds=lhs <= bound)


def _cubes_at_radius_exponent(Q: Poly, s: int) -> LaurentCubeSet:
    """E_Q with an explicit open-ball radius q^s (1-dimensional)."""
    q = Q.q
    if s >= 0:
        return LaurentCubeSet.full(q, 1)
    depth = -s
    good = [p for p in all_polys(q, Q.degree) if poly_gcd(p, Q).degree == 0]
    return LaurentCubeSet(q, 1, depth,
                          frozenset((fraction_prefix_code(p, Q, depth),)
                                    for p in good))
