"""Certified enclosures for transcendental quantities.

An Enc is a closed interval with exact rational endpoints that is
guaranteed to contain the real value it stands for.  Field operations
between enclosures are exact interval arithmetic in Q (no rounding at
all); only transcendental steps (log, exp, sqrt) go through mpmath's
outward-rounded interval context, and their binary-rational endpoints
are recovered exactly.

Comparisons that a fixed precision cannot decide are retried with the
working precision doubled, up to a hard cap of 1024 bits; past the cap
an UndecidedBoundaryError is raised rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import iv

from .errors import UndecidedBoundaryError

DEFAULT_PREC = 128
PREC_CAP = 1024

_ESCALATION = (DEFAULT_PREC, 256, 512, PREC_CAP)


def _tuple_to_fraction(t) -> Fraction:
    sign, man, exp, bc = t
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise ValueError("non-finite interval endpoint")
    man = int(man)
    v = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << (-exp))
    return -v if sign else v


@dataclass(frozen=True)
class Enc:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure [{self.lo}, {self.hi}]")

    @staticmethod
    def exact(x) -> "Enc":
        x = Fraction(x)
        return Enc(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Enc") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        o = _as_enc(other)
        return Enc(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Enc(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_enc(other))

    def __rsub__(self, other):
        return _as_enc(other) + (-self)

    def __mul__(self, other):
        o = _as_enc(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enc(min(prods), max(prods))

    __rmul__ = __mul__

    def inverse(self) -> "Enc":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("enclosure straddles zero")
        return Enc(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _as_enc(other).inverse()

    def __rtruediv__(self, other):
        return _as_enc(other) * self.inverse()

    def clamp(self, lo: Fraction, hi: Fraction) -> "Enc":
        """Enclosure of min(max(value, lo), hi)."""
        f = lambda v: min(max(v, lo), hi)
        return Enc(f(self.lo), f(self.hi))

    def rounded(self, bits: int = 256) -> "Enc":
        """Outward rounding to binary rationals with denominator 2^bits;
        keeps long accumulation chains from compounding denominators."""
        scale = 1 << bits
        lo = Fraction(self.lo.numerator * scale // self.lo.denominator, scale)
        hi = -Fraction(-self.hi.numerator * scale // self.hi.denominator, scale)
        return Enc(lo, hi)

    def min_with(self, c: Fraction) -> "Enc":
        """Enclosure of min(value, c)."""
        return Enc(min(self.lo, c), min(self.hi, c))

    def max_with(self, c: Fraction) -> "Enc":
        """Enclosure of max(value, c)."""
        return Enc(max(self.lo, c), max(self.hi, c))

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _as_enc(x) -> Enc:
    if isinstance(x, Enc):
        return x
    return Enc.exact(x)


def _to_iv(x: Enc):
    # endpoint ratios are converted with outward rounding by the iv context
    lo = iv.mpf(x.lo.numerator) / iv.mpf(x.lo.denominator)
    hi = iv.mpf(x.hi.numerator) / iv.mpf(x.hi.denominator)
    return iv.mpf([lo.a, hi.b])


def _from_iv(x) -> Enc:
    a, b = x._mpi_
    return Enc(_tuple_to_fraction(a), _tuple_to_fraction(b))


def _iv_apply(fn: Callable, x: Enc, prec: int) -> Enc:
    old = iv.prec
    iv.prec = prec
    try:
        return _from_iv(fn(_to_iv(x)))
    finally:
        iv.prec = old


def enc_log(x, prec: int = DEFAULT_PREC) -> Enc:
    x = _as_enc(x)
    if x.lo <= 0:
        raise ValueError("log needs a positive enclosure")
    return _iv_apply(iv.log, x, prec)


def enc_exp(x, prec: int = DEFAULT_PREC) -> Enc:
    return _iv_apply(iv.exp, _as_enc(x), prec)


def enc_sqrt(x, prec: int = DEFAULT_PREC) -> Enc:
    x = _as_enc(x)
    if x.lo < 0:
        raise ValueError("sqrt needs a non-negative enclosure")
    return _iv_apply(iv.sqrt, x, prec)


def exp_int(k: int, prec: int = DEFAULT_PREC) -> Enc:
    """Enclosure of e^k for integer k (exact 1 when k = 0)."""
    if k == 0:
        return Enc.exact(1)
    return enc_exp(Enc.exact(k), prec)


def exp_exp_one(prec: int = DEFAULT_PREC) -> Enc:
    """Enclosure of e^e."""
    return enc_exp(enc_exp(Enc.exact(1), prec), prec)


def resolve(producer: Callable[[int], Enc],
            decide: Callable[[Enc], object],
            what: str = "comparison"):
    """Evaluate `producer` at escalating precision until `decide` returns
    a non-None verdict; raise UndecidedBoundaryError past the cap."""
    for prec in _ESCALATION:
        verdict = decide(producer(prec))
        if verdict is not None:
            return verdict
    raise UndecidedBoundaryError(
        f"{what} undecided at {PREC_CAP} bits of working precision")


def compare_fraction(x: Fraction, producer: Callable[[int], Enc],
                     what: str = "comparison") -> int:
    """Certified sign of x - value, where value is enclosed by producer.

    Returns -1 (x below), +1 (x above); exact equality cannot be
    certified and escalates to the cap.
    """
    x = Fraction(x)

    def decide(e: Enc):
        if x < e.lo:
            return -1
        if x > e.hi:
            return 1
        return None

    return resolve(producer, decide, what)


def certified_floor(producer: Callable[[int], Enc], what: str = "floor") -> int:
    """Floor of the enclosed value, escalating until the enclosure pins
    a single integer part (degenerate integer enclosures are exact)."""

    def decide(e: Enc):
        if e.lo == e.hi:
            return e.lo.numerator // e.lo.denominator
        flo = e.lo.numerator // e.lo.denominator
        fhi = e.hi.numerator // e.hi.denominator
        if flo == fhi:
            return flo
        # enclosure spans an integer; escalate
        return None

    return resolve(producer, decide, what)


def certified_ceil(producer: Callable[[int], Enc], what: str = "ceil") -> int:
    def neg(prec):
        e = producer(prec)
        return Enc(-e.hi, -e.lo)

    return -certified_floor(neg, what)
