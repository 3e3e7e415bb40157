"""Finite-support approximation functions psi and their generators.

A PsiSpec maps positive integers to non-negative exact rationals and is
zero off a finite support.  Families are deterministic under their seed,
so every experiment is reproducible from (descriptor, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .numtheory import euler_phi, primes_up_to

ZERO = Fraction(0)
HALF = Fraction(1, 2)

DEFAULT_DENOMINATOR_CAP = 1 << 20


@dataclass(frozen=True)
class PsiSpec:
    """Non-negative rational-valued function with finite support."""

    kind: str
    values: Mapping[int, Fraction]
    seed: int | None = None
    params: tuple[tuple[str, object], ...] = field(default=())

    def __post_init__(self):
        clean = {}
        for n, v in self.values.items():
            n = int(n)
            v = Fraction(v)
            if n < 1:
                raise ValueError(f"support must be positive integers, got {n}")
            if v < 0:
                raise ValueError(f"psi({n}) = {v} is negative")
            if v != 0:
                clean[n] = v
        object.__setattr__(self, "values", dict(sorted(clean.items())))

    def value(self, n: int) -> Fraction:
        return self.values.get(n, ZERO)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.values)

    def scaled(self, t: Fraction) -> "PsiSpec":
        t = Fraction(t)
        if t < 0:
            raise ValueError("scale factor must be non-negative")
        return PsiSpec(kind=f"scaled({self.kind})", seed=self.seed,
                       values={n: t * v for n, v in self.values.items()})

    def restricted(self, lo: int, hi: int) -> "PsiSpec":
        """Restriction to support members with lo <= n <= hi."""
        return PsiSpec(kind=f"restricted({self.kind})", seed=self.seed,
                       values={n: v for n, v in self.values.items()
                               if lo <= n <= hi})

    def clamped_half(self) -> "PsiSpec":
        return PsiSpec(kind=f"clamped({self.kind})", seed=self.seed,
                       values={n: min(v, HALF) for n, v in self.values.items()})

    def erdos_vaaler_floor(self) -> "PsiSpec":
        """Raise every nonzero value to at least 1/n (optional filter)."""
        return PsiSpec(kind=f"ev({self.kind})", seed=self.seed,
                       values={n: max(v, Fraction(1, n))
                               for n, v in self.values.items()})

    def mass(self, ns: Iterable[int] | None = None) -> Fraction:
        """Sum of psi(n) * phi(n) / n over the given indices (default: support)."""
        total = ZERO
        for n in (self.support if ns is None else ns):
            v = self.value(n)
            if v:
                total += v * euler_phi(n) / n
        return total

    def descriptor(self) -> dict:
        """JSON-friendly echo of how this spec was built."""
        d = {"family": self.kind, "seed": self.seed}
        d.update({k: v for k, v in self.params})
        d["values"] = {str(n): f"{v.numerator}/{v.denominator}"
                       for n, v in self.values.items()}
        return d


def table_psi(values: Mapping[int, Fraction | str | int]) -> PsiSpec:
    """Explicit-table family."""
    return PsiSpec(kind="table",
                   values={int(n): Fraction(v) for n, v in values.items()})


def constant_psi(value: Fraction | str | int, lo: int, hi: int) -> PsiSpec:
    v = Fraction(value)
    return PsiSpec(kind="constant", params=(("value", str(v)), ("lo", lo), ("hi", hi)),
                   values={n: v for n in range(lo, hi + 1)})


def reciprocal_psi(lo: int, hi: int) -> PsiSpec:
    return PsiSpec(kind="reciprocal", params=(("lo", lo), ("hi", hi)),
                   values={n: Fraction(1, n) for n in range(lo, hi + 1)})


def indicator_psi(value: Fraction | str | int, lo: int, hi: int,
                  residue: int | None = None, modulus: int | None = None,
                  primes: bool = False) -> PsiSpec:
    """Indicator of a residue class (or of the primes) on [lo, hi]."""
    v = Fraction(value)
    if primes:
        support = [p for p in primes_up_to(hi) if p >= lo]
        params = (("value", str(v)), ("lo", lo), ("hi", hi), ("primes", True))
    elif modulus is not None:
        if modulus < 1:
            raise ValueError("modulus must be positive")
        r = (residue or 0) % modulus
        support = [n for n in range(lo, hi + 1) if n % modulus == r]
        params = (("value", str(v)), ("lo", lo), ("hi", hi),
                  ("residue", r), ("modulus", modulus))
    else:
        raise ValueError("indicator family needs a modulus or primes=True")
    return PsiSpec(kind="indicator", params=params,
                   values={n: v for n in support})


def block_target_psi(scheme, targets: Mapping[int, Fraction | str | int],
                     clamp_half: bool = False) -> PsiSpec:
    """Constant-per-block values chosen so each block mass hits its target.

    For block h the value theta_h solves theta_h * sum(phi(n)/n) = target.
    With the psi <= 1/2 clamp active a target above sum(phi(n)/(2n)) is
    unachievable and rejected.
    """
    values: dict[int, Fraction] = {}
    for h, target in sorted(targets.items()):
        target = Fraction(target)
        if target < 0:
            raise ValueError("block mass targets must be non-negative")
        lo, hi = scheme.block_range(int(h))
        base = sum(Fraction(euler_phi(n), n) for n in range(lo, hi + 1))
        if base == 0:
            raise ValueError(f"block {h} is empty")
        theta = target / base
        if clamp_half and theta > HALF:
            raise ValueError(
                f"block {h} target {target} needs psi = {theta} > 1/2; "
                f"maximum achievable with the clamp is {base / 2}")
        if theta:
            for n in range(lo, hi + 1):
                values[n] = theta
    return PsiSpec(kind="block-target", values=values,
                   params=(("targets", tuple((int(h), str(Fraction(t)))
                                             for h, t in sorted(targets.items()))),
                           ("clamp_half", clamp_half)))


def random_psi(lo: int, hi: int, seed: int,
               denominator: int = DEFAULT_DENOMINATOR_CAP,
               density: float = 1.0) -> PsiSpec:
    """Uniform-random values in [0, 1/2] with a fixed denominator bound.

    density < 1 keeps each index in the support independently with that
    probability, giving sparse random families.  Deterministic in seed.
    """
    if denominator < 2 or denominator > DEFAULT_DENOMINATOR_CAP:
        raise ValueError(f"denominator must be in [2, {DEFAULT_DENOMINATOR_CAP}]")
    rng = random.Random(seed)
    values = {}
    for n in range(lo, hi + 1):
        if density < 1.0 and rng.random() >= density:
            continue
        values[n] = Fraction(rng.randint(0, denominator // 2), denominator)
    return PsiSpec(kind="random-family", seed=seed, values=values,
                   params=(("lo", lo), ("hi", hi),
                           ("denominator", denominator), ("density", density)))


def generate_psi(descriptor: Mapping, seed: int = 0) -> PsiSpec:
    """Build a PsiSpec from a structured descriptor (the config-file form)."""
    family = descriptor.get("family")
    if family == "table":
        return table_psi(descriptor["values"])
    if family in ("constant", "reciprocal", "indicator", "uniform", "random"):
        try:
            lo = int(descriptor["lo"])
            hi = int(descriptor["hi"])
        except KeyError as exc:
            raise ValueError(f"{family} family needs bounded support "
                             f"(missing {exc.args[0]!r})") from None
        if lo < 1 or hi < lo:
            raise ValueError(f"bad support range [{lo}, {hi}]")
        if family == "constant":
            return constant_psi(descriptor["value"], lo, hi)
        if family == "reciprocal":
            return reciprocal_psi(lo, hi)
        if family == "indicator":
            return indicator_psi(descriptor.get("value", 1), lo, hi,
                                 residue=descriptor.get("residue"),
                                 modulus=descriptor.get("modulus"),
                                 primes=bool(descriptor.get("primes", False)))
        return random_psi(lo, hi, seed,
                          denominator=int(descriptor.get("denominator",
                                                         DEFAULT_DENOMINATOR_CAP)),
                          density=float(descriptor.get("density", 1.0)))
    if family == "block-target":
        from .blocks import scheme_from_descriptor

        scheme = scheme_from_descriptor(descriptor.get("scheme", {"kind": "canonical"}))
        return block_target_psi(scheme, descriptor["targets"],
                                clamp_half=bool(descriptor.get("clamp_half", False)))
    raise ValueError(f"unknown psi family: {family!r}")
