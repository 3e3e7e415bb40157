"""Weighted second Borel-Cantelli lower bounds and the block-convolution
shift selection.

The core bound: for events A_1..A_n with weights w_k >= 0,

    (sum_k w_k P(A_k))^2 / (sum_{i,j} w_i w_j P(A_i cap A_j))

never exceeds the measure of the union (Cauchy-Schwarz), and taking the
maximum over prefixes realizes the classical Erdos-Renyi / weighted
limsup bound at a finite stage.

On top of it sits the divergence criterion sum_h log(S_h)/(h loglog S_h)
over blocks with S_h >= 3, and the selection of an integer shift k for
one block: pairs (m, n) are classified by which [e^j, e^(j+1)) their
overlap parameter D(m, n) falls in, the class masses A_j feed a window
objective whose smallest minimizer is k, and the block's weight
w = e^k/S * y/h (y = log S/loglog S) is certified to lie in [0, 1]
whenever S is not absurdly large for its index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .blocks import BlockScheme, block_mass, block_members
from .enclosure import (Enc, certified_ceil, certified_floor, compare_fraction,
                        enc_log, exp_exp_one, exp_int)
from .errors import ZeroDenominatorError
from .numtheory import euler_phi, pair_params
from .psi import PsiSpec


@dataclass(frozen=True)
class EventSystem:
    """Finite event system: probabilities, pairwise joint probabilities,
    and non-negative weights (all exact rationals)."""

    p: tuple[Fraction, ...]
    pp: tuple[tuple[Fraction, ...], ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.p)
        if len(self.pp) != n or any(len(row) != n for row in self.pp):
            raise ValueError("pp must be an n x n table")
        if len(self.weights) != n:
            raise ValueError("one weight per event required")
        for i in range(n):
            if not 0 <= self.p[i] <= 1:
                raise ValueError(f"p[{i}] out of [0, 1]")
            if self.pp[i][i] != self.p[i]:
                raise ValueError(f"pp[{i}][{i}] must equal p[{i}]")
            if self.weights[i] < 0:
                raise ValueError("weights must be non-negative")
            for j in range(n):
                if self.pp[i][j] != self.pp[j][i]:
                    raise ValueError("pp must be symmetric")
                if not 0 <= self.pp[i][j] <= min(self.p[i], self.p[j]):
                    raise ValueError(f"pp[{i}][{j}] out of range")

    @property
    def n(self) -> int:
        return len(self.p)

    @staticmethod
    def from_measures(p: Sequence, pp: Sequence[Sequence],
                      weights: Sequence | None = None) -> "EventSystem":
        p = tuple(Fraction(x) for x in p)
        pp = tuple(tuple(Fraction(x) for x in row) for row in pp)
        w = tuple(Fraction(x) for x in weights) if weights is not None \
            else tuple(Fraction(1) for _ in p)
        return EventSystem(p=p, pp=pp, weights=w)

    @staticmethod
    def from_circle_sets(sets, weights: Sequence | None = None) -> "EventSystem":
        """Realize the system from explicit arc sets; joint probabilities
        are exact intersection measures."""
        p = [s.measure() for s in sets]
        n = len(sets)
        pp = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            pp[i][i] = p[i]
            for j in range(i + 1, n):
                m = sets[i].intersect(sets[j]).measure()
                pp[i][j] = pp[j][i] = m
        return EventSystem.from_measures(p, pp, weights)

    def reweighted(self, weights: Sequence) -> "EventSystem":
        return EventSystem(p=self.p, pp=self.pp,
                           weights=tuple(Fraction(x) for x in weights))


def bc_lower_bound(es: EventSystem, prefix: int) -> Fraction:
    """(sum w p)^2 / (sum w w pp) over the first `prefix` events, exact."""
    if not 1 <= prefix <= es.n:
        raise ValueError(f"prefix must be in [1, {es.n}]")
    num = sum((es.weights[k] * es.p[k] for k in range(prefix)), Fraction(0))
    den = Fraction(0)
    for i in range(prefix):
        wi = es.weights[i]
        if wi == 0:
            continue
        row = es.pp[i]
        for j in range(prefix):
            wj = es.weights[j]
            if wj:
                den += wi * wj * row[j]
    if den == 0:
        raise ZeroDenominatorError(
            f"second moment vanishes on the first {prefix} events")
    return num * num / den


def best_bc_lower_bound(es: EventSystem) -> tuple[Fraction, int | None]:
    """Maximum of the bound over all prefixes (the finite-stage limsup).

    Returns (0, None) when every prefix has a vanishing second moment,
    which happens exactly when all weighted events are null.
    """
    best = Fraction(0)
    arg = None
    for prefix in range(1, es.n + 1):
        try:
            val = bc_lower_bound(es, prefix)
        except ZeroDenominatorError:
            continue
        if val > best:
            best, arg = val, prefix
    return best, arg


@dataclass(frozen=True)
class CriterionRow:
    h: int
    s: Fraction
    term: Enc
    partial: Enc


def divergence_criterion(psi: PsiSpec, scheme: BlockScheme,
                         h_max: int) -> list[CriterionRow]:
    """Per-block terms log(S_h) / (h loglog S_h) for blocks with S_h >= 3
    (others contribute 0), with certified enclosures and running sums."""
    if h_max < 1:
        raise ValueError("h_max must be >= 1")
    rows = []
    partial = Enc.exact(0)
    for h in range(1, h_max + 1):
        s = block_mass(psi, scheme, h)
        if s >= 3:
            ls = enc_log(s)
            term = ls / (h * enc_log(ls))
        else:
            term = Enc.exact(0)
        partial = partial + term
        rows.append(CriterionRow(h=h, s=s, term=term, partial=partial))
    return rows


def classify_pairs(psi: PsiSpec, scheme: BlockScheme, h: int) -> dict[int, Fraction]:
    """Class masses A_j: for ordered pairs (m, n) of distinct block
    members with psi(m) psi(n) > 0, bucket by e^j <= D(m, n) < e^(j+1)
    (j >= -1) and sum psi(m) psi(n) phi(m)/m phi(n)/n.

    Pairs with D < 1/e lie below every class; their arc systems cannot
    meet (D < 1/2 forces an empty overlap), and they are skipped.
    """
    members = [n for n in block_members(psi, scheme, h) if psi.value(n) != 0]
    a: dict[int, Fraction] = {}
    for i, m in enumerate(members):
        for n in members[i + 1:]:
            d = pair_params(m, n, psi.value(m), psi.value(n)).d
            if d == 0:
                continue
            if d == 1:
                j = 0
            else:
                j = certified_floor(lambda prec: enc_log(d, prec),
                                    what=f"log D({m},{n})")
            if j < -1:
                continue
            w = (psi.value(m) * euler_phi(m) / m) * (psi.value(n) * euler_phi(n) / n)
            a[j] = a.get(j, Fraction(0)) + 2 * w
    return dict(sorted(a.items()))


def selection_objective(a: dict[int, Fraction], h: int, k: int,
                        y_ceil: int) -> Fraction:
    """Window objective sum_{j=k-1}^{k+ceil(y)} h/(j-k+2) * A_j, exact."""
    total = Fraction(0)
    for j in range(k - 1, k + y_ceil + 1):
        aj = a.get(j)
        if aj:
            total += Fraction(h, j - k + 2) * aj
    return total


@dataclass(frozen=True)
class ConvolutionPlan:
    h: int
    s: Fraction
    a: dict[int, Fraction]
    y: Enc
    y_floor: int
    y_ceil: int
    k: int
    k_max: int
    psibar_core: dict[int, Fraction]
    sbar_core: Fraction
    omega: Enc
    f_l1: Fraction
    g_l1: Fraction
    conv_l1: Fraction
    young_ok: bool


def convolution_select(psi: PsiSpec, scheme: BlockScheme, h: int) -> ConvolutionPlan:
    """Pick the shift k for one block and assemble the weighted data.

    Requires a certified S_h >= e^e.  k is the smallest integer in
    [0, floor(log S)] minimizing the window objective.  The rescaled
    function psibar(n) = psi(n) e^(-k) is kept symbolic as (rational
    core, shift); its block mass is sbar_core * e^(-k) exactly.  The
    block weight omega = e^k/S * y/h is certified and clamped to [0, 1].
    """
    if h < 1:
        raise ValueError("block index must be >= 1")
    s = block_mass(psi, scheme, h)
    if s <= 0 or compare_fraction(s, exp_exp_one, what="S vs e^e") < 0:
        raise ValueError(
            f"block {h} has S = {s} below e^e; the construction needs S >= e^e")
    a = classify_pairs(psi, scheme, h)

    def y_producer(prec: int) -> Enc:
        ls = enc_log(s, prec)
        return ls / enc_log(ls, prec)

    y = y_producer(256)
    y_floor = certified_floor(y_producer, what="floor(y)")
    y_ceil = certified_ceil(y_producer, what="ceil(y)")
    k_max = certified_floor(lambda prec: enc_log(s, prec), what="floor(log S)")

    best_k, best_val = 0, None
    for k in range(0, k_max + 1):
        val = selection_objective(a, h, k, y_ceil)
        if best_val is None or val < best_val:
            best_k, best_val = k, val

    members = block_members(psi, scheme, h)
    psibar_core = {n: psi.value(n) for n in members if psi.value(n) != 0}

    omega = (exp_int(best_k) / Enc.exact(s)) * (y / Enc.exact(h))
    omega = omega.clamp(Fraction(0), Fraction(1))

    f_l1 = sum(a.values(), Fraction(0))
    g_l1 = h * sum((Fraction(1, i) for i in range(1, y_floor + 3)), Fraction(0))
    conv_l1 = Fraction(0)
    for j, aj in a.items():
        for i in range(1, y_floor + 3):  # g(k - j) = h/i at k = j - i + 2
            conv_l1 += aj * Fraction(h, i)
    young_ok = conv_l1 <= f_l1 * g_l1

    return ConvolutionPlan(h=h, s=s, a=a, y=y, y_floor=y_floor, y_ceil=y_ceil,
                           k=best_k, k_max=k_max, psibar_core=psibar_core,
                           sbar_core=s, omega=omega, f_l1=f_l1, g_l1=g_l1,
                           conv_l1=conv_l1, young_ok=young_ok)
