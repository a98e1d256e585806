"""Constructive factorizations into maps with infinite image, and their obstructions.

J is the set of endomorphisms whose image is as large as the chain; on a
countable chain these are the maps with infinite image.  ``factorize`` either
writes a map as a product of elements of J or returns evidence that no such
product exists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .chain import ChainSpec, Element, Region
from .maps import (
    JCertificate,
    MapError,
    PcMap,
    compose_all,
    dual_map,
    evaluate_sorted,
    j_membership,
    normalize,
    probe_points,
    restrict,
)


class PreconditionError(ValueError):
    pass


class Case(enum.Enum):
    BELOW = "below"
    ABOVE_DUAL = "above_dual"


@dataclass(frozen=True)
class FactorizationTrace:
    zero: Element
    case: Case
    i: int
    k: int
    factors: tuple


@dataclass(frozen=True)
class TwoFactor:
    a1: PcMap
    a2: PcMap
    u: Optional[Element] = None
    v: Optional[Element] = None
    # "crossing" (pair u, v in X⁰ with u -> v) or "region_split"
    construction: str = "crossing"


@dataclass(frozen=True)
class Singleton:
    pass


@dataclass(frozen=True)
class EmptyX0Crossing:
    """``source`` lies in one of X⁻/X⁺ and is sent into the other."""

    source: Element
    image: Element
    source_region: Region


@dataclass(frozen=True)
class BoundedImageEnd:
    """The image of the map restricted to ``region`` has an extreme point.

    ``region`` is the whole chain's only nonempty region, or the infinite one
    of X⁻/X⁺ when the other is finite.
    """

    end: str
    value: Element
    region: Region


ObstructionWitness = Union[EmptyX0Crossing, BoundedImageEnd]


@dataclass(frozen=True)
class Obstructed:
    witness: ObstructionWitness


Outcome = Union[FactorizationTrace, TwoFactor, Singleton, Obstructed]


@dataclass(frozen=True)
class FactorizationResult:
    alpha: PcMap
    outcome: Outcome

    @property
    def factors(self) -> Optional[list[PcMap]]:
        o = self.outcome
        if isinstance(o, FactorizationTrace):
            return list(o.factors)
        if isinstance(o, TwoFactor):
            return [o.a1, o.a2]
        if isinstance(o, Singleton):
            return [self.alpha]
        return None


def _zero_check(chain: ChainSpec, zero: Element):
    chain.check(zero)
    if chain.classify(zero) is not Region.ZERO:
        raise PreconditionError(f"{zero} is not in X⁰")


def _all_constant(alpha: PcMap) -> PcMap:
    a = normalize(alpha)
    if j_membership(a).in_j:
        raise PreconditionError("map has infinite image, so it is not in J_f")
    return a


def _factor_below(alpha: PcMap, z: Element) -> tuple[int, int, list[PcMap]]:
    """Factors for the case alpha(z) <= z; alpha is normalized and all-constant."""
    ch = alpha.chain
    bz, az = ch.before(z), ch.after(z)
    parts = alpha.parts
    image = [v for _, _, v in parts]
    preimage = {v: (lo, hi) for lo, hi, v in parts}
    i = image.index(alpha(z))
    k = 0
    while i + k + 1 < len(image) and image[i + k + 1] <= z:
        k += 1

    beta = PcMap.build(ch, restrict(alpha, ch.bottom, az) + [(az, ch.top, None)])
    factors = [beta]
    for j in range(k + 1):
        a = image[i + j]
        above = max(bz, preimage[a][1])
        g1 = PcMap.build(ch, [(ch.bottom, bz, None), (bz, above, z), (above, ch.top, None)])
        ba = ch.before(a)
        g2 = PcMap.build(ch, [(ch.bottom, ba, None), (ba, az, a), (az, ch.top, None)])
        factors += [g1, g2]
    if i + k + 1 == len(image):
        delta = PcMap.identity(ch)
    else:
        b = image[i + k + 1]
        above = max(az, preimage[b][1])
        delta = PcMap.build(
            ch, [(ch.bottom, az, None), (az, above, b)] + restrict(alpha, above, ch.top)
        )
    factors.append(delta)
    # 1-based index as in a_1 < ... < a_n
    return i + 1, k, [normalize(f) for f in factors]


def main_lemma_factorize(alpha: PcMap, zero: Element) -> FactorizationTrace:
    """Factor a finite-image map through a point of X⁰.

    Returns beta, gamma1(j), gamma2(j) for j = 0..k, delta, whose
    left-to-right product is alpha; each factor has infinite image.  When
    alpha(zero) > zero the construction runs on the order dual and the
    factors are conjugated back.
    """
    ch = alpha.chain
    _zero_check(ch, zero)
    a = _all_constant(alpha)
    if a(zero) <= zero:
        i, k, factors = _factor_below(a, zero)
        return FactorizationTrace(zero, Case.BELOW, i, k, tuple(factors))
    i, k, factors = _factor_below(dual_map(a), ch.reflect(zero))
    back = [dual_map(f) for f in factors]
    return FactorizationTrace(zero, Case.ABOVE_DUAL, i, k, tuple(back))


def two_factor_factorize(alpha: PcMap, u: Element, v: Element) -> TwoFactor:
    """alpha = a1 a2 for u, v in X⁰ with alpha(u) = v."""
    ch = alpha.chain
    for name, e in (("u", u), ("v", v)):
        ch.check(e)
        if ch.classify(e) is not Region.ZERO:
            raise PreconditionError(f"{name} = {e} is not in X⁰")
    if alpha(u) != v:
        raise PreconditionError(f"alpha({u}) = {alpha(u)}, not {v}")
    alpha = normalize(alpha)
    bot, top = ch.bottom, ch.top
    bu, au, bv = ch.before(u), ch.after(u), ch.before(v)
    if u <= v:
        a1 = [(bot, bu, None)] + restrict(alpha, bu, top)
        a2 = restrict(alpha, bot, bu) + [(bu, bv, v), (bv, top, None)]
    else:
        a1 = restrict(alpha, bot, au) + [(au, top, None)]
        a2 = [(bot, bv, None), (bv, bu, v)] + restrict(alpha, bu, top)
    return TwoFactor(
        normalize(PcMap.build(ch, a1)), normalize(PcMap.build(ch, a2)), u, v
    )


def find_crossing_pair(alpha: PcMap) -> Optional[tuple[Element, Element]]:
    """Some u in X⁰ with alpha(u) in X⁰; identity pieces first, then by piece order."""
    ch = alpha.chain
    m, p = ch.region_cuts
    if m >= p:
        return None
    parts = normalize(alpha).parts
    for lo, hi, v in parts:
        if v is None and max(lo, m) < min(hi, p):
            u = ch.cut_pick(max(lo, m), min(hi, p))
            return u, u
    for lo, hi, v in parts:
        if v is not None and m < v.key < p and max(lo, m) < min(hi, p):
            return ch.cut_pick(max(lo, m), min(hi, p)), v
    return None


@dataclass(frozen=True)
class Generated:
    zero_witness: Element

    @property
    def generated(self) -> bool:
        return True


@dataclass(frozen=True)
class NotGenerated:
    reason: str = "x0_empty"

    @property
    def generated(self) -> bool:
        return False


def decide_generation(chain: ChainSpec) -> Union[Generated, NotGenerated]:
    """O(X) is generated by J exactly when X⁰ is nonempty (countable X)."""
    m, p = chain.region_cuts
    if m < p:
        return Generated(chain.cut_pick(m, p))
    return NotGenerated()


def obstruction_witness(alpha: PcMap) -> ObstructionWitness:
    ch = alpha.chain
    m, p = ch.region_cuts
    if m < p:
        raise PreconditionError("X⁰ is nonempty; no obstruction exists")
    a = _all_constant(alpha)
    bot, top = ch.bottom, ch.top
    has_minus, has_plus = bot < m, m < top
    if has_minus and has_plus:
        for lo, hi, v in a.parts:
            if max(lo, m) < hi and v.key < m:
                return EmptyX0Crossing(ch.cut_pick(max(lo, m), hi), v, Region.PLUS)
            if lo < min(hi, m) and v.key > m:
                return EmptyX0Crossing(ch.cut_pick(lo, min(hi, m)), v, Region.MINUS)
        # alpha keeps both regions; the infinite one carries a bounded image
        if ch.cut_card(bot, m).infinite and ch.cut_card(m, top).infinite:
            raise PreconditionError("both regions are infinite and alpha preserves them")
        if ch.cut_card(bot, m).infinite:
            return BoundedImageEnd("max", _region_max(a, m), Region.MINUS)
        return BoundedImageEnd("min", _region_min(a, m), Region.PLUS)
    if has_minus:
        return BoundedImageEnd("max", a.values[-1], Region.MINUS)
    return BoundedImageEnd("min", a.values[0], Region.PLUS)


def _region_max(a: PcMap, m) -> Element:
    return max(v for lo, _, v in a.parts if lo < m)


def _region_min(a: PcMap, m) -> Element:
    return min(v for _, hi, v in a.parts if hi > m)


def region_split(alpha: PcMap) -> Optional[TwoFactor]:
    """alpha = (alpha on X⁻, id on X⁺)(id on X⁻, alpha on X⁺) when X⁰ is empty,
    both sides are infinite, and alpha preserves both sides."""
    ch = alpha.chain
    m, p = ch.region_cuts
    bot, top = ch.bottom, ch.top
    if m != p or not (ch.cut_card(bot, m).infinite and ch.cut_card(m, top).infinite):
        return None
    a = normalize(alpha)
    for lo, hi, v in a.parts:
        if v is None:
            continue
        if (lo < m and v.key > m) or (hi > m and v.key < m):
            return None
    lower = restrict(a, bot, m) + [(m, top, None)]
    upper = [(bot, m, None)] + restrict(a, m, top)
    return TwoFactor(
        normalize(PcMap.build(ch, lower)), normalize(PcMap.build(ch, upper)),
        construction="region_split",
    )


def factorize(alpha: PcMap) -> FactorizationResult:
    a = normalize(alpha)
    ch = a.chain
    if j_membership(a).in_j:
        return FactorizationResult(a, Singleton())
    pair = find_crossing_pair(a)
    if pair is not None:
        return FactorizationResult(a, two_factor_factorize(a, *pair))
    dec = decide_generation(ch)
    if isinstance(dec, Generated):
        return FactorizationResult(a, main_lemma_factorize(a, dec.zero_witness))
    split = region_split(a)
    if split is not None:
        return FactorizationResult(a, split)
    return FactorizationResult(a, Obstructed(obstruction_witness(a)))


@dataclass
class VerificationReport:
    symbolic_ok: bool
    first_difference: Optional[int]
    certificates: list[JCertificate]
    window_ok: bool
    window_points: int
    window_mismatch: Optional[tuple[Element, Element, Element]] = None
    product: Optional[PcMap] = field(default=None, repr=False)

    @property
    def factors_in_j(self) -> bool:
        return all(c.in_j for c in self.certificates)

    @property
    def passed(self) -> bool:
        return self.symbolic_ok and self.factors_in_j and self.window_ok


def verification_window(alpha: PcMap, factors: Sequence[PcMap], size: int) -> list[Element]:
    pts = set(alpha.chain.window(size))
    pts |= probe_points(alpha)
    for f in factors:
        pts.update(v for v in f.values if v is not None)
    return sorted(pts)


def verify_factorization(alpha: PcMap, factors: Sequence[PcMap], window_size: int = 21) -> VerificationReport:
    if not factors:
        raise MapError("nothing to verify")
    for f in factors:
        if f.chain != alpha.chain:
            raise MapError("factor lives on a different chain")
    target = normalize(alpha)
    product = compose_all(factors)
    first = None
    if product != target:
        pa, pb = product.parts, target.parts
        first = next(
            (k for k, (x, y) in enumerate(zip(pa, pb)) if x != y), min(len(pa), len(pb))
        )
    certs = [j_membership(f) for f in factors]
    xs = verification_window(alpha, factors, window_size)
    ys = xs
    for f in factors:
        ys = evaluate_sorted(f, ys) if _sorted(ys) else [f(y) for y in ys]
    want = evaluate_sorted(alpha, xs)
    mismatch = next(((x, y, w) for x, y, w in zip(xs, ys, want) if y != w), None)
    return VerificationReport(
        first is None, first, certs, mismatch is None, len(xs), mismatch, product
    )


def _sorted(ys) -> bool:
    return all(a <= b for a, b in zip(ys, ys[1:]))
