"""Piecewise identity/constant order endomorphisms of a chain.

A ``PcMap`` is stored as a cut list ``c_0 < c_1 <= ... < c_m`` spanning the
chain plus one action per piece; ``None`` means identity, an ``Element``
means constant.  Composition is left to right: ``compose(f, g)`` is
``x -> g(f(x))``.

Normal form (``normalize``): identity pieces are exactly the infinite runs of
fixed points; everything else is covered by maximal constant pieces.  Two
maps are equal as functions iff their normal forms are equal as values.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .chain import (
    ALEPH0,
    Bound,
    Card,
    ChainError,
    ChainSpec,
    Cut,
    Element,
    Interval,
    OMEGA_UP,
)


class MapError(ValueError):
    pass


@dataclass(frozen=True)
class Action:
    value: Optional[Element] = None

    @property
    def is_identity(self) -> bool:
        return self.value is None

    @classmethod
    def const(cls, e: Element) -> "Action":
        return cls(e)

    def __str__(self):
        return "id" if self.value is None else f"↦{self.value}"


IDENTITY = Action()


@dataclass(frozen=True)
class PcMap:
    chain: ChainSpec
    cuts: tuple
    values: tuple

    def __post_init__(self):
        ch = self.chain
        cuts, vals = tuple(self.cuts), tuple(self.values)
        object.__setattr__(self, "cuts", cuts)
        object.__setattr__(self, "values", vals)
        if len(cuts) != len(vals) + 1 or not vals:
            raise MapError("need one action per piece")
        if cuts[0] != ch.bottom or cuts[-1] != ch.top:
            raise MapError("pieces must cover the whole chain")
        for a, b in zip(cuts, cuts[1:]):
            if a > b:
                raise MapError("pieces out of order")
        for v in vals:
            if v is not None:
                ch.check(v)

    @classmethod
    def build(cls, chain: ChainSpec, parts: Iterable[tuple], check: bool = True) -> "PcMap":
        """From contiguous ``(lo_cut, hi_cut, value)`` parts; empty parts are dropped."""
        cuts = [chain.bottom]
        vals = []
        for lo, hi, v in parts:
            if lo >= hi:
                continue
            if lo != cuts[-1]:
                raise MapError(f"pieces are not contiguous at {chain.lower_bound(lo)}")
            cuts.append(hi)
            vals.append(v)
        if cuts[-1] != chain.top:
            raise MapError("pieces do not reach the top of the chain")
        f = cls(chain, tuple(cuts), tuple(vals))
        if check:
            m = is_monotone(f)
            if not m.ok:
                x, y = m.witness
                raise MapError(f"not order-preserving: {x} <= {y} but {f(x)} > {f(y)}")
        return f

    @classmethod
    def from_pieces(cls, chain: ChainSpec, pieces: Iterable[tuple], check: bool = True) -> "PcMap":
        """From ``(Interval, Action)`` pairs listed in increasing order."""
        parts = []
        for iv, act in pieces:
            lo, hi = chain.cuts(iv)
            v = act.value if isinstance(act, Action) else act
            parts.append((lo, hi, v))
        return cls.build(chain, parts, check)

    @classmethod
    def identity(cls, chain: ChainSpec) -> "PcMap":
        return cls(chain, (chain.bottom, chain.top), (None,))

    @classmethod
    def constant(cls, chain: ChainSpec, e: Element) -> "PcMap":
        return normalize(cls(chain, (chain.bottom, chain.top), (e,)))

    @property
    def parts(self) -> list[tuple]:
        return [(a, b, v) for a, b, v in zip(self.cuts, self.cuts[1:], self.values) if a < b]

    @property
    def pieces(self) -> list[tuple[Interval, Action]]:
        ch = self.chain
        return [(ch.interval(a, b), Action(v)) for a, b, v in self.parts]

    def __call__(self, x: Element) -> Element:
        v = self.values[bisect.bisect_right(self.cuts, x.key) - 1]
        return x if v is None else v

    def __str__(self):
        return "{" + "; ".join(f"{iv} {act}" for iv, act in self.pieces) + "}"


def evaluate(f: PcMap, x: Element) -> Element:
    return f(f.chain.check(x))


def evaluate_sorted(f: PcMap, xs: Sequence[Element]) -> list[Element]:
    """Evaluate on an increasing sequence with a single sweep over the pieces."""
    cuts, vals = f.cuts, f.values
    out = []
    k = 0
    for x in xs:
        key = x.key
        while cuts[k + 1] < key:
            k += 1
        v = vals[k]
        out.append(x if v is None else v)
    return out


def _merge(parts: list[tuple]) -> list[tuple]:
    out = []
    for lo, hi, v in parts:
        if out and out[-1][2] == v:
            out[-1] = (out[-1][0], hi, v)
        else:
            out.append((lo, hi, v))
    return out


def normalize(f: PcMap) -> PcMap:
    ch = f.chain
    split = []
    for lo, hi, v in f.parts:
        if v is not None and lo < v.key < hi:
            b, a = ch.before(v), ch.after(v)
            split.append((lo, b, v))
            split.append((b, a, None))
            split.append((a, hi, v))
        else:
            split.append((lo, hi, v))
    runs = _merge([p for p in split if p[0] < p[1]])
    parts = []
    for lo, hi, v in runs:
        if v is None and not ch.cut_card(lo, hi).infinite:
            parts.extend((ch.before(e), ch.after(e), e) for e in ch.cut_elements(lo, hi))
        else:
            parts.append((lo, hi, v))
    parts = _merge(parts)
    cuts = (ch.bottom,) + tuple(hi for _, hi, _ in parts)
    return PcMap(ch, cuts, tuple(v for _, _, v in parts))


@dataclass(frozen=True)
class Monotonicity:
    ok: bool
    witness: Optional[tuple[Element, Element]] = None


def is_monotone(f: PcMap) -> Monotonicity:
    """Check order preservation piece boundary by piece boundary.

    On failure the witness is a pair x <= y with f(x) > f(y).
    """
    ch = f.chain
    parts = f.parts
    for (lo1, hi1, v1), (lo2, hi2, v2) in zip(parts, parts[1:]):
        if v1 is None and v2 is None:
            continue
        if v1 is None:
            # every x in piece 1 must be <= v2
            bound = ch.after(v2)
            if hi1 > bound:
                return Monotonicity(False, (ch.cut_pick(max(lo1, bound), hi1), ch.cut_pick(lo2, hi2)))
        elif v2 is None:
            bound = ch.before(v1)
            if lo2 < bound:
                return Monotonicity(False, (ch.cut_pick(lo1, hi1), ch.cut_pick(lo2, min(hi2, bound))))
        elif v1 > v2:
            return Monotonicity(False, (ch.cut_pick(lo1, hi1), ch.cut_pick(lo2, hi2)))
    return Monotonicity(True)


def _same_chain(f: PcMap, g: PcMap):
    if f.chain != g.chain:
        raise MapError(f"chain mismatch: {f.chain} vs {g.chain}")


def compose(f: PcMap, g: PcMap) -> PcMap:
    """x -> g(f(x)), normalized."""
    _same_chain(f, g)
    gcuts, gvals = g.cuts, g.values
    parts = []
    for lo, hi, v in f.parts:
        if v is not None:
            parts.append((lo, hi, g(v)))
            continue
        k = max(0, bisect.bisect_right(gcuts, lo) - 1)
        while k < len(gvals) and gcuts[k] < hi:
            a, b = max(lo, gcuts[k]), min(hi, gcuts[k + 1])
            if a < b:
                parts.append((a, b, gvals[k]))
            k += 1
    return normalize(PcMap.build(f.chain, parts, check=False))


def compose_all(maps: Sequence[PcMap]) -> PcMap:
    if not maps:
        raise MapError("empty product")
    out = normalize(maps[0])
    for g in maps[1:]:
        out = compose(out, g)
    return out


@dataclass(frozen=True)
class ImageSummary:
    identity_intervals: tuple
    constant_values: tuple
    cardinality: Card


def image_summary(f: PcMap) -> ImageSummary:
    ch = f.chain
    g = normalize(f)
    ident = [(lo, hi) for lo, hi, v in g.parts if v is None]
    consts = []
    for v in dict.fromkeys(v for _, _, v in g.parts if v is not None):
        if not any(lo < v.key < hi for lo, hi in ident):
            consts.append(v)
    sizes = [ch.cut_card(lo, hi) for lo, hi in ident]
    if any(s.infinite for s in sizes):
        card = ALEPH0
    else:
        card = Card(sum(s.count for s in sizes) + len(consts))
    return ImageSummary(tuple(ch.interval(lo, hi) for lo, hi in ident), tuple(consts), card)


def image_extreme(f: PcMap, which: str) -> Optional[Element]:
    """Minimum (``which='min'``) or maximum of the image, or None if not attained."""
    ch = f.chain
    parts = normalize(f).parts
    if which == "max":
        # the maximum comes from the last piece since the map is monotone
        lo, hi, v = parts[-1]
        return v if v is not None else ch.greatest(hi)
    lo, hi, v = parts[0]
    return v if v is not None else ch.least(lo)


@dataclass(frozen=True)
class JCertificate:
    in_j: bool
    witness: Optional[Interval] = None
    image_cardinality: Card = ALEPH0


def j_membership(f: PcMap) -> JCertificate:
    ch = f.chain
    g = normalize(f)
    for lo, hi, v in g.parts:
        if v is None and ch.cut_card(lo, hi).infinite:
            return JCertificate(True, ch.interval(lo, hi), ALEPH0)
    return JCertificate(False, None, image_summary(g).cardinality)


def in_j(f: PcMap) -> bool:
    return j_membership(f).in_j


def step_map_from_image(chain: ChainSpec, values: Sequence[Element], cuts: Sequence[Bound]) -> PcMap:
    """All-constant map taking value ``values[i]`` up to (and per its flag, at) ``cuts[i]``.

    With ``cuts[i] = Bound.at(values[i])`` this is the standard step map whose
    image is exactly ``values``.
    """
    values = [chain.check(v) for v in values]
    if not values:
        raise MapError("need at least one image value")
    if len(cuts) != len(values) - 1:
        raise MapError(f"need {len(values) - 1} cuts, got {len(cuts)}")
    if any(a >= b for a, b in zip(values, values[1:])):
        raise MapError("image values must be strictly increasing")
    full = [chain.bottom] + [chain.upper_cut(b) for b in cuts] + [chain.top]
    if any(a >= b for a, b in zip(full, full[1:])):
        raise MapError("cuts must be strictly increasing and leave every piece nonempty")
    return normalize(PcMap(chain, tuple(full), tuple(values)))


def _require_omega(chain: ChainSpec):
    if len(chain) != 1 or chain.segments[0].kind != OMEGA_UP:
        raise ChainError("bijection is defined on the ω chain only")


def jf_to_subset(f: PcMap) -> tuple[list[Element], list[Element]]:
    """Image x_1 < ... < x_n and the preimage minima of x_2..x_n."""
    _require_omega(f.chain)
    g = normalize(f)
    if any(v is None for v in g.values):
        raise MapError("map has infinite image (not in J_f)")
    image = list(g.values)
    breakpoints = [f.chain.least(c) for c in g.cuts[1:-1]]
    return image, breakpoints


def subset_to_jf(chain: ChainSpec, image: Sequence[Element], breakpoints: Sequence[Element]) -> PcMap:
    _require_omega(chain)
    image = [chain.check(e) for e in image]
    breakpoints = [chain.check(b) for b in breakpoints]
    if not image or len(breakpoints) != len(image) - 1:
        raise MapError("need exactly one breakpoint fewer than image points")
    if any(a >= b for a, b in zip(image, image[1:])):
        raise MapError("image must be strictly increasing")
    if any(a >= b for a, b in zip(breakpoints, breakpoints[1:])):
        raise MapError("breakpoints must be strictly increasing")
    if breakpoints and breakpoints[0].coord <= 0:
        raise MapError("breakpoints must exceed the least element")
    cuts = (chain.bottom,) + tuple(chain.before(b) for b in breakpoints) + (chain.top,)
    return normalize(PcMap(chain, cuts, tuple(image)))


def dual_map(f: PcMap) -> PcMap:
    """The conjugate of f by the order-reversing transport onto the dual chain."""
    ch = f.chain
    cuts = tuple(ch.reflect_cut(c) for c in reversed(f.cuts))
    vals = tuple(None if v is None else ch.reflect(v) for v in reversed(f.values))
    return normalize(PcMap(ch.dual_chain, cuts, vals))


def restrict(f: PcMap, lo: Cut, hi: Cut) -> list[tuple]:
    """f's parts clipped to the cut range (lo, hi)."""
    out = []
    for a, b, v in f.parts:
        a, b = max(a, lo), min(b, hi)
        if a < b:
            out.append((a, b, v))
    return out


_EPS = Fraction(1, 1000)


def probe_points(f: PcMap) -> set[Element]:
    """Elements next to every cut and every constant value of f."""
    ch = f.chain
    pts = set()
    for c in f.cuts:
        if len(c) == 1:
            for e in (ch.least(c), ch.greatest(c)):
                if e is not None:
                    pts.add(e)
            continue
        k, x, _ = c
        s = k // 2
        seg = ch.segments[s]
        step = _EPS if seg.dense else 1
        for y in (x - step, x, x + step):
            if seg.admits(y):
                pts.add(Element(s, y))
    pts.update(v for v in f.values if v is not None)
    return pts
