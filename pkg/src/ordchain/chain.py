"""Countable chains built as finite ordinal sums of primitive segments.

A chain is a tuple of segments; an element is addressed by (segment index,
coordinate).  Positions *between* elements are represented internally as
"cuts", plain tuples that sort together with element keys:

    gap(i)         (2*i,)           boundary just before segment i
    before(e)      (2*s+1, c, 0)    just below element (s, c)
    after(e)       (2*s+1, c, 2)    just above element (s, c)

An element (s, c) has key (2*s+1, c, 1), so ``cut < key(e)`` decides which
side of a cut an element lies on.  ``ChainSpec.canon`` gives every cut a
unique representative, which makes structural comparison of maps exact.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Union

Coord = Union[int, Fraction]
Cut = tuple

FIN = "fin"
OMEGA_UP = "omega_up"
OMEGA_DOWN = "omega_down"
INT_LINE = "int_line"
RAT_LINE = "rat_line"
KINDS = (FIN, OMEGA_UP, OMEGA_DOWN, INT_LINE, RAT_LINE)


class ChainError(ValueError):
    pass


class AddressError(ChainError):
    """An element address does not belong to the chain."""


class EmptyIntervalError(ChainError):
    pass


@dataclass(frozen=True)
class Segment:
    kind: str
    size: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ChainError(f"unknown segment kind {self.kind!r}")
        if self.kind == FIN:
            if not isinstance(self.size, int) or self.size < 1:
                raise ChainError("fin segment needs size >= 1")
        elif self.size is not None:
            raise ChainError(f"{self.kind} segment takes no size")

    @property
    def finite(self) -> bool:
        return self.kind == FIN

    @property
    def dense(self) -> bool:
        return self.kind == RAT_LINE

    @property
    def min_coord(self) -> Optional[int]:
        return 0 if self.kind in (FIN, OMEGA_UP) else None

    @property
    def max_coord(self) -> Optional[int]:
        if self.kind == FIN:
            return self.size - 1
        return 0 if self.kind == OMEGA_DOWN else None

    def admits(self, c) -> bool:
        if self.dense:
            return isinstance(c, (int, Fraction))
        if isinstance(c, Fraction):
            if c.denominator != 1:
                return False
        elif not isinstance(c, int):
            return False
        lo, hi = self.min_coord, self.max_coord
        return (lo is None or c >= lo) and (hi is None or c <= hi)

    def flip(self, c: Coord) -> Coord:
        return self.size - 1 - c if self.kind == FIN else -c

    def dual(self) -> "Segment":
        swap = {OMEGA_UP: OMEGA_DOWN, OMEGA_DOWN: OMEGA_UP}
        return Segment(swap.get(self.kind, self.kind), self.size)

    def __str__(self):
        names = {OMEGA_UP: "ω", OMEGA_DOWN: "ω*", INT_LINE: "ζ", RAT_LINE: "η"}
        return f"{self.size}" if self.kind == FIN else names[self.kind]


def fin(n: int) -> Segment:
    return Segment(FIN, n)


OMEGA = Segment(OMEGA_UP)
OMEGA_STAR = Segment(OMEGA_DOWN)
ZETA = Segment(INT_LINE)
ETA = Segment(RAT_LINE)


def coord_of(value, dense: bool) -> Coord:
    """Exact coordinate: ``int`` on discrete segments, ``Fraction`` on dense ones."""
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, bool):
        raise AddressError("boolean is not a coordinate")
    if isinstance(value, float):
        raise AddressError("floating point coordinates are not accepted")
    if dense:
        return Fraction(value)
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise AddressError(f"non-integer coordinate {value} on a discrete segment")
        return int(value)
    return int(value)


@dataclass(frozen=True, order=True)
class Element:
    seg: int
    coord: Coord

    @property
    def key(self) -> tuple:
        return (2 * self.seg + 1, self.coord, 1)

    def __str__(self):
        return f"({self.seg},{self.coord})"


class BoundKind(enum.Enum):
    NEG_INF = "neg_inf"
    POS_INF = "pos_inf"
    AT = "at"
    GAP = "gap"


@dataclass(frozen=True)
class Bound:
    """Interval endpoint.

    ``GAP`` bounds name the boundary immediately before segment ``seg``; they
    are needed where no element sits on the boundary (e.g. between ω and ω*).
    """

    kind: BoundKind
    element: Optional[Element] = None
    inclusive: bool = True
    seg: Optional[int] = None

    @classmethod
    def neg_inf(cls) -> "Bound":
        return cls(BoundKind.NEG_INF)

    @classmethod
    def pos_inf(cls) -> "Bound":
        return cls(BoundKind.POS_INF)

    @classmethod
    def at(cls, element: Element, inclusive: bool = True) -> "Bound":
        return cls(BoundKind.AT, element, inclusive)

    @classmethod
    def gap(cls, seg: int) -> "Bound":
        return cls(BoundKind.GAP, seg=seg)

    def __str__(self):
        if self.kind is BoundKind.AT:
            return f"{self.element}{'' if self.inclusive else '°'}"
        if self.kind is BoundKind.GAP:
            return f"|{self.seg}"
        return "-∞" if self.kind is BoundKind.NEG_INF else "+∞"


@dataclass(frozen=True)
class Interval:
    lower: Bound
    upper: Bound

    @classmethod
    def closed(cls, a: Element, b: Element) -> "Interval":
        return cls(Bound.at(a), Bound.at(b))

    @classmethod
    def open(cls, a: Element, b: Element) -> "Interval":
        return cls(Bound.at(a, False), Bound.at(b, False))

    @classmethod
    def whole(cls) -> "Interval":
        return cls(Bound.neg_inf(), Bound.pos_inf())

    def __str__(self):
        lb = "[" if self.lower.kind is BoundKind.AT and self.lower.inclusive else "("
        ub = "]" if self.upper.kind is BoundKind.AT and self.upper.inclusive else ")"
        lo = self.lower.element if self.lower.kind is BoundKind.AT else self.lower
        hi = self.upper.element if self.upper.kind is BoundKind.AT else self.upper
        return f"{lb}{lo}, {hi}{ub}"


class Region(enum.Enum):
    MINUS = "minus"
    ZERO = "zero"
    PLUS = "plus"

    def dual(self) -> "Region":
        return {Region.MINUS: Region.PLUS, Region.PLUS: Region.MINUS}.get(self, self)


@functools.total_ordering
@dataclass(frozen=True)
class Card:
    """Cardinality of a subset of a countable chain; ``count=None`` is ℵ₀."""

    count: Optional[int] = None

    @property
    def infinite(self) -> bool:
        return self.count is None

    def __lt__(self, other: "Card") -> bool:
        if self.count is None:
            return False
        return other.count is None or self.count < other.count

    def __str__(self):
        return "ℵ₀" if self.count is None else str(self.count)


ALEPH0 = Card(None)


@dataclass(frozen=True)
class Regions:
    minus: Interval
    zero: Interval
    plus: Interval


@dataclass(frozen=True)
class ChainSpec:
    segments: tuple

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise ChainError("a chain needs at least one segment")
        if not all(isinstance(s, Segment) for s in segs):
            raise ChainError("segments must be Segment values")
        if all(s.finite for s in segs):
            raise ChainError("at least one segment must be infinite")

    @classmethod
    def of(cls, *segments: Segment) -> "ChainSpec":
        return cls(tuple(segments))

    def __len__(self):
        return len(self.segments)

    def __str__(self):
        return "⊕".join(str(s) for s in self.segments)

    # -- elements -------------------------------------------------------

    def element(self, seg: int, coord) -> Element:
        if not 0 <= seg < len(self.segments):
            raise AddressError(f"segment index {seg} out of range")
        s = self.segments[seg]
        e = Element(seg, coord_of(coord, s.dense))
        if not s.admits(e.coord):
            raise AddressError(f"coordinate {coord} not in segment {seg} ({s.kind})")
        return e

    def check(self, e: Element) -> Element:
        if not isinstance(e, Element) or not 0 <= e.seg < len(self.segments):
            raise AddressError(f"invalid element {e!r}")
        if not self.segments[e.seg].admits(e.coord):
            raise AddressError(f"coordinate {e.coord} not in segment {e.seg}")
        return e

    def compare(self, a: Element, b: Element) -> int:
        """-1, 0 or 1 as a is less than, equal to, or greater than b."""
        self.check(a)
        self.check(b)
        return (a > b) - (a < b)

    # -- cuts -----------------------------------------------------------

    def gap(self, i: int) -> Cut:
        return (2 * i,)

    @property
    def bottom(self) -> Cut:
        return (0,)

    @property
    def top(self) -> Cut:
        return (2 * len(self.segments),)

    def canon(self, cut: Cut) -> Cut:
        if len(cut) == 1:
            return cut
        k, c, side = cut
        s = k // 2
        seg = self.segments[s]
        if seg.dense:
            return cut
        if side == 2:
            if seg.max_coord is not None and c >= seg.max_coord:
                return (2 * s + 2,)
            return (k, c + 1, 0)
        if seg.min_coord is not None and c <= seg.min_coord:
            return (2 * s,)
        return cut

    def before(self, e: Element) -> Cut:
        return self.canon((2 * e.seg + 1, e.coord, 0))

    def after(self, e: Element) -> Cut:
        return self.canon((2 * e.seg + 1, e.coord, 2))

    def lower_cut(self, b: Bound) -> Cut:
        if b.kind is BoundKind.NEG_INF:
            return self.bottom
        if b.kind is BoundKind.POS_INF:
            return self.top
        if b.kind is BoundKind.GAP:
            return self._gap_cut(b.seg)
        e = self.check(b.element)
        return self.before(e) if b.inclusive else self.after(e)

    def upper_cut(self, b: Bound) -> Cut:
        if b.kind is BoundKind.NEG_INF:
            return self.bottom
        if b.kind is BoundKind.POS_INF:
            return self.top
        if b.kind is BoundKind.GAP:
            return self._gap_cut(b.seg)
        e = self.check(b.element)
        return self.after(e) if b.inclusive else self.before(e)

    def _gap_cut(self, i) -> Cut:
        if not isinstance(i, int) or not 0 <= i <= len(self.segments):
            raise AddressError(f"gap index {i} out of range")
        return (2 * i,)

    def lower_bound(self, cut: Cut) -> Bound:
        """Bound describing {x : x > cut} as an inclusive-or-exclusive lower bound."""
        n = len(self.segments)
        if len(cut) == 1:
            i = cut[0] // 2
            if i == 0:
                return Bound.neg_inf()
            if i == n:
                return Bound.pos_inf()
            if self.segments[i].min_coord is not None:
                return Bound.at(Element(i, self.segments[i].min_coord))
            if self.segments[i - 1].max_coord is not None:
                return Bound.at(Element(i - 1, self.segments[i - 1].max_coord), False)
            return Bound.gap(i)
        k, c, side = cut
        return Bound.at(Element(k // 2, c), side == 0)

    def upper_bound(self, cut: Cut) -> Bound:
        """Bound describing {x : x < cut}; discrete segments come out closed."""
        n = len(self.segments)
        if len(cut) == 1:
            i = cut[0] // 2
            if i == n:
                return Bound.pos_inf()
            if i == 0:
                return Bound.neg_inf()
            if self.segments[i - 1].max_coord is not None:
                return Bound.at(Element(i - 1, self.segments[i - 1].max_coord))
            if self.segments[i].min_coord is not None:
                return Bound.at(Element(i, self.segments[i].min_coord), False)
            return Bound.gap(i)
        k, c, side = cut
        s = k // 2
        if not self.segments[s].dense:
            return Bound.at(Element(s, c - 1))
        return Bound.at(Element(s, c), side == 2)

    def cuts(self, iv: Interval) -> tuple[Cut, Cut]:
        return self.lower_cut(iv.lower), self.upper_cut(iv.upper)

    def interval(self, lo: Cut, hi: Cut) -> Interval:
        return Interval(self.lower_bound(lo), self.upper_bound(hi))

    def contains(self, iv: Interval, e: Element) -> bool:
        lo, hi = self.cuts(iv)
        return lo < self.check(e).key < hi

    # -- per-segment coordinate ranges ------------------------------------

    def _seg_range(self, s: int, lo: Cut, hi: Cut):
        """Coordinate bounds (a, a_closed, b, b_closed) of the part of segment s
        strictly between the cuts, or None if empty.  ``None`` ends are unbounded."""
        seg = self.segments[s]
        lo = max(lo, (2 * s,))
        hi = min(hi, (2 * s + 2,))
        if lo >= hi:
            return None
        if len(lo) == 1:
            a, ac = seg.min_coord, True
        else:
            a, ac = lo[1], lo[2] == 0
        if len(hi) == 1:
            b, bc = seg.max_coord, True
        else:
            b, bc = hi[1], hi[2] == 2
        if not seg.dense:
            if a is not None and not ac:
                a, ac = a + 1, True
            if b is not None and not bc:
                b, bc = b - 1, True
            if a is not None and b is not None and a > b:
                return None
        return a, ac, b, bc

    def _segments_between(self, lo: Cut, hi: Cut) -> range:
        first = max(0, (lo[0] - 1) // 2) if len(lo) > 1 else lo[0] // 2
        last = min(len(self.segments) - 1, (hi[0] - 1) // 2) if len(hi) > 1 else hi[0] // 2 - 1
        return range(first, last + 1)

    def cut_card(self, lo: Cut, hi: Cut) -> Card:
        total = 0
        for s in self._segments_between(lo, hi):
            r = self._seg_range(s, lo, hi)
            if r is None:
                continue
            a, ac, b, bc = r
            if a is None or b is None:
                return ALEPH0
            if self.segments[s].dense:
                if a == b and ac and bc:
                    total += 1
                    continue
                return ALEPH0
            total += b - a + 1
        return Card(total)

    def cut_elements(self, lo: Cut, hi: Cut) -> Iterator[Element]:
        """All elements between two cuts; the range must be finite."""
        if self.cut_card(lo, hi).infinite:
            raise ChainError("cannot enumerate an infinite interval")
        for s in self._segments_between(lo, hi):
            r = self._seg_range(s, lo, hi)
            if r is None:
                continue
            a, _, b, _ = r
            if self.segments[s].dense:
                yield Element(s, a)
            else:
                for c in range(a, b + 1):
                    yield Element(s, c)

    def is_empty(self, lo: Cut, hi: Cut) -> bool:
        return lo >= hi

    def cut_pick(self, lo: Cut, hi: Cut) -> Element:
        for s in self._segments_between(lo, hi):
            r = self._seg_range(s, lo, hi)
            if r is None:
                continue
            a, ac, b, bc = r
            if self.segments[s].dense:
                return Element(s, simplest_in(a, ac, b, bc))
            if (a is None or a <= 0) and (b is None or b >= 0):
                return Element(s, 0)
            return Element(s, a if a is not None and a > 0 else b)
        raise EmptyIntervalError("cannot pick from an empty interval")

    # -- queries -----------------------------------------------------------------

    def downset_cardinality(self, x: Element) -> Card:
        return self.cut_card(self.bottom, self.after(self.check(x)))

    def upset_cardinality(self, x: Element) -> Card:
        return self.cut_card(self.before(self.check(x)), self.top)

    def classify(self, x: Element) -> Region:
        if not self.downset_cardinality(x).infinite:
            return Region.MINUS
        if not self.upset_cardinality(x).infinite:
            return Region.PLUS
        return Region.ZERO

    @functools.cached_property
    def region_cuts(self) -> tuple[Cut, Cut]:
        """Cuts m <= p with X⁻ = (bottom, m), X⁰ = (m, p), X⁺ = (p, top)."""
        segs, n = self.segments, len(self.segments)
        m = 0
        while m < n and segs[m].kind == FIN:
            m += 1
        if m < n and segs[m].kind == OMEGA_UP:
            m += 1
        p = n
        while p > 0 and segs[p - 1].kind == FIN:
            p -= 1
        if p > 0 and segs[p - 1].kind == OMEGA_DOWN:
            p -= 1
        p = max(p, m)
        return (2 * m,), (2 * p,)

    def region_of(self, x: Element) -> Region:
        m, p = self.region_cuts
        k = x.key
        return Region.MINUS if k < m else Region.PLUS if k > p else Region.ZERO

    def region_cut_pair(self, r: Region) -> tuple[Cut, Cut]:
        m, p = self.region_cuts
        return {Region.MINUS: (self.bottom, m), Region.ZERO: (m, p), Region.PLUS: (p, self.top)}[r]

    def regions(self) -> Regions:
        m, p = self.region_cuts
        return Regions(
            minus=self.interval(self.bottom, m),
            zero=self.interval(m, p),
            plus=self.interval(p, self.top),
        )

    def interval_cardinality(self, iv: Interval) -> Card:
        return self.cut_card(*self.cuts(iv))

    def strictly_above(self, s: Interval) -> Bound:
        """Lower bound of {x : x > every element of s}."""
        if self.is_empty(*self.cuts(s)):
            return Bound.neg_inf()
        u = s.upper
        if u.kind is BoundKind.AT:
            self.check(u.element)
            return Bound.at(u.element, not u.inclusive)
        if u.kind is BoundKind.GAP:
            return Bound.gap(u.seg)
        return Bound.pos_inf()

    def strictly_below(self, s: Interval) -> Bound:
        """Upper bound of {x : x < every element of s}."""
        if self.is_empty(*self.cuts(s)):
            return Bound.pos_inf()
        lo = s.lower
        if lo.kind is BoundKind.AT:
            self.check(lo.element)
            return Bound.at(lo.element, not lo.inclusive)
        if lo.kind is BoundKind.GAP:
            return Bound.gap(lo.seg)
        return Bound.neg_inf()

    def pick_element(self, iv: Interval) -> Element:
        return self.cut_pick(*self.cuts(iv))

    def least(self, lo: Cut) -> Optional[Element]:
        """Least element above a cut, if one exists."""
        if lo >= self.top:
            return None
        if len(lo) == 1:
            seg = self.segments[lo[0] // 2]
            return Element(lo[0] // 2, seg.min_coord) if seg.min_coord is not None else None
        k, c, side = lo
        return Element(k // 2, c) if side == 0 else None

    def greatest(self, hi: Cut) -> Optional[Element]:
        """Greatest element below a cut, if one exists."""
        if hi <= self.bottom:
            return None
        if len(hi) == 1:
            s = hi[0] // 2 - 1
            seg = self.segments[s]
            return Element(s, seg.max_coord) if seg.max_coord is not None else None
        k, c, side = hi
        if side == 2:
            return Element(k // 2, c)
        return None if self.segments[k // 2].dense else Element(k // 2, c - 1)

    # -- duality -----------------------------------------------------------

    @functools.cached_property
    def dual_chain(self) -> "ChainSpec":
        return ChainSpec(tuple(s.dual() for s in reversed(self.segments)))

    def reflect(self, e: Element) -> Element:
        """Order-reversing bijection onto ``dual_chain``."""
        n = len(self.segments)
        return Element(n - 1 - e.seg, self.segments[e.seg].flip(e.coord))

    def reflect_cut(self, cut: Cut) -> Cut:
        n = len(self.segments)
        if len(cut) == 1:
            return (2 * n - cut[0],)
        k, c, side = cut
        s = k // 2
        return self.dual_chain.canon((2 * (n - 1 - s) + 1, self.segments[s].flip(c), 2 - side))

    def dual(self) -> tuple["ChainSpec", Callable[[Element], Element]]:
        return self.dual_chain, self.reflect

    def window(self, size: int) -> list[Element]:
        """Deterministic sample of up to ``size`` elements per segment, sorted."""
        out = []
        for s, seg in enumerate(self.segments):
            if seg.kind == FIN:
                cs = range(min(size, seg.size))
            elif seg.kind == OMEGA_UP:
                cs = range(size)
            elif seg.kind == OMEGA_DOWN:
                cs = range(-size + 1, 1)
            elif seg.kind == INT_LINE:
                cs = range(-(size // 2), size - size // 2)
            else:
                cs = [Fraction(k, 2) for k in range(-(size // 2), size - size // 2)]
            out.extend(Element(s, c) for c in cs)
        return out


def simplest_in(a, a_closed: bool, b, b_closed: bool) -> Fraction:
    """Rational of least |numerator|, then least denominator, in the interval.

    ``None`` endpoints are unbounded.  The interval must be nonempty.
    """
    def holds_zero():
        lo_ok = a is None or a < 0 or (a == 0 and a_closed)
        hi_ok = b is None or b > 0 or (b == 0 and b_closed)
        return lo_ok and hi_ok

    if holds_zero():
        return Fraction(0)
    if a is not None and a >= 0:
        return _simplest_positive(Fraction(a), a_closed, b, b_closed)
    return -_simplest_positive(-Fraction(b), b_closed, None if a is None else -a, a_closed)


def _simplest_positive(a: Fraction, ac: bool, b, bc: bool) -> Fraction:
    # Stern-Brocot descent: the first tree node inside the interval has both
    # the least numerator and the least denominator.
    n = a.numerator // a.denominator
    m = n if (ac and a == n) else n + 1
    if b is None or m < b or (m == b and bc):
        return Fraction(m)
    lo_inv = Fraction(1) / (Fraction(b) - n)
    hi_inv = None if a == n else Fraction(1) / (a - n)
    return n + 1 / _simplest_positive(lo_inv, bc, hi_inv, ac)


NATURALS = ChainSpec.of(OMEGA)
NEG_INTEGERS = ChainSpec.of(OMEGA_STAR)
INTEGERS = ChainSpec.of(ZETA)
RATIONALS = ChainSpec.of(ETA)
Z_ARROW = ChainSpec.of(OMEGA, fin(1), OMEGA_STAR)
OMEGA_OMEGA_STAR = ChainSpec.of(OMEGA, OMEGA_STAR)
FIN3_Q = ChainSpec.of(fin(3), ETA)
Q_1_Q = ChainSpec.of(ETA, fin(1), ETA)

CATALOG = {
    "naturals": NATURALS,
    "neg_integers": NEG_INTEGERS,
    "integers": INTEGERS,
    "rationals": RATIONALS,
    "z_arrow": Z_ARROW,
    "omega_omega_star": OMEGA_OMEGA_STAR,
    "fin3_rationals": FIN3_Q,
    "rationals_1_rationals": Q_1_Q,
}
