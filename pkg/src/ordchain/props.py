"""Seeded random maps and executable checks for the structural facts about J.

Every case draws its randomness from ``(seed, case index)`` alone, so a
failing case can be replayed in isolation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .chain import (
    CATALOG,
    ChainSpec,
    Cut,
    Element,
    NATURALS,
    NEG_INTEGERS,
    OMEGA_DOWN,
    OMEGA_OMEGA_STAR,
    OMEGA_UP,
    Region,
)
from .maps import (
    MapError,
    PcMap,
    compose,
    compose_all,
    evaluate_sorted,
    image_extreme,
    in_j,
    j_membership,
    jf_to_subset,
    normalize,
    probe_points,
    subset_to_jf,
)


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_pieces: int = 6
    coordinate_band: int = 50
    product_length: int = 5

    def __post_init__(self):
        for name in ("max_pieces", "coordinate_band", "product_length"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def rng(self, case: int = 0) -> random.Random:
        return random.Random(f"{self.seed}:{case}")


# -- generators ----------------------------------------------------------------

def random_element(chain: ChainSpec, rng: random.Random, band: int,
                   lo: Optional[Cut] = None, hi: Optional[Cut] = None) -> Element:
    """A random element strictly between two cuts, kept near [-band, band] when possible."""
    lo = chain.bottom if lo is None else lo
    hi = chain.top if hi is None else hi
    segs = [s for s in chain._segments_between(lo, hi) if chain._seg_range(s, lo, hi)]
    if not segs:
        raise MapError("no element between the given cuts")
    s = rng.choice(segs)
    a, ac, b, bc = chain._seg_range(s, lo, hi)
    A = a if a is not None else (-band if b is None or b >= -band else b - band)
    B = b if b is not None else (band if A <= band else A + band)
    if not chain.segments[s].dense:
        return Element(s, rng.randint(A, B))
    lo_ok = a is None or ac
    hi_ok = b is None or bc
    for _ in range(20):
        den = rng.randint(1, 6)
        n0, n1 = math.ceil(A * den), math.floor(B * den)
        if n0 > n1:
            continue
        x = Fraction(rng.randint(n0, n1), den)
        if (x > A or (x == A and lo_ok)) and (x < B or (x == B and hi_ok)):
            return Element(s, x)
    return Element(s, A if A == B else (Fraction(A) + Fraction(B)) / 2)


def random_cuts(chain: ChainSpec, rng: random.Random, count: int, band: int) -> list[Cut]:
    """Up to ``count`` distinct interior cuts, sorted."""
    n = len(chain)
    out = set()
    for _ in range(count):
        if n > 1 and rng.random() < 0.15:
            out.add(chain.gap(rng.randint(1, n - 1)))
            continue
        e = random_element(chain, rng, band)
        out.add(chain.before(e) if rng.random() < 0.5 else chain.after(e))
    out.discard(chain.bottom)
    out.discard(chain.top)
    return sorted(out)


def random_j_map(chain: ChainSpec, cfg: GenConfig, rng: Optional[random.Random] = None) -> PcMap:
    """Monotone map with an identity piece on an infinite interval."""
    rng = rng or cfg.rng()
    band = cfg.coordinate_band
    cuts = [chain.bottom] + random_cuts(chain, rng, rng.randint(1, cfg.max_pieces) - 1, band) + [chain.top]
    spans = list(zip(cuts, cuts[1:]))
    infinite = [k for k, (a, b) in enumerate(spans) if chain.cut_card(a, b).infinite]
    ident = [rng.random() < 0.4 for _ in spans]
    ident[rng.choice(infinite)] = True
    vals: list[Optional[Element]] = [None] * len(spans)
    k = 0
    while k < len(spans):
        if ident[k]:
            k += 1
            continue
        end = k
        while end < len(spans) and not ident[end]:
            end += 1
        # constants between two identity pieces must stay inside the gap between them
        lo, hi = spans[k][0], spans[end - 1][1]
        run = sorted(random_element(chain, rng, band, lo, hi) for _ in range(end - k))
        vals[k:end] = run
        k = end
    return normalize(PcMap.build(chain, [(a, b, v) for (a, b), v in zip(spans, vals)]))


def random_jf_map(chain: ChainSpec, cfg: GenConfig, rng: Optional[random.Random] = None) -> PcMap:
    """All-constant monotone map with image size at most ``max_pieces``."""
    rng = rng or cfg.rng()
    band = cfg.coordinate_band
    cuts = [chain.bottom] + random_cuts(chain, rng, rng.randint(1, cfg.max_pieces) - 1, band) + [chain.top]
    want = len(cuts) - 1
    values = set()
    for _ in range(50 * want):
        if len(values) == want:
            break
        values.add(random_element(chain, rng, band))
    values = sorted(values)
    while len(values) < want:
        values.append(values[-1])
    return normalize(PcMap.build(chain, [(a, b, v) for a, b, v in zip(cuts, cuts[1:], values)]))


def random_map(chain: ChainSpec, cfg: GenConfig, rng: Optional[random.Random] = None) -> PcMap:
    rng = rng or cfg.rng()
    return random_j_map(chain, cfg, rng) if rng.random() < 0.5 else random_jf_map(chain, cfg, rng)


# -- checks --------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    ok: bool
    witness: Any = None
    detail: str = ""


def _end_for(chain: ChainSpec) -> str:
    if len(chain) == 1 and chain.segments[0].kind == OMEGA_DOWN:
        return "min"
    if len(chain) == 1 and chain.segments[0].kind == OMEGA_UP:
        return "max"
    raise ValueError("check_no_end needs a single ω or ω* segment")


def check_no_end(chain: ChainSpec, factors: Sequence[PcMap], require_j: bool = True) -> Check:
    """The product's image has no minimum on ω* (no maximum on ω)."""
    end = _end_for(chain)
    if require_j and not all(in_j(f) for f in factors):
        raise ValueError("every factor must have infinite image")
    product = compose_all(factors)
    ext = image_extreme(product, end)
    if ext is None:
        return Check(True)
    return Check(False, ext, f"image has a {end}imum")


def check_region_preservation(chain: ChainSpec, f: PcMap, window: int = 50) -> Check:
    """No element of X⁺ goes to X⁻ and none of X⁻ goes to X⁺ (X⁰ empty).

    Decided from the pieces and independently on a window; the two verdicts
    must agree.
    """
    m, p = chain.region_cuts
    if m != p:
        raise ValueError("check_region_preservation needs an empty X⁰")
    g = normalize(f)
    structural = None
    for lo, hi, v in g.parts:
        if v is None:
            continue
        if max(lo, m) < hi and v.key < m:
            structural = (chain.cut_pick(max(lo, m), hi), v)
            break
        if lo < min(hi, m) and v.key > m:
            structural = (chain.cut_pick(lo, min(hi, m)), v)
            break
    xs = sorted(set(chain.window(window)) | probe_points(g))
    pointwise = None
    for x, y in zip(xs, evaluate_sorted(g, xs)):
        if chain.classify(x) is not chain.classify(y):
            pointwise = (x, y)
            break
    if (structural is None) != (pointwise is None):
        return Check(False, structural or pointwise, "structural and pointwise checks disagree")
    if structural is not None:
        return Check(False, structural, "region crossing")
    return Check(True)


def preimage(f: PcMap, b: Element) -> Optional[tuple[Cut, Cut]]:
    ch = f.chain
    spans = []
    for lo, hi, v in normalize(f).parts:
        if v == b:
            spans.append((lo, hi))
        elif v is None and lo < b.key < hi:
            spans.append((ch.before(b), ch.after(b)))
    if not spans:
        return None
    return min(s[0] for s in spans), max(s[1] for s in spans)


def check_preimage_bound(f: PcMap, b: Element) -> Check:
    """Some c lies strictly below the whole preimage of b."""
    ch = f.chain
    if not in_j(f):
        raise ValueError("map must have infinite image")
    if ch.classify(b) is not Region.PLUS:
        raise ValueError(f"{b} is not in X⁺")
    pre = preimage(f, b)
    if pre is None:
        raise ValueError(f"{b} is not in the image")
    below = ch.upper_cut(ch.strictly_below(ch.interval(*pre)))
    if below <= ch.bottom:
        return Check(False, b, "preimage is unbounded below")
    return Check(True, ch.cut_pick(ch.bottom, below))


def check_image_below(f: PcMap, y: Element) -> Check:
    """Some image point lies strictly below y."""
    ch = f.chain
    by = ch.before(y)
    for lo, hi, v in normalize(f).parts:
        if v is None:
            if lo < min(hi, by):
                return Check(True, ch.cut_pick(lo, min(hi, by)))
        elif v < y:
            return Check(True, v)
    return Check(False, y, "no image point below")


def check_note_n4(alpha: PcMap, beta: PcMap, b: Element) -> Check:
    """b' < c < preimage of b under alpha, with b' in the image of beta."""
    c = check_preimage_bound(alpha, b)
    if not c.ok:
        return c
    bp = check_image_below(beta, c.witness)
    if not bp.ok:
        return bp
    return Check(True, (bp.witness, c.witness))


def sampled_refutation(alpha: PcMap, sample: Sequence[PcMap], max_length: int) -> Optional[tuple]:
    """Search products of sample maps up to ``max_length`` for alpha.

    Returns the index tuple of a reproducing product, or None.  Products are
    deduplicated by normal form at each length.
    """
    target = normalize(alpha)
    layer = {normalize(s): (i,) for i, s in enumerate(sample)}
    if target in layer:
        return layer[target]
    for _ in range(max_length - 1):
        nxt = {}
        for prod, idx in layer.items():
            for i, s in enumerate(sample):
                h = compose(prod, s)
                if h == target:
                    return idx + (i,)
                nxt.setdefault(h, idx + (i,))
        layer = nxt
    return None


# -- suites --------------------------------------------------------------------

@dataclass
class PropertyReport:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    def record(self, seed: int, case: int, check: Check):
        self.cases += 1
        if not check.ok:
            self.failures.append({"seed": seed, "case": case, "witness": repr(check.witness),
                                  "detail": check.detail})

    def to_json(self) -> dict:
        return {"name": self.name, "cases": self.cases, "failures": self.failures}


def _suite_generators(cfg: GenConfig, cases: int) -> list[PropertyReport]:
    j = PropertyReport("random_j_map is in J and monotone")
    jf = PropertyReport("random_jf_map is in J_f and monotone")
    from .maps import is_monotone

    chains = list(CATALOG.values())
    for case in range(cases):
        rng = cfg.rng(case)
        ch = chains[case % len(chains)]
        f = random_j_map(ch, cfg, rng)
        j.record(cfg.seed, case, Check(in_j(f) and is_monotone(f).ok, str(f)))
        g = random_jf_map(ch, cfg, rng)
        cert = j_membership(g)
        ok = not cert.in_j and cert.image_cardinality.count <= cfg.max_pieces and is_monotone(g).ok
        jf.record(cfg.seed, case, Check(ok, str(g)))
    return [j, jf]


def _suite_no_end(cfg: GenConfig, cases: int) -> list[PropertyReport]:
    lo = PropertyReport("products of J maps on ω* have no minimum")
    hi = PropertyReport("products of J maps on ω have no maximum")
    ctl = PropertyReport("all-constant controls have an extreme")
    for case in range(cases):
        rng = cfg.rng(case)
        for ch, rep in ((NEG_INTEGERS, lo), (NATURALS, hi)):
            length = rng.randint(1, cfg.product_length)
            rep.record(cfg.seed, case, check_no_end(ch, [random_j_map(ch, cfg, rng) for _ in range(length)]))
            control = check_no_end(ch, [random_jf_map(ch, cfg, rng)], require_j=False)
            ctl.record(cfg.seed, case, Check(not control.ok, control.witness, "control not flagged"))
    return [lo, hi, ctl]


def _suite_region(cfg: GenConfig, cases: int) -> list[PropertyReport]:
    rep = PropertyReport("J maps on ω⊕ω* preserve X⁻ and X⁺")
    for case in range(cases):
        f = random_j_map(OMEGA_OMEGA_STAR, cfg, cfg.rng(case))
        rep.record(cfg.seed, case, check_region_preservation(OMEGA_OMEGA_STAR, f))
    return [rep]


def _suite_preimage(cfg: GenConfig, cases: int) -> list[PropertyReport]:
    pb = PropertyReport("image points of J maps on ω* have elements below their preimage")
    ib = PropertyReport("J maps on ω* have image points below every element")
    n4 = PropertyReport("b' < c < preimage of b for J maps alpha, beta on ω*")
    ch = NEG_INTEGERS
    band = cfg.coordinate_band
    for case in range(cases):
        rng = cfg.rng(case)
        alpha, beta = random_j_map(ch, cfg, rng), random_j_map(ch, cfg, rng)
        x = random_element(ch, rng, band)
        b = alpha(x)
        pb.record(cfg.seed, case, check_preimage_bound(alpha, b))
        ib.record(cfg.seed, case, check_image_below(alpha, random_element(ch, rng, band)))
        n4.record(cfg.seed, case, check_note_n4(alpha, beta, b))
    return [pb, ib, n4]


def _suite_composition(cfg: GenConfig, cases: int, window: int = 50) -> list[PropertyReport]:
    pw = PropertyReport("symbolic compose matches pointwise evaluation")
    assoc = PropertyReport("compose is associative")
    chains = list(CATALOG.values())
    for case in range(cases):
        rng = cfg.rng(case)
        ch = chains[case % len(chains)]
        f, g, h = (random_map(ch, cfg, rng) for _ in range(3))
        pw.record(cfg.seed, case, pointwise_agreement(f, g, window))
        lhs, rhs = compose(compose(f, g), h), compose(f, compose(g, h))
        assoc.record(cfg.seed, case, Check(lhs == rhs, (str(lhs), str(rhs))))
    return [pw, assoc]


def pointwise_agreement(f: PcMap, g: PcMap, window: int) -> Check:
    ch = f.chain
    xs = sorted(set(ch.window(window)) | probe_points(f) | probe_points(g))
    fg = compose(f, g)
    for x, a, b in zip(xs, evaluate_sorted(fg, xs), evaluate_sorted(g, evaluate_sorted(f, xs))):
        if a != b:
            return Check(False, (x, a, b))
    return Check(True)


def _suite_bijection(cfg: GenConfig, cases: int) -> list[PropertyReport]:
    rt = PropertyReport("subset_to_jf inverts jf_to_subset on ω")
    inj = PropertyReport("distinct J_f maps give distinct (image, breakpoints)")
    seen: dict = {}
    for case in range(cases):
        f = random_jf_map(NATURALS, cfg, cfg.rng(case))
        image, bps = jf_to_subset(f)
        back = subset_to_jf(NATURALS, image, bps)
        rt.record(cfg.seed, case, Check(back == f, str(f)))
        key = (tuple(image), tuple(bps))
        clash = key in seen and seen[key] != f
        seen.setdefault(key, f)
        inj.record(cfg.seed, case, Check(not clash, str(f)))
    return [rt, inj]


def _suite_main_lemma(cfg: GenConfig, cases: int) -> list[PropertyReport]:
    from .chain import FIN3_Q, INTEGERS, Q_1_Q, RATIONALS, Z_ARROW
    from .factor import decide_generation, main_lemma_factorize, verify_factorization

    rep = PropertyReport("finite-image maps factor through X⁰ into J maps")
    chains = [INTEGERS, RATIONALS, Z_ARROW, FIN3_Q, Q_1_Q]
    for case in range(cases):
        ch = chains[case % len(chains)]
        alpha = random_jf_map(ch, cfg, cfg.rng(case))
        t = main_lemma_factorize(alpha, decide_generation(ch).zero_witness)
        r = verify_factorization(alpha, t.factors)
        ok = r.passed and len(t.factors) == 2 * (t.k + 1) + 2
        rep.record(cfg.seed, case, Check(ok, str(alpha)))
    return [rep]


def _suite_two_factor(cfg: GenConfig, cases: int) -> list[PropertyReport]:
    from .chain import INTEGERS, RATIONALS
    from .factor import two_factor_factorize

    rep = PropertyReport("a1 a2 = alpha with a1, a2 in J")
    for case in range(cases):
        rng = cfg.rng(case)
        ch = (INTEGERS, RATIONALS)[case % 2]
        alpha = random_map(ch, cfg, rng)
        u = random_element(ch, rng, cfg.coordinate_band)
        tf = two_factor_factorize(alpha, u, alpha(u))
        ok = compose(tf.a1, tf.a2) == normalize(alpha) and in_j(tf.a1) and in_j(tf.a2)
        rep.record(cfg.seed, case, Check(ok, (str(alpha), str(u))))
    return [rep]


SUITES: dict[str, Callable[[GenConfig, int], list[PropertyReport]]] = {
    "generators": _suite_generators,
    "no_end": _suite_no_end,
    "region": _suite_region,
    "preimage": _suite_preimage,
    "composition": _suite_composition,
    "bijection": _suite_bijection,
    "main_lemma": _suite_main_lemma,
    "two_factor": _suite_two_factor,
}


def run_suite(name: str, cfg: GenConfig, cases: int) -> dict:
    if name == "all":
        reports = [r for fn in SUITES.values() for r in fn(cfg, cases)]
    elif name in SUITES:
        reports = SUITES[name](cfg, cases)
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    props = [r.to_json() for r in reports]
    return {
        "suite": name,
        "seed": cfg.seed,
        "passed": all(not p["failures"] for p in props),
        "properties": props,
    }
