"""JSON encoding for chains, elements, bounds, maps and results.

Coordinates travel as strings ("5", "-3/7") so nothing passes through floats.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .chain import (
    Bound,
    BoundKind,
    Card,
    ChainError,
    ChainSpec,
    Element,
    Interval,
    Region,
    Segment,
)
from .maps import IDENTITY, Action, ImageSummary, JCertificate, PcMap
from .factor import (
    BoundedImageEnd,
    EmptyX0Crossing,
    FactorizationResult,
    FactorizationTrace,
    Generated,
    Obstructed,
    Singleton,
    TwoFactor,
    VerificationReport,
)


class DecodeError(ValueError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _coord_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


# -- chain_core -------------------------------------------------------------

def chain_to_json(ch: ChainSpec) -> dict:
    segs = []
    for s in ch.segments:
        segs.append({"type": s.kind, "size": s.size} if s.size is not None else {"type": s.kind})
    return {"segments": segs}


def chain_from_json(d: Any) -> ChainSpec:
    try:
        return ChainSpec(tuple(Segment(s["type"], s.get("size")) for s in d["segments"]))
    except (KeyError, TypeError) as exc:
        raise DecodeError(f"malformed chain: {exc}") from exc


def element_to_json(e: Element) -> dict:
    return {"seg": e.seg, "coord": _coord_str(e.coord)}


def element_from_json(ch: ChainSpec, d: Any) -> Element:
    try:
        seg, coord = d["seg"], d["coord"]
    except (KeyError, TypeError) as exc:
        raise DecodeError(f"malformed element: {d!r}") from exc
    if not isinstance(seg, int) or isinstance(coord, float):
        raise DecodeError(f"malformed element: {d!r}")
    try:
        return ch.element(seg, coord)
    except (ValueError, ZeroDivisionError) as exc:
        raise DecodeError(str(exc)) from exc


def bound_to_json(b: Bound) -> dict:
    if b.kind is BoundKind.AT:
        return {"type": "at", "element": element_to_json(b.element), "inclusive": b.inclusive}
    if b.kind is BoundKind.GAP:
        return {"type": "gap", "seg": b.seg}
    return {"type": b.kind.value}


def bound_from_json(ch: ChainSpec, d: Any) -> Bound:
    kind = d.get("type") if isinstance(d, dict) else None
    if kind == "neg_inf":
        return Bound.neg_inf()
    if kind == "pos_inf":
        return Bound.pos_inf()
    if kind == "gap":
        return Bound.gap(d["seg"])
    if kind == "at":
        return Bound.at(element_from_json(ch, d["element"]), bool(d.get("inclusive", True)))
    raise DecodeError(f"malformed bound: {d!r}")


def interval_to_json(ch: ChainSpec, iv: Interval) -> dict:
    lo, hi = ch.cuts(iv)
    return {"lower": bound_to_json(iv.lower), "upper": bound_to_json(iv.upper), "empty": lo >= hi}


def interval_from_json(ch: ChainSpec, d: Any) -> Interval:
    return Interval(bound_from_json(ch, d["lower"]), bound_from_json(ch, d["upper"]))


def card_to_json(c: Card) -> dict:
    if c.infinite:
        return {"kind": "countably_infinite"}
    return {"kind": "finite", "count": c.count}


def region_to_json(r: Region) -> str:
    return r.value


# -- endo_map -----------------------------------------------------------------

def map_to_json(f: PcMap, with_chain: bool = True) -> dict:
    pieces = []
    for iv, act in f.pieces:
        a = {"kind": "id"} if act.is_identity else {"kind": "const", "value": element_to_json(act.value)}
        pieces.append({"lower": bound_to_json(iv.lower), "upper": bound_to_json(iv.upper), "action": a})
    d = {"chain": chain_to_json(f.chain)} if with_chain else {}
    d["pieces"] = pieces
    return d


def map_from_json(d: Any, chain: ChainSpec | None = None, check: bool = True) -> PcMap:
    if not isinstance(d, dict) or "pieces" not in d:
        raise DecodeError("malformed map: expected an object with 'pieces'")
    ch = chain_from_json(d["chain"]) if "chain" in d else chain
    if ch is None:
        raise DecodeError("map has no chain")
    if chain is not None and ch != chain:
        raise DecodeError(f"map chain {ch} does not match {chain}")
    pieces = []
    try:
        for p in d["pieces"]:
            act = p["action"]
            if act["kind"] == "id":
                a = IDENTITY
            elif act["kind"] == "const":
                a = Action.const(element_from_json(ch, act["value"]))
            else:
                raise DecodeError(f"unknown action {act['kind']!r}")
            pieces.append((interval_from_json(ch, p), a))
        return PcMap.from_pieces(ch, pieces, check=check)
    except (KeyError, TypeError) as exc:
        raise DecodeError(f"malformed map piece: {exc}") from exc
    except ChainError as exc:
        raise DecodeError(str(exc)) from exc


def cert_to_json(ch: ChainSpec, c: JCertificate) -> dict:
    if c.in_j:
        return {"verdict": "in_j", "witness": interval_to_json(ch, c.witness)}
    return {"verdict": "not_in_j", "image_cardinality": card_to_json(c.image_cardinality)}


def image_summary_to_json(ch: ChainSpec, s: ImageSummary) -> dict:
    return {
        "identity_intervals": [interval_to_json(ch, iv) for iv in s.identity_intervals],
        "constant_values": [element_to_json(e) for e in s.constant_values],
        "cardinality": card_to_json(s.cardinality),
    }


# -- factorizer ---------------------------------------------------------------

def witness_to_json(w) -> dict:
    if isinstance(w, EmptyX0Crossing):
        return {
            "kind": "empty_x0_crossing",
            "source": element_to_json(w.source),
            "image": element_to_json(w.image),
            "source_region": w.source_region.value,
        }
    if isinstance(w, BoundedImageEnd):
        return {
            "kind": "bounded_image_end",
            "end": w.end,
            "value": element_to_json(w.value),
            "region": w.region.value,
        }
    raise TypeError(w)


def result_to_json(r: FactorizationResult) -> dict:
    o = r.outcome
    if isinstance(o, FactorizationTrace):
        return {
            "outcome": "factored",
            "trace": {
                "zero": element_to_json(o.zero),
                "case": o.case.value,
                "i": o.i,
                "k": o.k,
                "factors": [map_to_json(f) for f in o.factors],
            },
        }
    if isinstance(o, TwoFactor):
        d = {"outcome": "two_factor", "a1": map_to_json(o.a1), "a2": map_to_json(o.a2),
             "construction": o.construction}
        if o.u is not None:
            d["u"], d["v"] = element_to_json(o.u), element_to_json(o.v)
        return d
    if isinstance(o, Singleton):
        return {"outcome": "singleton"}
    if isinstance(o, Obstructed):
        return {"outcome": "obstructed", "witness": witness_to_json(o.witness)}
    raise TypeError(o)


def factors_from_json(d: Any, alpha: PcMap) -> list[PcMap]:
    """Factor list from a bare list of maps or a factorize result."""
    ch = alpha.chain
    if isinstance(d, list):
        return [map_from_json(m, ch) for m in d]
    if not isinstance(d, dict):
        raise DecodeError("factors must be a list of maps or a factorization result")
    outcome = d.get("outcome")
    if outcome == "factored":
        return [map_from_json(m, ch) for m in d["trace"]["factors"]]
    if outcome == "two_factor":
        return [map_from_json(d["a1"], ch), map_from_json(d["a2"], ch)]
    if outcome == "singleton":
        return [alpha]
    if outcome == "obstructed":
        raise DecodeError("an obstructed result has no factors to verify")
    raise DecodeError(f"unknown outcome {outcome!r}")


def report_to_json(ch: ChainSpec, rep: VerificationReport) -> dict:
    mismatch = None
    if rep.window_mismatch is not None:
        x, got, want = rep.window_mismatch
        mismatch = {"x": element_to_json(x), "product": element_to_json(got), "alpha": element_to_json(want)}
    return {
        "passed": rep.passed,
        "symbolic": {"passed": rep.symbolic_ok, "first_difference": rep.first_difference},
        "factors": {
            "passed": rep.factors_in_j,
            "certificates": [cert_to_json(ch, c) for c in rep.certificates],
        },
        "window": {"passed": rep.window_ok, "points": rep.window_points, "mismatch": mismatch},
    }


def decision_to_json(ch: ChainSpec, dec) -> dict:
    if isinstance(dec, Generated):
        return {"generated": True, "zero_witness": element_to_json(dec.zero_witness),
                "chain": chain_to_json(ch)}
    return {"generated": False, "reason": dec.reason, "chain": chain_to_json(ch)}
