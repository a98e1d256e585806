"""Command-line entry point: ``ordchain <subcommand> ...``.

Exit codes: 0 for an answer (an obstruction is an answer), 1 for a failed
verification or property, 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from . import codec, factor, finite, props
from .chain import ChainError, ChainSpec, NATURALS
from .maps import jf_to_subset, normalize, subset_to_jf


class UsageError(Exception):
    pass


def _load(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from exc


def _inline(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON argument {text!r}") from exc


def _chain(args) -> ChainSpec:
    return codec.chain_from_json(_load(args.chain))


def cmd_classify(args):
    ch = _chain(args)
    e = codec.element_from_json(ch, _inline(args.element))
    return {"element": codec.element_to_json(e), "region": ch.classify(e).value}, 0


def cmd_regions(args):
    ch = _chain(args)
    r = ch.regions()
    return {
        "minus": codec.interval_to_json(ch, r.minus),
        "zero": codec.interval_to_json(ch, r.zero),
        "plus": codec.interval_to_json(ch, r.plus),
    }, 0


def cmd_decide(args):
    ch = _chain(args)
    return codec.decision_to_json(ch, factor.decide_generation(ch)), 0


def cmd_factorize(args):
    ch = _chain(args)
    alpha = codec.map_from_json(_load(args.map), ch)
    if args.strategy == "auto":
        if args.zero is not None:
            raise UsageError("--zero only applies to --strategy main_lemma")
        return codec.result_to_json(factor.factorize(alpha)), 0
    if args.strategy == "main_lemma":
        if args.zero is not None:
            zero = codec.element_from_json(ch, _inline(args.zero))
        else:
            dec = factor.decide_generation(ch)
            if not dec.generated:
                raise UsageError("X⁰ is empty: the main-lemma construction does not apply")
            zero = dec.zero_witness
        trace = factor.main_lemma_factorize(alpha, zero)
        return codec.result_to_json(factor.FactorizationResult(normalize(alpha), trace)), 0
    pair = factor.find_crossing_pair(alpha)
    if pair is None:
        raise UsageError("no u in X⁰ with alpha(u) in X⁰: the two-factor construction does not apply")
    tf = factor.two_factor_factorize(alpha, *pair)
    return codec.result_to_json(factor.FactorizationResult(normalize(alpha), tf)), 0


def cmd_verify(args):
    ch = _chain(args)
    alpha = codec.map_from_json(_load(args.map), ch)
    factors = codec.factors_from_json(_load(args.factors), alpha)
    rep = factor.verify_factorization(alpha, factors, args.window)
    return codec.report_to_json(ch, rep), 0 if rep.passed else 1


def cmd_oracle(args):
    return finite.report(args.n), 0


def cmd_bijection(args):
    if args.invert:
        if args.image is None or args.breakpoints is None:
            raise UsageError("--invert needs --image and --breakpoints")
        ch = _chain(args) if args.chain else NATURALS
        image = [codec.element_from_json(ch, e) for e in _inline(args.image)]
        bps = [codec.element_from_json(ch, e) for e in _inline(args.breakpoints)]
        return codec.map_to_json(subset_to_jf(ch, image, bps)), 0
    if args.map is None:
        raise UsageError("bijection needs --map, or --invert with --image and --breakpoints")
    ch = _chain(args) if args.chain else None
    f = codec.map_from_json(_load(args.map), ch)
    image, bps = jf_to_subset(f)
    return {
        "image": [codec.element_to_json(e) for e in image],
        "breakpoints": [codec.element_to_json(e) for e in bps],
    }, 0


def cmd_props(args):
    cfg = props.GenConfig(seed=args.seed, max_pieces=args.max_pieces,
                          coordinate_band=args.band, product_length=args.product_length)
    try:
        rep = props.run_suite(args.suite, cfg, args.cases)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    return rep, 0 if rep["passed"] else 1


def _default_seed() -> int:
    raw = os.environ.get("ORDCHAIN_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordchain", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="region (minus/zero/plus) of an element")
    s.add_argument("--chain", required=True)
    s.add_argument("--element", required=True, help='e.g. \'{"seg":0,"coord":"5"}\'')
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("regions", help="the X⁻ / X⁰ / X⁺ intervals")
    s.add_argument("--chain", required=True)
    s.set_defaults(func=cmd_regions)

    s = sub.add_parser("factorize", help="factor a map into maps with infinite image")
    s.add_argument("--chain", required=True)
    s.add_argument("--map", required=True)
    s.add_argument("--zero")
    s.add_argument("--strategy", choices=("auto", "main_lemma", "two_factor"), default="auto")
    s.set_defaults(func=cmd_factorize)

    s = sub.add_parser("verify", help="check a factorization")
    s.add_argument("--chain", required=True)
    s.add_argument("--map", required=True)
    s.add_argument("--factors", required=True, help="list of maps or factorize output")
    s.add_argument("--window", type=int, default=21)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("decide", help="is O(X) generated by J?")
    s.add_argument("--chain", required=True)
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("oracle", help="finite-chain brute force")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("bijection", help="J_f maps on ω <-> (image, breakpoints)")
    s.add_argument("--chain")
    s.add_argument("--map")
    s.add_argument("--invert", action="store_true")
    s.add_argument("--image")
    s.add_argument("--breakpoints")
    s.set_defaults(func=cmd_bijection)

    s = sub.add_parser("props", help="run a seeded property suite")
    s.add_argument("--suite", default="all")
    s.add_argument("--seed", type=int, default=_default_seed())
    s.add_argument("--cases", type=int, default=100)
    s.add_argument("--max-pieces", type=int, default=6)
    s.add_argument("--band", type=int, default=50)
    s.add_argument("--product-length", type=int, default=5)
    s.set_defaults(func=cmd_props)
    return p


def render_text(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}- [{i}]")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v, ensure_ascii=False)}")
    else:
        lines.append(f"{pad}{json.dumps(obj, ensure_ascii=False)}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except (UsageError, ValueError, ChainError, KeyError, TypeError) as exc:
        print(f"ordchain: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(codec.dumps(out))
    else:
        sys.stdout.write(render_text(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
