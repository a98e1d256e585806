"""Acceptance gate: ten criteria, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -v``; the summary lines are printed at
the end of the session (see conftest.py) and also live as they complete.
"""

import math
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

from ordchain.chain import (
    CATALOG,
    FIN3_Q,
    INTEGERS,
    NATURALS,
    NEG_INTEGERS,
    OMEGA_OMEGA_STAR,
    Q_1_Q,
    RATIONALS,
    Z_ARROW,
    Element,
)
from ordchain.factor import (
    Case,
    Generated,
    NotGenerated,
    decide_generation,
    main_lemma_factorize,
    two_factor_factorize,
    verify_factorization,
)
from ordchain.finite import closure, enumerate_On, identity, image_law_holds, top_class
from ordchain.maps import (
    compose,
    dual_map,
    evaluate_sorted,
    in_j,
    is_monotone,
    jf_to_subset,
    normalize,
    subset_to_jf,
)
from ordchain.props import (
    GenConfig,
    check_no_end,
    check_region_preservation,
    random_element,
    random_j_map,
    random_jf_map,
    random_map,
)

HERE = Path(__file__).parent
RESULTS = []


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}"
    RESULTS.append(line)
    print(line, flush=True)
    assert ok, line


def big_window(ch, n=1000):
    """At least n sorted elements; dense segments step by 1/6 so every
    denominator the generators use (1..6, as 1, 2, 3, 6) is hit exactly."""
    fin_total = sum(s.size for s in ch.segments if s.finite)
    infinite = sum(1 for s in ch.segments if not s.finite)
    per = math.ceil((n - fin_total) / infinite)
    out = []
    for i, seg in enumerate(ch.segments):
        if seg.finite:
            cs = range(seg.size)
        elif seg.kind == "omega_up":
            cs = range(per)
        elif seg.kind == "omega_down":
            cs = range(-per + 1, 1)
        elif seg.kind == "int_line":
            cs = range(-(per // 2), per - per // 2)
        else:
            cs = [Fraction(k, 6) for k in range(-(per // 2), per - per // 2)]
        out.extend(Element(i, c) for c in cs)
    assert len(out) >= n
    return out


MAIN_CHAINS = [INTEGERS, RATIONALS, Z_ARROW, FIN3_Q, Q_1_Q]
MAIN_CFG = GenConfig(seed=2024, max_pieces=12, coordinate_band=50)


def _main_cases():
    for ch in MAIN_CHAINS:
        zero = decide_generation(ch).zero_witness
        for case in range(500):
            yield ch, zero, random_jf_map(ch, MAIN_CFG, MAIN_CFG.rng(f"{ch}:{case}"))


def test_01_main_lemma_suite():
    start = time.perf_counter()
    bad = []
    count = 0
    for ch, zero, alpha in _main_cases():
        t = main_lemma_factorize(alpha, zero)
        rep = verify_factorization(alpha, t.factors)
        count += 1
        if not (rep.symbolic_ok and rep.factors_in_j and rep.window_ok
                and len(t.factors) == 2 * (t.k + 1) + 2):
            bad.append(str(alpha))
    elapsed = time.perf_counter() - start
    ok = not bad and count == 2500 and elapsed < 30
    record(1, "main lemma factorization", ok,
           f"{count - len(bad)}/{count} verified over 5 chains in {elapsed:.1f}s (limit 30s)")


def test_02_dual_case_coherence():
    seen = 0
    bad = []
    for ch, zero, alpha in _main_cases():
        if alpha(zero) < zero:
            continue
        # transport the factors to the dual chain and verify them there, and
        # compare with running the construction on the dual chain directly
        d_alpha = dual_map(alpha)
        t = main_lemma_factorize(alpha, zero)
        transported = [dual_map(f) for f in t.factors]
        direct = main_lemma_factorize(d_alpha, ch.reflect(zero))
        above = alpha(zero) > zero
        ok = (
            t.case is (Case.ABOVE_DUAL if above else Case.BELOW)
            and verify_factorization(d_alpha, transported).passed
            and verify_factorization(d_alpha, direct.factors).passed
            and (not above or (direct.case is Case.BELOW and tuple(transported) == direct.factors))
        )
        if not ok:
            bad.append(str(alpha))
        seen += 1
        if seen == 200:
            break
    ok = seen == 200 and not bad
    record(2, "dual-case coherence", ok, f"{seen - len(bad)}/{seen} maps with 0α ≥ 0 verify on the dual chain")


def test_03_two_factor_suite():
    cfg = GenConfig(seed=77, max_pieces=8, coordinate_band=50)
    branches = {"u<=v": 0, "v<u": 0}
    bad = []
    for case in range(300):
        rng = cfg.rng(case)
        ch = (INTEGERS, RATIONALS)[case % 2]
        alpha = random_map(ch, cfg, rng)
        u = random_element(ch, rng, cfg.coordinate_band)
        v = alpha(u)
        branches["u<=v" if u <= v else "v<u"] += 1
        tf = two_factor_factorize(alpha, u, v)
        if not (compose(tf.a1, tf.a2) == normalize(alpha) and in_j(tf.a1) and in_j(tf.a2)):
            bad.append((str(alpha), str(u)))
    ok = not bad and min(branches.values()) >= 50
    record(3, "two-factor construction", ok,
           f"{300 - len(bad)}/300 exact, branches u≤v={branches['u<=v']} v<u={branches['v<u']} (need ≥50 each)")


def test_04_generation_catalog():
    expect = {
        "ℤ": (INTEGERS, True), "ℚ": (RATIONALS, True), "ℤ-arrow": (Z_ARROW, True),
        "Fin(3)⊕ℚ": (FIN3_Q, True), "ω": (NATURALS, False), "ω*": (NEG_INTEGERS, False),
        "ω⊕ω*": (OMEGA_OMEGA_STAR, False),
    }
    hits = 0
    for name, (ch, gen) in expect.items():
        d = decide_generation(ch)
        hits += isinstance(d, Generated if gen else NotGenerated)
    record(4, "generation decision catalog", hits == 7, f"{hits}/7 match")


def test_05_finite_oracle():
    start = time.perf_counter()
    counts = [len(enumerate_On(n)) for n in range(1, 7)]
    tops = all(top_class(n) == [identity(n)] for n in range(1, 7))
    gen = [len(closure(n, top_class(n))) == len(enumerate_On(n)) for n in range(1, 7)]
    law = all(image_law_holds(n) for n in range(1, 5))
    elapsed = time.perf_counter() - start
    ok = (counts == [1, 3, 10, 35, 126, 462] and tops and gen == [True] + [False] * 5
          and law and elapsed < 5)
    record(5, "finite oracle", ok,
           f"counts {counts}, top class = {{id}}: {tops}, generated only at n=1: "
           f"{gen == [True] + [False] * 5}, image law n≤4: {law}, {elapsed:.2f}s (limit 5s)")


def test_06_no_end_products():
    cfg = GenConfig(seed=5, max_pieces=6, coordinate_band=50, product_length=5)
    good = {"ω*": 0, "ω": 0}
    flagged = 0
    controls = 0
    for case in range(500):
        rng = cfg.rng(case)
        for ch, key in ((NEG_INTEGERS, "ω*"), (NATURALS, "ω")):
            length = rng.randint(1, cfg.product_length)
            factors = [random_j_map(ch, cfg, rng) for _ in range(length)]
            good[key] += check_no_end(ch, factors).ok
            if case % 10 == 0:
                control = random_jf_map(ch, cfg, rng)
                controls += 1
                alone = check_no_end(ch, [control], require_j=False)
                inside = check_no_end(ch, factors + [control], require_j=False)
                flagged += not alone.ok and not inside.ok
    ok = good == {"ω*": 500, "ω": 500} and flagged == controls
    record(6, "no minimum on ω*, no maximum on ω", ok,
           f"ω* {good['ω*']}/500, ω {good['ω']}/500, controls flagged {flagged}/{controls}")


def test_07_region_preservation():
    cfg = GenConfig(seed=11, max_pieces=8, coordinate_band=50)
    ch = OMEGA_OMEGA_STAR
    good = 0
    for case in range(500):
        f = random_j_map(ch, cfg, cfg.rng(case))
        # window(50) on ω⊕ω* is 100 points, 50 per side
        good += check_region_preservation(ch, f, window=50).ok
    assert len(ch.window(50)) == 100
    record(7, "J maps preserve regions on ω⊕ω*", good == 500, f"{good}/500 structural and window agree")


def test_08_bijection_round_trip():
    cfg = GenConfig(seed=8, max_pieces=10, coordinate_band=50)
    draws = [normalize(random_jf_map(NATURALS, cfg, cfg.rng(case))) for case in range(500)]
    trips = 0
    subset_of = {}
    for f in draws:
        image, bps = jf_to_subset(f)
        trips += subset_to_jf(NATURALS, image, bps) == f
        subset_of[f] = (tuple(image), tuple(bps))
    injective = len(set(subset_of.values())) == len(subset_of)
    ok = trips == 500 and injective
    record(8, "ω bijection round trip", ok,
           f"{trips}/500 round-trip exactly; {len(subset_of)} distinct maps give "
           f"{len(set(subset_of.values()))} distinct subsets")


def test_09_composition_oracle():
    cfg = GenConfig(seed=9, max_pieces=8, coordinate_band=50)
    pairs = 0
    closed = 0
    agree = 0
    assoc = 0
    triples = 0
    for name, ch in CATALOG.items():
        xs = sorted(big_window(ch))
        for case in range(1000):
            rng = cfg.rng(f"{name}:{case}")
            f, g = random_map(ch, cfg, rng), random_map(ch, cfg, rng)
            fg = compose(f, g)
            pairs += 1
            closed += is_monotone(fg).ok
            agree += evaluate_sorted(fg, xs) == [g(y) for y in evaluate_sorted(f, xs)]
        for case in range(300):
            rng = cfg.rng(f"{name}:assoc:{case}")
            f, g, h = (random_map(ch, cfg, rng) for _ in range(3))
            triples += 1
            assoc += compose(compose(f, g), h) == compose(f, compose(g, h))
    ok = agree == pairs and closed == pairs and assoc == triples
    record(9, "composition agrees with pointwise evaluation", ok,
           f"{agree}/{pairs} pairs on ≥1000-point windows, {closed}/{pairs} products monotone, "
           f"associativity {assoc}/{triples}")


def test_10_cli_golden_files():
    chains = HERE / "data" / "chains"
    golden = HERE / "golden"
    runs = [
        (["decide", "--chain", str(p)], golden / f"decide_{p.stem}.json")
        for p in sorted(chains.glob("*.json"))
    ]
    runs.append((["oracle", "--n", "3"], golden / "oracle_n3.json"))
    runs.append((["factorize", "--chain", str(chains / "omega_omega_star.json"),
                  "--map", str(HERE / "data" / "maps" / "omega_omega_star_const_minus.json")],
                 golden / "factorize_omega_omega_star_const_minus.json"))
    same = 0
    for args, path in runs:
        r = subprocess.run([sys.executable, "-m", "ordchain", *args], capture_output=True)
        same += r.returncode == 0 and r.stdout == path.read_bytes()
    record(10, "CLI golden files", same == len(runs), f"{same}/{len(runs)} byte-identical")
