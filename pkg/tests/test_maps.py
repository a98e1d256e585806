import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ordchain.chain import (
    ALEPH0,
    CATALOG,
    INTEGERS,
    NATURALS,
    RATIONALS,
    Z_ARROW,
    Bound,
    Card,
    ChainError,
    Element,
    Interval,
)
from ordchain.maps import (
    Action,
    MapError,
    PcMap,
    compose,
    compose_all,
    dual_map,
    evaluate,
    evaluate_sorted,
    image_summary,
    in_j,
    is_monotone,
    j_membership,
    jf_to_subset,
    normalize,
    step_map_from_image,
    subset_to_jf,
)
from ordchain.props import GenConfig, random_jf_map, random_map

F = Fraction
NEG, POS = Bound.neg_inf(), Bound.pos_inf()


def z(c):
    return Element(0, c)


def zmap(*pieces, check=True):
    """Pieces on ℤ as (lower, upper, value-or-None) with Bounds."""
    return PcMap.from_pieces(INTEGERS, [(Interval(lo, hi), Action(v)) for lo, hi, v in pieces], check)


def upto(c, inclusive=True):
    return Bound.at(z(c), inclusive)


def test_evaluate_examples():
    ident = PcMap.identity(Z_ARROW)
    for x in Z_ARROW.window(5):
        assert evaluate(ident, x) == x
    f = zmap((NEG, upto(0), z(0)), (upto(0, False), POS, None))
    assert evaluate(f, z(-9)) == z(0)
    assert evaluate(f, z(7)) == z(7)
    g = step_map_from_image(INTEGERS, [z(1), z(2)], [upto(1)])
    assert evaluate(g, z(5)) == z(2)
    assert evaluate(g, z(1)) == z(1)


def test_evaluate_sorted_matches_evaluate():
    rng = random.Random(2)
    cfg = GenConfig(max_pieces=8)
    for ch in CATALOG.values():
        f = random_map(ch, cfg, rng)
        xs = sorted(ch.window(40))
        assert evaluate_sorted(f, xs) == [f(x) for x in xs]


def test_normalize_merges_identity_pieces():
    f = zmap((NEG, upto(0, False), None), (upto(0), upto(0), None), (upto(0, False), POS, None))
    assert normalize(f) == PcMap.identity(INTEGERS)
    assert len(normalize(f).parts) == 1


def test_normalize_merges_equal_constants():
    f = zmap((NEG, upto(3), z(4)), (upto(3, False), upto(8), z(4)), (upto(8, False), POS, None))
    g = normalize(f)
    assert len(g.parts) == 2
    assert g.values[0] == z(4)


def test_normalize_finite_fixed_run_becomes_constant():
    # identity on {0} is just the constant 0 there
    f = zmap((NEG, upto(0, False), z(-1)), (upto(0), upto(0), None), (upto(0, False), POS, z(1)))
    g = normalize(f)
    assert all(v is not None for v in g.values)
    assert g(z(0)) == z(0)
    assert not in_j(g)


def test_normalize_degenerate_gamma_is_identity():
    # identity below -5, the constant -5 on [-5, -5], identity above: the
    # middle "constant" coincides with identity, so the normal form is the
    # identity map.  Matches the shape of a middle factor whose preimage
    # piece is empty.
    f = zmap((NEG, upto(-5, False), None), (upto(-5), upto(-5), z(-5)), (upto(-5, False), POS, None))
    assert normalize(f) == PcMap.identity(INTEGERS)


def test_normalize_is_idempotent_and_extensional():
    cfg = GenConfig(max_pieces=10)
    for name, ch in CATALOG.items():
        rng = random.Random(name)
        for _ in range(40):
            f = random_map(ch, cfg, rng)
            g = normalize(f)
            assert normalize(g) == g
            xs = sorted(ch.window(60))
            assert evaluate_sorted(f, xs) == evaluate_sorted(g, xs)


def _window_violation(f, xs):
    ys = evaluate_sorted(f, xs)
    for (a, fa), (b, fb) in zip(zip(xs, ys), zip(xs[1:], ys[1:])):
        if fa > fb:
            return a, b
    return None


def test_is_monotone_detects_violation():
    f = zmap((NEG, upto(0), z(5)), (upto(0, False), POS, None), check=False)
    m = is_monotone(f)
    assert not m.ok
    x, y = m.witness
    assert x < y and f(x) > f(y)
    assert (x, y) == (z(0), z(1))
    # window oracle: adjacent comparison finds the same boundary
    xs = [z(c) for c in range(-20, 21)]
    assert _window_violation(f, xs) == (z(0), z(1))
    with pytest.raises(MapError):
        PcMap.build(INTEGERS, f.parts)


def test_is_monotone_passes_identity_and_random():
    assert is_monotone(PcMap.identity(RATIONALS)).ok
    cfg = GenConfig(max_pieces=10)
    rng = random.Random(4)
    for ch in CATALOG.values():
        for _ in range(20):
            f = random_map(ch, cfg, rng)
            assert is_monotone(f).ok
            assert _window_violation(f, sorted(ch.window(60))) is None


def test_compose_examples():
    rng = random.Random(8)
    cfg = GenConfig(max_pieces=7)
    for ch in CATALOG.values():
        f = random_map(ch, cfg, rng)
        assert compose(f, PcMap.identity(ch)) == normalize(f)
        assert compose(PcMap.identity(ch), f) == normalize(f)
        c = ch.window(3)[0]
        assert compose(PcMap.constant(ch, c), f) == PcMap.constant(ch, f(c))


def test_compose_chain_mismatch():
    with pytest.raises(MapError):
        compose(PcMap.identity(INTEGERS), PcMap.identity(RATIONALS))


@pytest.mark.parametrize("name", list(CATALOG))
def test_compose_agrees_pointwise(name):
    ch = CATALOG[name]
    rng = random.Random(name)
    cfg = GenConfig(max_pieces=8)
    xs = sorted(ch.window(80))
    for _ in range(60):
        f, g, h = (random_map(ch, cfg, rng) for _ in range(3))
        fg = compose(f, g)
        assert evaluate_sorted(fg, xs) == [g(f(x)) for x in xs]
        assert compose(fg, h) == compose(f, compose(g, h))
        assert compose_all([f, g, h]) == compose(fg, h)


def test_image_summary_examples():
    s = image_summary(PcMap.identity(INTEGERS))
    assert s.cardinality == ALEPH0
    assert len(s.identity_intervals) == 1
    step = step_map_from_image(INTEGERS, [z(1), z(2), z(4)], [upto(1), upto(2)])
    assert image_summary(step).cardinality == Card(3)
    assert image_summary(step).constant_values == (z(1), z(2), z(4)) or \
        list(image_summary(step).constant_values) == [z(1), z(2), z(4)]
    g = zmap((NEG, upto(0, False), None), (upto(0), POS, z(0)))
    assert image_summary(g).cardinality == ALEPH0


def test_image_cardinality_never_grows_under_composition():
    rng = random.Random(9)
    cfg = GenConfig(max_pieces=6)
    for ch in CATALOG.values():
        for _ in range(30):
            f, g = random_map(ch, cfg, rng), random_map(ch, cfg, rng)
            c = image_summary(compose(f, g)).cardinality
            assert c <= image_summary(f).cardinality
            assert c <= image_summary(g).cardinality


def test_j_membership_examples():
    assert j_membership(PcMap.identity(INTEGERS)).in_j
    assert j_membership(PcMap.identity(INTEGERS)).witness == INTEGERS.interval(INTEGERS.bottom, INTEGERS.top)
    step = step_map_from_image(INTEGERS, [z(1), z(2), z(4)], [upto(1), upto(2)])
    cert = j_membership(step)
    assert not cert.in_j and cert.image_cardinality == Card(3)
    rng = random.Random(1)
    for ch in CATALOG.values():
        for _ in range(20):
            f = random_jf_map(ch, GenConfig(max_pieces=9), rng)
            c = j_membership(f)
            assert not c.in_j
            assert c.image_cardinality.count <= len(f.parts)


def test_step_map_examples():
    one = step_map_from_image(INTEGERS, [z(3)], [])
    assert one == PcMap.constant(INTEGERS, z(3))
    note = step_map_from_image(INTEGERS, [z(1), z(2), z(4)], [upto(1), upto(2)])
    assert note(z(3)) == z(4)
    assert note(z(-100)) == z(1)
    assert note(z(2)) == z(2)
    with pytest.raises(MapError):
        step_map_from_image(INTEGERS, [z(2), z(1)], [upto(1)])
    with pytest.raises(MapError):
        step_map_from_image(INTEGERS, [z(1), z(2)], [])


def test_step_map_rationals_open_cut():
    half = Element(0, F(1, 2))
    f = step_map_from_image(RATIONALS, [Element(0, F(0)), Element(0, F(1))], [Bound.at(half, False)])
    assert image_summary(f).cardinality == Card(2)
    for k in range(-200, 201):
        x = F(1, 2) + F(k, 997)
        want = F(0) if x < F(1, 2) else F(1)
        assert f(Element(0, x)).coord == want


def test_jf_to_subset_examples():
    c = PcMap.constant(NATURALS, z(3))
    assert jf_to_subset(c) == ([z(3)], [])
    f = step_map_from_image(NATURALS, [z(3), z(7)], [upto(3)])
    image, bps = jf_to_subset(f)
    assert image == [z(3), z(7)]
    # brute force: least preimage point of 7 within an enumerated prefix
    assert bps == [min(z(x) for x in range(0, 40) if f(z(x)) == z(7))] == [z(4)]
    with pytest.raises(ChainError):
        jf_to_subset(PcMap.constant(INTEGERS, z(0)))
    with pytest.raises(MapError):
        jf_to_subset(PcMap.identity(NATURALS))


def test_subset_to_jf_examples():
    assert subset_to_jf(NATURALS, [z(0)], []) == PcMap.constant(NATURALS, z(0))
    f = step_map_from_image(NATURALS, [z(3), z(7)], [upto(3)])
    assert subset_to_jf(NATURALS, [z(3), z(7)], [z(4)]) == f
    with pytest.raises(MapError):
        subset_to_jf(NATURALS, [z(3), z(7)], [])
    with pytest.raises(MapError):
        subset_to_jf(NATURALS, [z(3), z(7)], [z(0)])


@settings(max_examples=60)
@given(st.lists(st.integers(0, 60), min_size=1, max_size=8, unique=True), st.data())
def test_bijection_round_trip(image, data):
    image = sorted(image)
    bps = sorted(data.draw(st.lists(st.integers(1, 80), min_size=len(image) - 1,
                                    max_size=len(image) - 1, unique=True)))
    img, bp = [z(c) for c in image], [z(c) for c in bps]
    f = subset_to_jf(NATURALS, img, bp)
    assert jf_to_subset(f) == (img, bp)
    assert subset_to_jf(NATURALS, *jf_to_subset(f)) == f


@pytest.mark.parametrize("name", list(CATALOG))
def test_dual_map_is_conjugation(name):
    ch = CATALOG[name]
    rng = random.Random(name + "dual")
    cfg = GenConfig(max_pieces=6)
    for _ in range(20):
        f, g = random_map(ch, cfg, rng), random_map(ch, cfg, rng)
        df = dual_map(f)
        assert df.chain == ch.dual_chain
        assert dual_map(df) == normalize(f)
        assert in_j(df) == in_j(f)
        for x in ch.window(20):
            assert df(ch.reflect(x)) == ch.reflect(f(x))
        assert dual_map(compose(f, g)) == compose(df, dual_map(g))
