import random
from fractions import Fraction

import pytest

from soldyn import (
    K_map,
    LimitPeriodicCertified,
    MixedHulls,
    NotIncreasing,
    Periodic,
    PeriodicPL,
    QuotientMap,
    Unknown,
    apply,
    check_semiconjugacy,
    displacement_of,
    g_apply,
    hull_dist,
    hull_func_dist,
    hull_inv,
    hull_mul,
    hull_of,
    hull_point_eval,
    hull_translate,
    induce,
    isotopy_eval,
    leaf_displacement,
    lp_build,
    lp_hull_level,
    periodicity_classify,
    pl_new,
    project,
    quotient_map,
    rotation_lift,
    sigma,
    sol_add,
)
from genutil import rand_embedded, rand_induced, rand_point

SAW2 = PeriodicPL(2, [(0, 0), (1, Fraction(1, 4))])  # minimal period 2


def test_hull_translate_and_eval():
    h = hull_of(SAW2)
    assert h.period == 2
    neutral = hull_translate(h, 0)
    for x in (0, Fraction(1, 3), Fraction(7, 5)):
        assert hull_point_eval(neutral, x) == SAW2.eval(x)
    assert hull_translate(h, 2) == neutral
    hp = hull_translate(h, Fraction(1, 3))
    assert hull_point_eval(hp, Fraction(1, 6)) == SAW2.eval(Fraction(1, 2))


def test_hull_group_laws():
    h = hull_of(SAW2)
    rng = random.Random(0)
    pts = [hull_translate(h, Fraction(rng.randrange(32), 16)) for _ in range(8)]
    neutral = h.neutral
    for a in pts:
        assert hull_mul(a, neutral) == a
        assert hull_mul(a, hull_inv(a)) == neutral
        for b in pts:
            assert hull_mul(a, b) == hull_mul(b, a)
            for c in pts[:3]:
                assert hull_mul(hull_mul(a, b), c) == hull_mul(a, hull_mul(b, c))
    assert hull_mul(
        hull_translate(h, Fraction(1, 3)), hull_translate(h, Fraction(5, 3))
    ) == neutral


def test_mixed_hulls_rejected():
    other = PeriodicPL(2, [(0, 0), (1, Fraction(1, 8))])
    with pytest.raises(MixedHulls):
        hull_mul(hull_of(SAW2).neutral, hull_of(other).neutral)


def test_hull_parameter_faithful():
    # functional sup-distance vanishes exactly on equal parameters
    h = hull_of(SAW2)
    a = hull_translate(h, Fraction(1, 5))
    b = hull_translate(h, Fraction(1, 5) + 2)
    c = hull_translate(h, Fraction(2, 5))
    assert hull_func_dist(a, b) == 0
    assert hull_func_dist(a, c) > 0


def test_K_map_defining_property():
    h = hull_of(SAW2)
    for t in (0, Fraction(1, 7), Fraction(9, 4), Fraction(13, 2)):
        assert K_map(sigma(t), h).param == Fraction(t) % 2


def test_K_map_is_homomorphism():
    h = hull_of(SAW2)
    rng = random.Random(1)
    for _ in range(100):
        s, t = rand_point(rng), rand_point(rng)
        lhs = K_map(sol_add(s, t), h)
        rhs = hull_mul(K_map(s, h), K_map(t, h))
        assert lhs == rhs


def test_K_map_period_one_is_pi1():
    delta = displacement_of(rotation_lift(Fraction(1, 3)))
    h = hull_of(delta)
    assert h.period == 1
    rng = random.Random(2)
    for _ in range(20):
        s = rand_point(rng)
        assert K_map(s, h).param == project(s, 1).value


def test_quotient_map_rotation_case():
    delta = displacement_of(rotation_lift(Fraction(2, 5)))
    gm = quotient_map(delta)
    assert gm.period == 1
    hp = hull_of(delta).translate(Fraction(1, 10))
    out = g_apply(gm, hp)
    assert out.param == (Fraction(1, 10) + Fraction(2, 5)) % 1


def test_quotient_map_needs_increasing():
    bad = PeriodicPL(1, [(0, 0), (Fraction(1, 2), Fraction(-3, 4))])
    with pytest.raises(NotIncreasing):
        quotient_map(bad)


def test_g_bijective_monotone_sweep():
    f = rand_induced(random.Random(3), degree=2)
    delta = leaf_displacement(f)
    gm = quotient_map(delta)
    T = gm.period
    grid = [Fraction(i * T, 10_000) for i in range(10_000)]
    prev = None
    for t in grid:
        v = gm.lift.eval(t)
        if prev is not None:
            assert v > prev
        prev = v
    # total increase over one period is exactly T
    assert gm.lift.eval(Fraction(T)) - gm.lift.eval(Fraction(0)) == T


def test_g_apply_at_neutral():
    delta = SAW2
    gm = quotient_map(delta)
    h = hull_of(delta)
    assert g_apply(gm, h.neutral).param == delta.eval(0) % 2


def test_isotopy_endpoints_and_midpoint():
    delta = SAW2
    h = hull_of(delta)
    gm = quotient_map(delta)
    rng = random.Random(4)
    for _ in range(20):
        hp = hull_translate(h, Fraction(rng.randrange(64), 16))
        assert isotopy_eval(delta, 0, hp) == hp
        assert isotopy_eval(delta, 1, hp) == g_apply(gm, hp)
    const = displacement_of(rotation_lift(Fraction(2, 5)))
    hc = hull_of(const)
    hp = hc.translate(Fraction(1, 7))
    mid = isotopy_eval(const, Fraction(1, 2), hp)
    assert mid.param == (Fraction(1, 7) + Fraction(1, 5)) % 1


def test_semiconjugacy_exact_on_random_maps():
    rng = random.Random(5)
    for _ in range(25):
        degree = rng.choice([1, 2, 3])
        f = rand_induced(rng, degree=degree)
        pts = [rand_point(rng) for _ in range(20)]
        rep = check_semiconjugacy(f, pts)
        assert rep.exact and rep.max_error == 0
        assert degree % rep.period == 0


def test_semiconjugacy_detects_corruption():
    f = induce(pl_new(1, [(0, Fraction(1, 4)), (Fraction(1, 2), Fraction(3, 4))]), 0)
    delta = leaf_displacement(f)
    gm = quotient_map(delta)
    bad = QuotientMap(gm.period, gm.lift.translate(Fraction(1, 7)))
    pts = [rand_point(random.Random(6)) for _ in range(30)]
    rep = check_semiconjugacy(f, pts, quotient=bad)
    assert not rep.exact
    assert rep.max_error >= Fraction(1, 7)


def test_semiconjugacy_report_serialization():
    f = induce(rotation_lift(Fraction(1, 3)), 0)
    rep = check_semiconjugacy(f, [rand_point(random.Random(7))])
    assert rep.to_report() == {
        "max_error": "0",
        "exact": True,
        "samples": 1,
        "period": "1",
    }


def tri(T, amp):
    return PeriodicPL(T, [(0, 0), (Fraction(T, 2), Fraction(amp))])


def test_periodicity_classify_cases():
    f = rand_induced(random.Random(8), degree=4)
    verdict = periodicity_classify(f)
    assert isinstance(verdict, Periodic)
    assert 4 % verdict.period == 0

    h = lp_build((1, 2, 6), [tri(1, "1/4"), tri(2, "1/16"), tri(6, "1/64")])
    v = periodicity_classify(h)
    assert isinstance(v, LimitPeriodicCertified)
    assert v.tower == (1, 2, 6)
    assert v.bounds[-1] == 0

    # raw samples of a 2-periodic function match candidate 2
    pts = [(Fraction(i, 4), SAW2.eval(Fraction(i, 4))) for i in range(32)]
    v2 = periodicity_classify(pts, candidates=[1, 2, 4])
    assert v2 == Periodic(2)

    # white noise matches nothing
    rng = random.Random(9)
    noise = [(Fraction(i, 4), rng.random()) for i in range(32)]
    assert isinstance(periodicity_classify(noise, candidates=[1, 2, 4]), Unknown)
    assert isinstance(periodicity_classify(noise), Unknown)


def test_induced_hull_is_circle_never_higher_torus():
    # enforced by construction: any induced map classifies as Periodic
    rng = random.Random(10)
    for degree in (1, 2, 3, 4, 6):
        assert isinstance(periodicity_classify(rand_induced(rng, degree)), Periodic)
        assert isinstance(periodicity_classify(rand_embedded(rng, degree)), Periodic)


def test_lp_hull_level():
    h = lp_build((1, 2), [tri(1, "1/4"), tri(2, "1/16")], tail_bound="1/48")
    hull1, b1 = lp_hull_level(h, 1)
    assert hull1.period == 1 and b1 == Fraction(1, 16) + Fraction(1, 48)
    hull2, b2 = lp_hull_level(h, 2)
    assert hull2.period == 2 and b2 == Fraction(1, 48)


def test_quotient_rotation_matches_leafwise_enclosures():
    # the quotient dynamics g rotates by the same translation number as f
    from soldyn import rho_of_induced, translation_enclosure

    f = induce(pl_new(1, [(0, Fraction(1, 4)), (Fraction(1, 2), Fraction(3, 4))]), 0)
    gm = quotient_map(leaf_displacement(f))
    for q in (5, 20, 80):
        eg = translation_enclosure(gm.lift, q)
        ef = rho_of_induced(f, q)
        assert eg.lo <= ef.hi and ef.lo <= eg.hi
    assert (eg.lo, eg.hi) == (ef.lo, ef.hi)  # degree 1: identical routes


def test_semiconjugacy_is_commuting_diagram_at_period():
    # independent route: K after f equals the covered level-T circle map
    rng = random.Random(11)
    f = rand_induced(rng, degree=3)
    delta = leaf_displacement(f)
    h = hull_of(delta)
    gm = quotient_map(delta)
    for _ in range(30):
        s = rand_point(rng)
        lhs = K_map(apply(f, s), h).param
        rhs = g_apply(gm, K_map(s, h)).param
        assert lhs == rhs
