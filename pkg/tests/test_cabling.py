import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cable_alexander_exponents, coprime_pairs

from knotcurves.cabling import (
    BadCable,
    CableParams,
    CableSpec,
    RuleNotApplicable,
    cable_arc_rule,
    cable_geometric,
    cable_with_provenance,
    crosscheck_rules,
    forms_agree,
    iterate_cable,
)
from knotcurves.complex_core import stair_sample
from knotcurves.curve_model import (
    ArcForm,
    classify_arcs,
    curve_from_complex,
    epsilon,
    gamma0_curve,
    mirror_curve,
    tau,
    validate_curve,
    with_closed,
)
from knotcurves.lspace import genus, random_staircase, staircase_curve, torus_alexander
from knotcurves.samples import box_component, random_curve

LINE = gamma0_curve((0,))
TREFOIL = staircase_curve(torus_alexander(2, 3))
STAIR = curve_from_complex(stair_sample())


def coprime_qs(p, bound):
    return [q for q in range(-bound, bound + 1) if q and gcd(p, q) == 1]


def test_trefoil_2_3():
    out = cable_geometric(TREFOIL, CableParams(2, 3))
    assert out.max_right_arc() == 2
    assert out.gamma0.crossings == (3, 2, 0, -2, -3)


@pytest.mark.parametrize("p, q", coprime_pairs(2, 9))
def test_unknot_cable_is_torus_knot(p, q):
    assert cable_geometric(LINE, CableParams(p, q)) == staircase_curve(torus_alexander(p, q))
    assert cable_geometric(LINE, CableParams(p, -q)) == mirror_curve(staircase_curve(torus_alexander(p, q)))


@pytest.mark.parametrize("p, q", [(2, 1), (3, 1), (2, -1), (3, 2), (5, -1)])
def test_unknot_trivial_cables(p, q):
    # T(p, +-1) and T(3,2) = T(2,3)
    out = cable_geometric(LINE, CableParams(p, q))
    if abs(q) == 1:
        assert out == LINE
    else:
        assert out == staircase_curve(torus_alexander(2, 3))


def test_stair_sample_image_of_eta3():
    res = cable_with_provenance(STAIR, CableParams(2, 17))
    arc = next(f for f in classify_arcs(STAIR) if f.form == "+-")
    assert (arc.length, arc.initial) == (3, False)
    ci, pos = res.images[(arc.component, arc.position)]
    image = next(f for f in classify_arcs(res.curve) if (f.component, f.position) == (ci, pos))
    assert (image.length, image.form, image.initial) == (7, "+-", False)


def test_rule_examples():
    cp = CableParams(2, 3)
    assert cable_arc_rule(ArcForm("--", 3, False), cp, 0) == ArcForm("--", 6, False)
    assert cable_arc_rule(ArcForm("-+", 2, False), cp, 0) == ArcForm("-+", 3, False)
    init = ArcForm("--", 1, True, y0_end="top")
    got = cable_arc_rule(init, cp, 1)
    assert got.length == 2 and not got.initial
    assert forms_agree(got, ArcForm("+-", 2, False))


@pytest.mark.parametrize("q, length", [(1, 2), (3, 2), (5, 3)])
def test_initial_minus_rows(q, length):
    # tau = 1, p = 2: boundaries at 2 and 4
    init = ArcForm("--", 1, True, y0_end="top")
    assert cable_arc_rule(init, CableParams(2, q), 1).length == length


@pytest.mark.parametrize("q, length", [(1, 1), (3, 1), (5, 2)])
def test_initial_plus_rows(q, length):
    init = ArcForm("-+", 1, True, y0_end="top")
    assert cable_arc_rule(init, CableParams(2, q), 1).length == length


@pytest.mark.parametrize("arc, tau_", [
    (ArcForm("0", 0, True), 0),
    (ArcForm("--", 1, True, y0_end="bottom"), -1),
    (ArcForm("-0", 2, True, y0_end="top"), 1),
    (ArcForm("0+", 2, False), 1),
])
def test_rule_not_applicable(arc, tau_):
    with pytest.raises(RuleNotApplicable):
        cable_arc_rule(arc, CableParams(2, 3), tau_)


def test_boundary_values_are_never_coprime():
    for p in range(2, 8):
        for t in range(-5, 6):
            assert gcd(p, p * (2 * t - 1)) == p
            assert gcd(p, 2 * p * t) in (p, 2 * p)


def test_crosscheck_examples():
    rep = crosscheck_rules(STAIR, CableParams(2, 1))
    assert rep.ok and rep.checked == 2
    rep = crosscheck_rules(staircase_curve(torus_alexander(2, 5)), CableParams(3, 16))
    assert rep.ok and rep.checked == 2
    assert rep.to_json()["ok"] is True


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 5), st.integers(-40, 40))
def test_crosscheck_random(seed, p, q):
    if q == 0 or gcd(p, q) != 1:
        q = 1
    rng = random.Random(seed)
    pc = random_curve(rng)
    if rng.random() < 0.3:
        pc = mirror_curve(pc)
    assert crosscheck_rules(pc, CableParams(p, q)).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 4), st.integers(0, 12))
def test_lspace_cable_matches_alexander(seed, p, extra):
    s = random_staircase(random.Random(seed), max_ell=3, max_gap=4)
    g = genus(s)
    q = max(1, p * (2 * g - 1)) + extra
    while gcd(p, q) != 1:
        q += 1
    out = cable_geometric(staircase_curve(s), CableParams(p, q))
    assert list(out.gamma0.crossings) == cable_alexander_exponents(list(s.exponents), p, q)
    assert out.closed == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 5), st.integers(-30, 30))
def test_cable_properties(seed, p, q):
    if q == 0 or gcd(p, q) != 1:
        q = 1
    rng = random.Random(seed)
    pc = random_curve(rng)
    out = cable_geometric(pc, CableParams(p, q))
    assert validate_curve(out).ok
    assert len(out.gamma0.crossings) % 2 == 1
    assert len(out.closed) == p * len(pc.closed)
    o = pc.max_right_arc()
    if o >= 1:
        assert out.max_right_arc() >= max(p * (o - 1) + 1, p)
    if epsilon(pc) == 1:
        assert tau(out) == p * tau(pc) + (p - 1) * (q - 1) // 2
    assert not any(f.form == "-+" and f.length == 1 and not f.initial for f in classify_arcs(out))


def test_closed_components_cable_to_p_copies():
    pc = with_closed(TREFOIL, box_component(2, 1, 0))
    out = cable_geometric(pc, CableParams(3, 2))
    assert len(out.closed) == 3
    assert validate_curve(out).ok
    assert cable_geometric(pc.without_closed(), CableParams(3, 2)).gamma0 == out.gamma0


@pytest.mark.parametrize("spec, ord_", [
    (CableSpec(torus=(2, 3), stages=(CableParams(2, 3),)), 2),
    (CableSpec(torus=(3, 5), stages=(CableParams(2, 31),)), 5),
    (CableSpec(torus=(2, 3), stages=(CableParams(2, 1),)), 2),
    (CableSpec(stages=(CableParams(3, 4),)), 2),
    (CableSpec(torus=(2, 5), stages=(CableParams(2, 41), CableParams(3, 251))), 11),
    (CableSpec(torus=(3, 4), stages=(CableParams(2, 49), CableParams(2, 199))), 11),
])
def test_iterate_cable(spec, ord_):
    assert iterate_cable(spec).max_right_arc() == ord_


def test_mirrored_torus_base():
    spec = CableSpec(torus=(2, -3))
    assert iterate_cable(spec) == mirror_curve(TREFOIL)
    assert str(CableSpec(torus=(2, 3), stages=(CableParams(2, 3),))) == "T(2,3);(2,3)"


@pytest.mark.parametrize("p, q", [(1, 3), (0, 1), (2, 4), (3, 0), (-2, 3)])
def test_bad_cable(p, q):
    with pytest.raises(BadCable):
        CableParams(p, q)


def test_bad_spec():
    with pytest.raises(BadCable):
        CableSpec(torus=(2, 3), path="x.json")
    with pytest.raises(BadCable):
        CableSpec(torus=(1, 3))
