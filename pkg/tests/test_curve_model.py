import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotcurves.complex_core import loop_sample, stair_sample, mirror, mod_uv, torsion_order, unknot, validate
from knotcurves.curve_model import (
    CLOSED,
    GAMMA0,
    CurveComponent,
    CurveFormatError,
    PegCurve,
    classify_arcs,
    complex_to_curve,
    curve_from_complex,
    curve_to_complex,
    dump_curve,
    epsilon,
    gamma0_curve,
    load_curve,
    mirror_curve,
    rotate,
    tau,
    validate_curve,
    with_closed,
)
from knotcurves.lspace import StaircaseSpec, staircase_curve
from knotcurves.samples import box_component, random_curve, random_simplified
from knotcurves.simplify import horizontally_simplify, simultaneous_simplify, vertically_simplify

seeds = st.integers(0, 10**6)


def same_complex(a, b):
    return set(a.generators) == set(b.generators) and dict(a.differential) == dict(b.differential)


def test_stair_sample_curve():
    pc = curve_from_complex(stair_sample())
    assert pc.gamma0.crossings == (4, 3, 0, -3, -4)
    assert pc.closed == []
    sides = [a.side for a in pc.gamma0.arcs()]
    assert sides == ["left", "right", "left", "right", "left", "right"]


def test_unknot_curve_is_horizontal_line():
    pc = curve_from_complex(unknot())
    assert pc.gamma0.crossings == (0,)
    arcs = pc.gamma0.arcs()
    assert [a.essential for a in arcs] == [True, True]


def test_loop_sample_single_closed_component():
    c = mod_uv(loop_sample())
    _, h = horizontally_simplify(c)
    _, v = vertically_simplify(c)
    pc = complex_to_curve(c, h, v)
    assert pc.gamma0 is None
    assert len(pc.closed) == 1
    arcs = pc.closed[0].arcs()
    assert sorted(a.length for a in arcs if a.side == "right") == [1, 4, 5]
    assert sorted(a.length for a in arcs if a.side == "left") == [1, 2, 3]
    assert not validate_curve(pc).passed("one_gamma0")


def test_round_trip_examples():
    for c in (stair_sample(), unknot(), mirror(stair_sample())):
        s, h, v = simultaneous_simplify(c)
        assert same_complex(curve_to_complex(complex_to_curve(s, h, v)), mod_uv(c))


def test_unlabelled_curve_to_complex():
    c = curve_to_complex(gamma0_curve((4, 3, 0, -3, -4)))
    assert validate(c).ok
    assert torsion_order(c) == 3
    assert sorted((g.gr_u, g.gr_v) for g in c.generators) == sorted(
        (g.gr_u, g.gr_v) for g in stair_sample().generators
    )
    line = curve_to_complex(gamma0_curve((0,)))
    assert [(g.gr_u, g.gr_v) for g in line.generators] == [(0, 0)]
    assert not line.differential


def test_classify_stair_sample():
    forms = classify_arcs(curve_from_complex(stair_sample()))
    assert [(f.form, f.length, f.initial) for f in forms] == [("--", 1, True), ("+-", 3, False)]
    assert forms[0].y0_end == "top"


def test_classify_unknot():
    forms = classify_arcs(curve_from_complex(unknot()))
    assert len(forms) == 1 and forms[0].form == "0" and forms[0].initial


def test_classify_loop_sample_forms():
    c = mod_uv(loop_sample())
    pc = complex_to_curve(c, horizontally_simplify(c)[1], vertically_simplify(c)[1])
    forms = {f.length: f.form for f in classify_arcs(pc)}
    # read off the loop 0 -> 5 -> 4 -> 0 -> -2 -> -3 -> 0
    assert forms == {5: "--", 4: "+-", 1: "++"}
    assert not any(f.initial for f in classify_arcs(pc))


def test_y0_window_forms():
    assert [f.form for f in classify_arcs(gamma0_curve((0, -1, 1)))][0] == "0+"
    assert [f.form for f in classify_arcs(gamma0_curve((0, -2, -3)))][0] == "0-"
    # y0 at the bottom of the initial arc
    assert [f.form for f in classify_arcs(gamma0_curve((0, 2, 1)))][0] == "-0"


def test_tau_epsilon_examples():
    pc = curve_from_complex(stair_sample())
    assert (tau(pc), epsilon(pc)) == (4, 1)
    line = gamma0_curve((0,))
    assert (tau(line), epsilon(line)) == (0, 0)
    assert tau(staircase_curve(StaircaseSpec((3, 2, 0, -2, -3)))) == 3
    mir = curve_from_complex(mirror(stair_sample()))
    assert (tau(mir), epsilon(mir)) == (-4, -1)


def test_epsilon_undefined_for_offset_single_crossing():
    with pytest.raises(ValueError):
        epsilon(gamma0_curve((2,)))
    assert not validate_curve(gamma0_curve((2,))).ok


def test_obstruction_noninitial_eta1_minus_plus():
    pc = gamma0_curve((-2, -1, 1, 0, 2))
    forms = classify_arcs(pc)
    assert ("-+", 1, False) in [(f.form, f.length, f.initial) for f in forms]
    rep = validate_curve(pc)
    assert not rep.passed("no_noninitial_eta1_-+")


@pytest.mark.parametrize("crossings, form", [((-1, -2, 1), "++"), ((0, -1, 1), "0+"), ((2, 1, 3), "-+")])
def test_obstruction_initial_eta1_plus_with_eps_one(crossings, form):
    pc = gamma0_curve(crossings)
    assert epsilon(pc) == 1
    assert classify_arcs(pc)[0].form == form
    assert not validate_curve(pc).passed("no_initial_eta1_x+_when_eps1")


def test_stair_sample_clean():
    rep = validate_curve(curve_from_complex(stair_sample()), check_symmetry=True)
    assert rep.ok, rep.messages


def test_structure_flags():
    assert not validate_curve(gamma0_curve((1, 1, 0))).passed("pulled_tight")
    assert not validate_curve(gamma0_curve((1, 0))).passed("parity")
    two = PegCurve((CurveComponent(GAMMA0, (0,)), CurveComponent(GAMMA0, (0,))))
    assert not validate_curve(two).passed("one_gamma0")
    with pytest.raises(CurveFormatError):
        CurveComponent(CLOSED, (0, 1, 2), "right")
    with pytest.raises(CurveFormatError):
        CurveComponent(GAMMA0, (0,), "right")


def test_symmetry_check():
    assert not validate_curve(gamma0_curve((2, 1, -1)), check_symmetry=True).passed("rotation_symmetric")
    assert validate_curve(gamma0_curve((2, 1, 0, -1, -2)), check_symmetry=True).passed("rotation_symmetric")


def test_gradability_flag():
    # a loop 0 -> 2 -> 1 -> ... whose Maslov grading cannot close up
    bad = with_closed(gamma0_curve((0,)), CurveComponent(CLOSED, (0, 2, 1, 3), "right"))
    assert not validate_curve(bad).passed("gradable")
    with pytest.raises(ValueError):
        curve_to_complex(bad)


def test_json_round_trip(tmp_path):
    pc = with_closed(curve_from_complex(stair_sample()), box_component(2, 1, 0))
    path = tmp_path / "c.json"
    dump_curve(pc, path)
    assert load_curve(path) == pc
    with pytest.raises(CurveFormatError):
        PegCurve.from_json({"components": [{"crossings": [0]}]})


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_round_trip_random(seed):
    c = random_simplified(random.Random(seed))
    s, h, v = simultaneous_simplify(c)
    assert same_complex(s, mod_uv(c))
    pc = complex_to_curve(s, h, v)
    back = curve_to_complex(pc)
    assert same_complex(back, mod_uv(c))
    assert torsion_order(back) == pc.max_right_arc()


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_curve_properties(seed):
    rng = random.Random(seed)
    pc = random_curve(rng)
    rep = validate_curve(pc)
    assert rep.ok, rep.messages
    c = curve_to_complex(pc)
    assert validate(c).ok
    assert torsion_order(c) == pc.max_right_arc()
    line = pc.without_closed()
    assert (tau(line), epsilon(line)) == (tau(pc), epsilon(pc))
    m = mirror_curve(pc)
    assert (tau(m), epsilon(m)) == (-tau(pc), -epsilon(pc))
    if len(pc.gamma0.crossings) > 1:
        assert epsilon(pc) == 1


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_canonical_form_ignores_rotation_and_reflection(seed):
    rng = random.Random(seed)
    comp = box_component(rng.randint(1, 4), rng.randint(1, 4), rng.randint(-3, 3))
    h = comp.crossings
    r = rng.randrange(4)
    rolled = CurveComponent(CLOSED, h[r:] + h[:r], "right" if r % 2 == 0 else "left")
    rev = CurveComponent(CLOSED, tuple(reversed(h)), "right")
    base = PegCurve((gamma0_curve((0,)).gamma0, comp)).canonical()
    assert PegCurve((gamma0_curve((0,)).gamma0, rolled)).canonical() == base
    assert PegCurve((gamma0_curve((0,)).gamma0, rev)).canonical() == base


def test_rotation_of_staircase_is_itself():
    pc = staircase_curve(StaircaseSpec((4, 3, 1, 0, -1, -3, -4)))
    assert rotate(pc).canonical() == pc.canonical()
