import json
import subprocess
import sys
from pathlib import Path

import pytest

from knotcurves import cabling
from knotcurves.cabling import CableParams
from knotcurves.cli import (
    EXIT_INVALID,
    EXIT_LOCAL_SYSTEM,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PARSE,
    SpecParseError,
    main,
    parse_spec,
)
from knotcurves.curve_model import ArcForm

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("spec, want", [
    ("T(2,3);(2,3)", "2"),
    ("T(2,3)", "1"),
    (f"file:{DATA / 'unknot.json'}", "0"),
    (f"file:{DATA / 'stair_sample.json'}", "3"),
    ("T(3,5) ; (2,31)", "5"),
])
def test_ord(capsys, spec, want):
    code, out, _ = run(capsys, "ord", spec)
    assert code == EXIT_OK and out == want + "\n"


def test_tau_epsilon(capsys):
    assert run(capsys, "tau", f"file:{DATA / 'stair_sample.json'}")[1] == "4\n"
    assert run(capsys, "epsilon", f"file:{DATA / 'stair_sample.json'}")[1] == "1\n"
    assert run(capsys, "tau", "T(2,-3)")[1] == "-1\n"
    code, out, _ = run(capsys, "epsilon", "T(2,3);(2,3)", "--json")
    assert json.loads(out) == {"schema": 1, "spec": "T(2,3);(2,3)", "epsilon": 1}


def test_parse_spec():
    s = parse_spec("T(2,3);(2,-3);(3,7)")
    assert s.torus == (2, 3)
    assert s.stages == (CableParams(2, -3), CableParams(3, 7))
    assert parse_spec("file:a b.json;(2,1)").path == "a b.json"


@pytest.mark.parametrize("text, pos", [
    ("T(2,3);(2,4)", 7),
    ("T(2,3)(2,3)", 6),
    ("X(2,3)", 0),
    ("T(2,3);(1,3)", 7),
    ("T(2,3);", 7),
    ("file:", 5),
])
def test_parse_errors(text, pos):
    with pytest.raises(SpecParseError) as info:
        parse_spec(text)
    assert info.value.pos == pos


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "ord", "T(2,3);(2,4)")
    assert code == EXIT_PARSE
    assert err.splitlines()[-1] == "         ^"


def test_missing_file_is_parse_error(capsys):
    assert run(capsys, "ord", "file:/nonexistent.json")[0] == EXIT_PARSE


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", str(DATA / "stair_sample.json"))
    assert code == EXIT_OK and "grading_law: ok" in out
    code, out, _ = run(capsys, "validate", str(DATA / "loop_sample.json"))
    assert code == EXIT_INVALID
    code, out, _ = run(capsys, "validate", str(DATA / "stair_sample_curve.json"), "--json")
    assert code == EXIT_OK and json.loads(out)["schema"] == 1


def test_invalid_complex_exit(capsys):
    assert run(capsys, "ord", f"file:{DATA / 'loop_sample.json'}")[0] == EXIT_INVALID


def test_local_system_exit(capsys):
    code, _, err = run(capsys, "ord", f"file:{DATA / 'local_system.json'}")
    assert code == EXIT_LOCAL_SYSTEM and "local system" in err


def test_mismatch_exit(capsys, monkeypatch):
    real = cabling.cable_arc_rule

    def skewed(a: ArcForm, cp, t):
        got = real(a, cp, t)
        return ArcForm(got.form, got.length + 1, got.initial)

    monkeypatch.setattr(cabling, "cable_arc_rule", skewed)
    code, _, err = run(capsys, "cable", "T(3,4);(2,5)", "--check-rules")
    assert code == EXIT_MISMATCH and "mismatch" in err


def test_cable_check_rules(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, _, _ = run(capsys, "cable", "T(2,3);(2,3)", "--check-rules", "--out", str(out))
    assert code == EXIT_OK
    assert out.read_bytes() == (GOLDEN / "trefoil_2_3_cable.json").read_bytes()
    code, text, _ = run(capsys, "cable", "T(3,4);(2,-7);(3,5)", "--check-rules")
    assert code == EXIT_OK and json.loads(text)["components"]


@pytest.mark.parametrize("curve, golden", [
    (DATA / "stair_sample_curve.json", "stair_sample_render.txt"),
    (GOLDEN / "trefoil_2_3_cable.json", "trefoil_2_3_render.txt"),
])
def test_render_golden(capsys, curve, golden):
    code, out, _ = run(capsys, "render", str(curve))
    assert code == EXIT_OK
    assert out == (GOLDEN / golden).read_text()


def test_bounds_golden(capsys):
    code, out, _ = run(capsys, "bounds", "T(3,5);(2,31)", "--json")
    assert code == EXIT_OK
    assert out == (GOLDEN / "t35_2_31_bounds.json").read_text()
    code, out, _ = run(capsys, "bounds", "T(2,3);(2,3)", "--text", "--slice")
    assert "br_lower" in out and "minima_lower" in out


def test_byte_determinism():
    argv = [sys.executable, "-m", "knotcurves.cli", "bounds", "T(3,4);(2,13)", "--json"]
    runs = {subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)}
    assert len(runs) == 1
