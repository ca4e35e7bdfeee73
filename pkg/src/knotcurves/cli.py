"""Command-line front end.

Knot specs: ``T(p0,q0)`` or ``file:PATH``, each optionally followed by
``;(p,q)`` stages, e.g. ``T(2,3);(2,3)`` or ``file:k.json;(3,-1)``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .bounds import SCHEMA, report
from .cabling import BadCable, CableParams, CableSpec, base_curve, cable_geometric, crosscheck_rules
from .complex_core import BigradedComplex, ComplexFormatError, NotKnotLike, load_complex, validate
from .curve_model import CurveFormatError, PegCurve, epsilon, load_curve, render, tau, validate_curve
from .simplify import LocalSystemRequired

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PARSE = 3
EXIT_LOCAL_SYSTEM = 4
EXIT_MISMATCH = 5


class SpecParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        self.text, self.pos, self.msg = text, pos, msg
        super().__init__(f"{msg} at position {pos}\n  {text}\n  {' ' * pos}^")


class _Exit(Exception):
    def __init__(self, code: int, msg: str):
        self.code, self.msg = code, msg


_INT = r"\s*([+-]?\d+)\s*"
_PAIR = re.compile(r"\(" + _INT + "," + _INT + r"\)")
_TORUS = re.compile(r"\s*T" + _PAIR.pattern)


def parse_spec(text: str) -> CableSpec:
    pos = 0
    torus = path = None
    m = _TORUS.match(text, pos)
    if m:
        torus = (int(m.group(1)), int(m.group(2)))
        pos = m.end()
    elif text.lstrip().startswith("file:"):
        start = text.index("file:") + len("file:")
        end = text.find(";", start)
        end = len(text) if end < 0 else end
        path = text[start:end].strip()
        if not path:
            raise SpecParseError(text, start, "empty file path")
        pos = end
    else:
        raise SpecParseError(text, len(text) - len(text.lstrip()), "expected T(p0,q0) or file:PATH")
    try:
        base = CableSpec(torus=torus, path=path)
    except BadCable as exc:
        raise SpecParseError(text, 0, str(exc)) from None

    stages = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        if text[pos] != ";":
            raise SpecParseError(text, pos, "expected ';'")
        pos += 1
        while pos < len(text) and text[pos].isspace():
            pos += 1
        m = _PAIR.match(text, pos)
        if not m:
            raise SpecParseError(text, pos, "expected a stage (p,q)")
        try:
            stages.append(CableParams(int(m.group(1)), int(m.group(2))))
        except BadCable as exc:
            raise SpecParseError(text, pos, str(exc)) from None
        pos = m.end()
    return CableSpec(base.torus, base.path, tuple(stages))


def _load_base(spec: CableSpec) -> PegCurve:
    if spec.path is not None:
        try:
            c = load_complex(spec.path)
        except (OSError, json.JSONDecodeError, ComplexFormatError) as exc:
            raise _Exit(EXIT_PARSE, f"cannot read complex {spec.path}: {exc}")
        rep = validate(c)
        if not rep.ok:
            raise _Exit(EXIT_INVALID, "invalid complex:\n  " + "\n  ".join(rep.messages))
    return base_curve(spec)


def _curve(spec: CableSpec, check_rules: bool = False) -> PegCurve:
    pc = _load_base(spec)
    for st in spec.stages:
        if check_rules:
            rep = crosscheck_rules(pc, st)
            if not rep.ok:
                raise _Exit(EXIT_MISMATCH, "rule/geometry mismatch:\n  " + "\n  ".join(rep.mismatches))
        pc = cable_geometric(pc, st)
    return pc


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    try:
        doc = json.loads(Path(args.path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {args.path}: {exc}")
    try:
        if "components" in doc:
            rep = validate_curve(PegCurve.from_json(doc), check_symmetry=True)
        else:
            rep = validate(BigradedComplex.from_json(doc))
    except (ComplexFormatError, CurveFormatError) as exc:
        raise _Exit(EXIT_PARSE, str(exc))
    lines = [f"{name}: {'ok' if ok else 'FAIL'}" for name, ok in rep.checks.items()]
    lines += rep.messages
    _emit(args, rep.to_json(), "\n".join(lines) + "\n")
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_ord(args) -> int:
    pc = _curve(args.spec)
    n = pc.max_right_arc()
    _emit(args, {"spec": str(args.spec), "ord": n}, f"{n}\n")
    return EXIT_OK


def cmd_tau(args) -> int:
    t = tau(_curve(args.spec))
    _emit(args, {"spec": str(args.spec), "tau": t}, f"{t}\n")
    return EXIT_OK


def cmd_epsilon(args) -> int:
    e = epsilon(_curve(args.spec))
    _emit(args, {"spec": str(args.spec), "epsilon": e}, f"{e}\n")
    return EXIT_OK


def cmd_cable(args) -> int:
    pc = _curve(args.spec, check_rules=args.check_rules)
    text = json.dumps(pc.to_json(), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bounds(args) -> int:
    _load_base(args.spec)
    rep = report(args.spec, slice_assumed=args.slice)
    text = rep.dumps() if args.json else rep.to_text()
    sys.stdout.write(text)
    return EXIT_OK


def cmd_render(args) -> int:
    try:
        pc = load_curve(args.path)
    except (OSError, json.JSONDecodeError, CurveFormatError) as exc:
        raise _Exit(EXIT_PARSE, f"cannot read curve {args.path}: {exc}")
    text = render(pc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="knotcurves", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a complex or curve JSON file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    for name, func, help_ in (
        ("ord", cmd_ord, "torsion order"),
        ("tau", cmd_tau, "tau read from gamma0"),
        ("epsilon", cmd_epsilon, "epsilon read from gamma0"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("spec")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("cable", help="cabled curve as JSON")
    p.add_argument("spec")
    p.add_argument("--check-rules", action="store_true", help="compare every covered arc with the closed-form rules")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_cable)

    p = sub.add_parser("bounds", help="lower bounds report")
    p.add_argument("spec")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--text", action="store_true")
    p.add_argument("--slice", action="store_true", help="assume the base knot is slice")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("render", help="ASCII peg diagram of a curve file")
    p.add_argument("path")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if hasattr(args, "spec"):
            args.spec = parse_spec(args.spec)
        return args.func(args)
    except SpecParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except _Exit as exc:
        sys.stderr.write(exc.msg + "\n")
        return exc.code
    except LocalSystemRequired as exc:
        sys.stderr.write(f"local system required: {exc}\n")
        return EXIT_LOCAL_SYSTEM
    except NotKnotLike as exc:
        sys.stderr.write(f"not knot-like: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
