"""Peg-diagram model of immersed curves.

Curves live in the strip [-1/2, 1/2] x R with pegs at (0, m + 1/2).  A
component is stored by its ordered axis crossings (heights) and the side of
its first arc; arcs alternate sides.  ``gamma0`` is linear: its first arc is
the essential left arc ending at crossings[0] (= y0) and its last arc is the
essential right arc leaving crossings[-1] (= x0).  Closed components are
cyclic.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property
from fractions import Fraction
from pathlib import Path

from .complex_core import MOD_UV, BigradedComplex, Generator, ValidationReport
from .simplify import ArrowPairing, simultaneous_simplify

LEFT = "left"
RIGHT = "right"
GAMMA0 = "gamma0"
CLOSED = "closed"


def _other(side: str) -> str:
    return LEFT if side == RIGHT else RIGHT


class CurveFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Arc:
    side: str
    start: Fraction | int  # height at the first crossing in traversal order
    end: Fraction | int
    position: int  # index in CurveComponent.arcs()
    essential: bool = False
    # crossing indices of the two ends; None marks the boundary point (+-1/2, 0)
    start_index: int | None = None
    end_index: int | None = None

    @property
    def length(self):
        return abs(self.end - self.start)

    @property
    def top(self):
        return max(self.start, self.end)

    @property
    def bottom(self):
        return min(self.start, self.end)


@dataclass(frozen=True)
class CurveComponent:
    kind: str
    crossings: tuple
    first_side: str = LEFT
    labels: tuple[str, ...] | None = None
    gr_u0: int | None = None  # closed components only: gr_U of crossings[0]

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if self.kind not in (GAMMA0, CLOSED):
            raise CurveFormatError(f"unknown component kind {self.kind!r}")
        if self.first_side not in (LEFT, RIGHT):
            raise CurveFormatError(f"unknown side {self.first_side!r}")
        if not self.crossings:
            raise CurveFormatError("a component needs at least one crossing")
        if self.kind == GAMMA0 and self.first_side != LEFT:
            raise CurveFormatError("gamma0 starts with the essential left arc")
        if self.kind == CLOSED and len(self.crossings) % 2:
            raise CurveFormatError("closed components cross the axis an even number of times")
        if self.labels is not None and len(self.labels) != len(self.crossings):
            raise CurveFormatError("labels must match crossings")

    def arcs(self) -> list[Arc]:
        return list(self._arcs)

    @cached_property
    def _arcs(self) -> tuple[Arc, ...]:
        h = self.crossings
        n = len(h)
        if self.kind == GAMMA0:
            out = [Arc(LEFT, 0, h[0], 0, True, None, 0)]
            side = RIGHT
            for i in range(n - 1):
                out.append(Arc(side, h[i], h[i + 1], i + 1, False, i, i + 1))
                side = _other(side)
            out.append(Arc(RIGHT, h[-1], 0, n, True, n - 1, None))
            return tuple(out)
        out = []
        side = self.first_side
        for i in range(n):
            j = (i + 1) % n
            out.append(Arc(side, h[i], h[j], i, False, i, j))
            side = _other(side)
        return tuple(out)

    def to_json(self) -> dict:
        doc = {
            "kind": self.kind,
            "crossings": [_num_out(x) for x in self.crossings],
            "first_side": self.first_side,
        }
        if self.labels is not None:
            doc["labels"] = list(self.labels)
        if self.gr_u0 is not None:
            doc["gr_u0"] = self.gr_u0
        return doc


def _num_out(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def _num_in(x):
    if isinstance(x, str):
        f = Fraction(x)
        return int(f) if f.denominator == 1 else f
    if isinstance(x, float):
        raise CurveFormatError("heights must be exact (int or 'p/q' string)")
    return int(x)


@dataclass(frozen=True)
class PegCurve:
    components: tuple[CurveComponent, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def gamma0(self) -> CurveComponent | None:
        g = [c for c in self.components if c.kind == GAMMA0]
        return g[0] if len(g) == 1 else None

    @property
    def closed(self) -> list[CurveComponent]:
        return [c for c in self.components if c.kind == CLOSED]

    def right_arc_lengths(self) -> list[int]:
        return sorted(
            a.length for comp in self.components for a in comp.arcs()
            if a.side == RIGHT and not a.essential
        )

    def max_right_arc(self) -> int:
        return max(self.right_arc_lengths(), default=0)

    def canonical(self) -> "PegCurve":
        """Curve with labels/gradings dropped and closed components normalized."""
        comps = []
        for comp in self.components:
            if comp.kind == GAMMA0:
                comps.append(CurveComponent(GAMMA0, comp.crossings))
            else:
                comps.append(_canonical_closed(comp))
        gam = [c for c in comps if c.kind == GAMMA0]
        rest = sorted((c for c in comps if c.kind == CLOSED), key=lambda c: (len(c.crossings), c.crossings))
        return PegCurve(tuple(gam + rest))

    def without_closed(self) -> "PegCurve":
        return PegCurve(tuple(c for c in self.components if c.kind == GAMMA0))

    def to_json(self) -> dict:
        return {"components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, doc: dict) -> "PegCurve":
        try:
            comps = []
            for c in doc["components"]:
                labels = c.get("labels")
                comps.append(CurveComponent(
                    c["kind"],
                    tuple(_num_in(x) for x in c["crossings"]),
                    c.get("first_side", LEFT),
                    tuple(labels) if labels is not None else None,
                    c.get("gr_u0"),
                ))
            return cls(tuple(comps))
        except (KeyError, TypeError) as exc:
            raise CurveFormatError(f"malformed curve document: {exc}") from exc


def _canonical_closed(comp: CurveComponent) -> CurveComponent:
    h = comp.crossings
    n = len(h)
    sides = [comp.first_side if i % 2 == 0 else _other(comp.first_side) for i in range(n)]
    best = None
    for r in range(n):
        fwd = tuple(h[(r + i) % n] for i in range(n))
        if sides[r] == RIGHT and (best is None or fwd < best):
            best = fwd
        # reversed traversal from crossing r: first arc is the one ending at r
        rev = tuple(h[(r - i) % n] for i in range(n))
        if sides[(r - 1) % n] == RIGHT and (best is None or rev < best):
            best = rev
    return CurveComponent(CLOSED, best, RIGHT)


def load_curve(path) -> PegCurve:
    return PegCurve.from_json(json.loads(Path(path).read_text()))


def dump_curve(pc: PegCurve, path) -> None:
    Path(path).write_text(json.dumps(pc.to_json(), indent=2) + "\n")


# ---- complex <-> curve ------------------------------------------------------

def complex_to_curve(c: BigradedComplex, hpair: ArrowPairing, vpair: ArrowPairing) -> PegCurve:
    alex = {g.id: g.alexander for g in c.generators}
    gr_u = {g.id: g.gr_u for g in c.generators}
    right = {}
    left = {}
    for s, t, n in hpair.pairs:
        if alex[t] - alex[s] != n:
            raise ValueError(f"horizontal pair {s}->{t} has inconsistent length")
        right[s], right[t] = t, s
    for s, t, m in vpair.pairs:
        if alex[s] - alex[t] != m:
            raise ValueError(f"vertical pair {s}->{t} has inconsistent length")
        left[s], left[t] = t, s

    x0, y0 = hpair.unpaired, vpair.unpaired
    if (x0 is None) != (y0 is None):
        raise ValueError("exactly one of the pairings leaves a generator unpaired")
    comps = []
    seen = set()
    if y0 is not None:
        seq = [y0]
        cur, side = y0, RIGHT
        while True:
            nxt = (right if side == RIGHT else left).get(cur)
            if nxt is None:
                if side != RIGHT or cur != x0:
                    raise ValueError("gamma0 does not end at the horizontally unpaired generator")
                break
            seq.append(nxt)
            cur, side = nxt, _other(side)
        seen.update(seq)
        comps.append(CurveComponent(GAMMA0, tuple(alex[g] for g in seq), LEFT, tuple(seq)))
    for start in c.ids:
        if start in seen:
            continue
        seq = [start]
        cur, side = start, RIGHT
        while True:
            nxt = (right if side == RIGHT else left)[cur]
            if nxt == start:
                break
            seq.append(nxt)
            cur, side = nxt, _other(side)
        seen.update(seq)
        comps.append(CurveComponent(CLOSED, tuple(alex[g] for g in seq), RIGHT, tuple(seq), gr_u[start]))
    return PegCurve(tuple(comps))


def curve_from_complex(c: BigradedComplex) -> PegCurve:
    """Simultaneously simplify, then read off the curve."""
    simp, h, v = simultaneous_simplify(c)
    return complex_to_curve(simp, h, v)


def _propagate_gr_u(comp: CurveComponent, start: int) -> list[int]:
    """gr_U of each crossing, walking the component from crossing 0."""
    h = comp.crossings
    out = [start]
    for arc in comp.arcs():
        if arc.essential or arc.end_index == 0:
            continue
        g = out[-1]
        up = arc.end > arc.start
        if arc.side == RIGHT:
            n = arc.length
            out.append(g - 1 + 2 * n if up else g + 1 - 2 * n)
        else:
            out.append(g - 1 if not up else g + 1)
    assert len(out) == len(h)
    return out


def _closing_gr_u(comp: CurveComponent, gr: list[int]) -> int:
    """gr_U of crossing 0 obtained by walking the last arc of a closed component."""
    arc = comp.arcs()[-1]
    up = arc.end > arc.start
    g = gr[-1]
    if arc.side == RIGHT:
        return g - 1 + 2 * arc.length if up else g + 1 - 2 * arc.length
    return g + 1 if up else g - 1


def curve_to_complex(pc: PegCurve) -> BigradedComplex:
    gens: list[Generator] = []
    arrows = []
    for ci, comp in enumerate(pc.components):
        names = comp.labels or tuple(f"{'y' if comp.kind == GAMMA0 else 'c'}{ci}_{k}" for k in range(len(comp.crossings)))
        for x in comp.crossings:
            if Fraction(x).denominator != 1:
                raise ValueError("curve_to_complex needs integer crossing heights")
        start = 0 if comp.kind == GAMMA0 else (comp.gr_u0 or 0)
        gr = _propagate_gr_u(comp, start)
        if comp.kind == CLOSED and _closing_gr_u(comp, gr) != gr[0]:
            raise ValueError(f"closed component {ci} admits no Maslov grading")
        for name, g, a in zip(names, gr, comp.crossings):
            gens.append(Generator(name, g, g - 2 * int(a)))
        for arc in comp.arcs():
            if arc.essential:
                continue
            lo, hi = sorted((arc.start_index, arc.end_index), key=lambda k: comp.crossings[k])
            n = int(arc.length)
            if arc.side == RIGHT:
                arrows.append(((names[lo], names[hi]), (n, 0)))
            else:
                arrows.append(((names[hi], names[lo]), (0, n)))
    return BigradedComplex(MOD_UV, tuple(gens), tuple(arrows))


# ---- arc classification, tau, epsilon -----------------------------------------

@dataclass(frozen=True)
class ArcForm:
    form: str  # top superscript + bottom superscript, or "0" for the degenerate arc
    length: int
    initial: bool
    component: int = 0
    position: int = 0
    y0_end: str | None = None  # "top" / "bottom" when the arc contains y0

    @property
    def top(self) -> str:
        return self.form[0]

    @property
    def bottom(self) -> str:
        return self.form[-1]

    def label(self) -> str:
        if self.form == "0":
            return "eta^0"
        tag = " (initial)" if self.initial else ""
        return f"eta_{self.length}^{{{self.form}}}{tag}"


def _turn(h: int, far) -> str:
    return "+" if far > h else "-" if far < h else "0"


def classify_arcs(pc: PegCurve) -> list[ArcForm]:
    """Forms of all non-essential right arcs.

    The superscript at an end records where the neighbouring arc through
    that crossing goes; for the essential arcs of gamma0 that is height 0.
    """
    out = []
    for ci, comp in enumerate(pc.components):
        h = comp.crossings
        n = len(h)
        closed = comp.kind == CLOSED
        if not closed and n == 1:
            out.append(ArcForm("0", 0, True, ci, 0, None))
            continue

        def far(idx: int, away: int):
            # far end of the arc through crossing idx that does not lead to ``away``
            nb = 2 * idx - away
            if closed:
                return h[nb % n]
            return 0 if nb < 0 or nb >= n else h[nb]

        for arc in comp._arcs:
            if arc.side != RIGHT or arc.essential:
                continue
            a, b = arc.start_index, arc.end_index
            if closed and b == 0 and a == n - 1:
                b_away, a_away = a - n, b + n  # wrap-around arc, unwrap the indices
            else:
                b_away, a_away = a, b
            if arc.start > arc.end:
                top_i, bot_i, top_away, bot_away = a, b, a_away, b_away
            else:
                top_i, bot_i, top_away, bot_away = b, a, b_away, a_away
            form = _turn(h[top_i], far(top_i, top_away)) + _turn(h[bot_i], far(bot_i, bot_away))
            initial = not closed and 0 in (top_i, bot_i)
            y0_end = None
            if initial:
                y0_end = "top" if top_i == 0 else "bottom"
            out.append(ArcForm(form, int(arc.length), initial, ci, arc.position, y0_end))
    return out


def _require_gamma0(pc: PegCurve) -> CurveComponent:
    g = pc.gamma0
    if g is None:
        raise ValueError("curve has no gamma0 component")
    return g


def tau(pc: PegCurve) -> int:
    y0 = _require_gamma0(pc).crossings[0]
    return math.floor(Fraction(1, 2) + Fraction(y0))


def epsilon(pc: PegCurve) -> int:
    g = _require_gamma0(pc)
    if len(g.crossings) == 1:
        if g.crossings[0] != 0:
            raise ValueError("gamma0 with one crossing away from height 0 has no well-defined epsilon")
        return 0
    # the initial right arc runs from y0 to crossings[1]
    return 1 if g.crossings[1] < g.crossings[0] else -1


def ord_from_curve(pc: PegCurve) -> int:
    return pc.max_right_arc()


# ---- validation ---------------------------------------------------------------

def rotate(pc: PegCurve) -> PegCurve:
    """Image under rotation by 180 degrees: heights negate, sides swap."""
    comps = []
    for comp in pc.components:
        neg = tuple(-x for x in comp.crossings)
        if comp.kind == GAMMA0:
            comps.append(CurveComponent(GAMMA0, tuple(reversed(neg))))
        else:
            comps.append(CurveComponent(CLOSED, neg, _other(comp.first_side)))
    return PegCurve(tuple(comps))


def mirror_curve(pc: PegCurve) -> PegCurve:
    """Curve of the mirror knot: reflect heights, keep sides."""
    return PegCurve(tuple(
        CurveComponent(c.kind, tuple(-x for x in c.crossings), c.first_side, c.labels,
                       None if c.gr_u0 is None else -c.gr_u0)
        for c in pc.components
    ))


def check_structure(pc: PegCurve) -> ValidationReport:
    """The cheap checks: one gamma0, integer heights, tight arcs, odd parity."""
    rep = ValidationReport()
    gammas = [c for c in pc.components if c.kind == GAMMA0]
    rep.checks["one_gamma0"] = len(gammas) == 1
    if len(gammas) != 1:
        rep.messages.append(f"one_gamma0: found {len(gammas)} gamma0 components")

    rep.checks["integer_heights"] = True
    rep.checks["pulled_tight"] = True
    rep.checks["parity"] = True
    for ci, comp in enumerate(pc.components):
        if any(Fraction(x).denominator != 1 for x in comp.crossings):
            rep.fail("integer_heights", f"component {ci} has non-integer crossings")
        if comp.kind == GAMMA0 and len(comp.crossings) % 2 == 0:
            rep.fail("parity", f"gamma0 has {len(comp.crossings)} crossings")
        for arc in comp.arcs():
            if not arc.essential and arc.length < 1:
                rep.fail("pulled_tight", f"component {ci} arc {arc.position} spans no peg")
    return rep


def validate_curve(pc: PegCurve, check_symmetry: bool = False) -> ValidationReport:
    rep = check_structure(pc)
    if not (rep.checks["one_gamma0"] and rep.checks["pulled_tight"]):
        return rep

    g = pc.gamma0
    rep.checks["gamma0_degenerate_at_zero"] = not (len(g.crossings) == 1 and g.crossings[0] != 0)
    if not rep.checks["gamma0_degenerate_at_zero"]:
        rep.messages.append("gamma0_degenerate_at_zero: single-crossing gamma0 must sit at height 0")
        return rep

    forms = classify_arcs(pc)
    eps = epsilon(pc)
    rep.checks["no_noninitial_eta1_-+"] = True
    rep.checks["no_initial_eta1_x+_when_eps1"] = True
    for f in forms:
        if not f.initial and f.form == "-+" and f.length == 1:
            rep.fail("no_noninitial_eta1_-+", f"component {f.component} arc {f.position} is a noninitial eta_1^-+")
        if f.initial and eps == 1 and f.length == 1 and f.form in ("++", "-+", "0+"):
            rep.fail("no_initial_eta1_x+_when_eps1", f"initial right arc is eta_1^{{{f.form}}} with eps = 1")

    rep.checks["gradable"] = True
    if rep.checks["integer_heights"]:
        gr = _propagate_gr_u(g, 0)
        if gr[-1] - 2 * int(g.crossings[-1]) != 0:
            rep.fail("gradable", "gr_V(x0) != 0 when gr_U(y0) = 0")
        for ci, comp in enumerate(pc.components):
            if comp.kind == CLOSED:
                gr = _propagate_gr_u(comp, 0)
                if _closing_gr_u(comp, gr) != gr[0]:
                    rep.fail("gradable", f"closed component {ci} admits no Maslov grading")

    if check_symmetry:
        rep.checks["rotation_symmetric"] = rotate(pc).canonical() == pc.canonical()
        if not rep.checks["rotation_symmetric"]:
            rep.messages.append("rotation_symmetric: curve differs from its 180 degree rotation")
    return rep


# ---- rendering ----------------------------------------------------------------

def render(pc: PegCurve) -> str:
    """ASCII peg diagram, one row per half unit of height.

    The axis column shows pegs as ``o`` and crossings as ``*``.  Each left arc
    gets a column of ``(`` to the left of the axis, each right arc a column of
    ``)`` to the right, nested by length.  ``<`` and ``>`` mark the rows where
    the essential arcs leave gamma0.
    """
    heights = [Fraction(x) for comp in pc.components for x in comp.crossings] or [Fraction(0)]
    hi = max(max(heights), 0) + 1
    lo = min(min(heights), 0) - 1
    lefts, rights, essentials = [], [], []
    for comp in pc.components:
        for arc in comp.arcs():
            if arc.essential:
                essentials.append(arc)
            elif arc.side == LEFT:
                lefts.append(arc)
            else:
                rights.append(arc)
    key = lambda a: (a.length, a.bottom, a.top)
    lefts.sort(key=key)
    rights.sort(key=key)
    crossing_rows = defaultdict(int)
    for h in heights:
        crossing_rows[h] += 1

    lines = []
    row = hi
    half = Fraction(1, 2)
    while row >= lo:
        axis = "|"
        if row.denominator == 2:
            axis = "o"
        elif crossing_rows[row]:
            axis = "*"
        lcols = ["(" if a.bottom <= row <= a.top else " " for a in reversed(lefts)]
        rcols = [")" if a.bottom <= row <= a.top else " " for a in rights]
        lmark = "<" if any(a.side == LEFT and a.end == row for a in essentials) else " "
        rmark = ">" if any(a.side == RIGHT and a.start == row for a in essentials) else " "
        label = f"{_fmt_height(row):>6} "
        lines.append(label + lmark + "".join(lcols) + axis + "".join(rcols) + rmark)
        row -= half
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _fmt_height(x: Fraction) -> str:
    return str(int(x)) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def gamma0_curve(crossings) -> PegCurve:
    return PegCurve((CurveComponent(GAMMA0, tuple(crossings)),))


def with_closed(pc: PegCurve, *closed: CurveComponent) -> PegCurve:
    return replace(pc, components=pc.components + tuple(closed))
