"""(p, q)-cabling of peg curves.

Two routes: ``cable_geometric`` draws p scaled, staggered copies of the curve,
joins the copies of gamma0 end to end and merges all pegs onto one axis;
``cable_arc_rule`` predicts the image of a single right arc in closed form.
``crosscheck_rules`` compares them.

Geometric model.  Copy k (1..p) sends height a to p*a - (k-1)*q, and its
pegs land at p*(m + 1/2) - (k-1)*q.  Before merging, copy k's axis sits to
the right of copy k-1's, so a path segment drawn between the axes of copies
t and t+1 passes the pegs of copies 1..t on their right and the others on
their left.  A right arc of copy k lives in the slot t = k, a left arc in
t = k - 1, the connector from copy k to copy k+1 in t = k, and the two
essential ends in t = 0 and t = p.  Walking the path and crossing the merged
axis only when the next peg demands the other side gives a representative
of the merged curve; free cancellation of repeated crossings pulls it tight.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

from .complex_core import load_complex
from .curve_model import (
    CLOSED,
    GAMMA0,
    LEFT,
    RIGHT,
    ArcForm,
    CurveComponent,
    PegCurve,
    check_structure,
    classify_arcs,
    curve_from_complex,
    mirror_curve,
    tau,
)
from .lspace import staircase_curve, torus_alexander


class BadCable(ValueError):
    pass


class RuleNotApplicable(ValueError):
    pass


class NotPulledTight(AssertionError):
    pass


@dataclass(frozen=True)
class CableParams:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise BadCable(f"cable needs p >= 2, got p = {self.p}")
        if gcd(self.p, self.q) != 1:
            raise BadCable(f"cable needs gcd(p, q) = 1, got ({self.p}, {self.q})")

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class CableSpec:
    """Base knot plus cabling stages.

    The base is a torus knot ``torus=(p0, q0)``, a complex file ``path``, or
    the unknot when both are None.
    """

    torus: tuple[int, int] | None = None
    path: str | None = None
    stages: tuple[CableParams, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        if self.torus is not None and self.path is not None:
            raise BadCable("give a torus base or a file base, not both")
        if self.torus is not None:
            p0, q0 = self.torus
            if gcd(p0, q0) != 1 or min(abs(p0), abs(q0)) < 2:
                raise BadCable(f"T({p0},{q0}) is not a nontrivial torus knot")

    def normalized_torus(self) -> tuple[int, int, bool]:
        """(p0, q0, mirrored) with 1 < p0 < q0."""
        p0, q0 = self.torus
        mirrored = (p0 < 0) != (q0 < 0)
        a, b = sorted((abs(p0), abs(q0)))
        return a, b, mirrored

    def ps(self) -> list[int]:
        return [s.p for s in self.stages]

    def __str__(self) -> str:
        if self.torus is not None:
            base = f"T({self.torus[0]},{self.torus[1]})"
        elif self.path is not None:
            base = f"file:{self.path}"
        else:
            base = "unknot"
        return ";".join([base] + [str(s) for s in self.stages])


# ---- geometric cabling --------------------------------------------------------

# Heights are handled in quarter units so crossings (nudged by +1/4) never
# coincide with pegs.


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, *xs: int) -> None:
        roots = [self.find(x) for x in xs]
        for r in roots[1:]:
            self.parent[r] = roots[0]


class _Walker:
    """Walks a path through the merged peg column, emitting axis crossings."""

    def __init__(self, pegs: list[tuple[int, int]]):
        self.heights = [h for h, _ in pegs]
        self.copies = [c for _, c in pegs]
        self.gaps: list[int] = []
        self.side = LEFT

    def gap_of(self, h4: int) -> int:
        i = bisect.bisect_left(self.heights, h4)
        assert i == len(self.heights) or self.heights[i] != h4, "point sits on a peg"
        return i

    def cross(self, gap: int) -> None:
        self.gaps.append(gap)
        self.side = RIGHT if self.side == LEFT else LEFT

    def segment(self, start: int, end: int, slot: int) -> None:
        if end > start:
            lo = bisect.bisect_right(self.heights, start)
            hi = bisect.bisect_left(self.heights, end)
            order = range(lo, hi)
            offset = 0
        else:
            lo = bisect.bisect_right(self.heights, end)
            hi = bisect.bisect_left(self.heights, start)
            order = range(hi - 1, lo - 1, -1)
            offset = 1
        for r in order:
            need = RIGHT if self.copies[r] <= slot else LEFT
            if need != self.side:
                self.cross(r + offset)


def _pegs(p: int, q: int, lo4: int, hi4: int) -> list[tuple[int, int]]:
    out = []
    for k in range(1, p + 1):
        base = 2 * p - 4 * (k - 1) * q
        m_lo = (lo4 - base) // (4 * p) - 1
        m_hi = (hi4 - base) // (4 * p) + 1
        out.extend((4 * p * m + base, k) for m in range(m_lo, m_hi + 1))
    out.sort()
    hs = [h for h, _ in out]
    if any(b - a != 4 for a, b in zip(hs, hs[1:])):
        raise AssertionError("merged pegs do not form a unit lattice; (p, q) not coprime?")
    return out


def _reduce_linear(gaps: list[int], uf: _UnionFind) -> list[int]:
    """Cancel adjacent equal crossings; returns surviving 1-based indices."""
    stack: list[int] = []
    for j in range(1, len(gaps) + 1):
        if stack and gaps[stack[-1] - 1] == gaps[j - 1]:
            i = stack.pop()
            uf.union(i - 1, i, j)
        else:
            stack.append(j)
    return stack


def _reduce_cyclic(gaps: list[int], uf: _UnionFind) -> list[int]:
    uf.union(0, len(gaps))
    keep = _reduce_linear(gaps, uf)
    while len(keep) >= 2 and gaps[keep[0] - 1] == gaps[keep[-1] - 1]:
        f, l = keep[0], keep[-1]
        uf.union(l - 1, l, f - 1, f)
        keep = keep[1:-1]
    return keep


@dataclass(frozen=True)
class CableResult:
    curve: PegCurve
    # (component index in the input, arc position) of each input right arc
    #   -> (component index, arc position) of the image of its p-th copy
    images: dict[tuple[int, int], tuple[int, int]]


def cable_with_provenance(pc: PegCurve, cp: CableParams) -> CableResult:
    p, q = cp.p, cp.q
    gamma = pc.gamma0
    if gamma is None:
        raise ValueError("cabling needs a curve with a gamma0 component")

    def s4(a, k):
        return 4 * (p * a - (k - 1) * q) + 1

    mid4 = -2 * (p - 1) * q
    every = [s4(a, k) for comp in pc.components for a in comp.crossings for k in (1, p)]
    lo4 = min(every + [mid4]) - 8
    hi4 = max(every + [mid4]) + 8
    pegs = _pegs(p, q, lo4, hi4)

    comps: list[CurveComponent] = []
    images: dict[tuple[int, int], tuple[int, int]] = {}

    def finish(w: _Walker, ends: dict, cyclic: bool, kind: str) -> dict:
        gaps = w.gaps
        uf = _UnionFind(len(gaps) + 1)
        keep = (_reduce_cyclic if cyclic else _reduce_linear)(gaps, uf)
        mid_gap = w.gap_of(mid4)
        heights = tuple(gaps[j - 1] - mid_gap for j in keep)
        if kind == GAMMA0:
            classes = {uf.find(0): 0}
            for pos, j in enumerate(keep):
                classes.setdefault(uf.find(j), pos + 1)
            comp = CurveComponent(GAMMA0, heights)
        else:
            if not keep:
                raise NotPulledTight("closed component collapsed under cabling")
            classes = {}
            for pos, j in enumerate(keep):
                classes.setdefault(uf.find(j), pos)
            first = RIGHT if keep[0] % 2 == 1 else LEFT
            comp = CurveComponent(CLOSED, heights, first)
        ci = len(comps)
        comps.append(comp)
        return {key: (ci, classes[uf.find(n)]) for key, n in ends.items()}

    # gamma0: one path through all p copies
    h = gamma.crossings
    g_index = pc.components.index(gamma)
    w = _Walker(pegs)
    ends = {}
    cur = mid4
    for k in range(1, p + 1):
        nxt = s4(h[0], k)
        w.segment(cur, nxt, k - 1)  # initial end (k = 1) or connector
        cur = nxt
        for i in range(1, len(h)):
            nxt = s4(h[i], k)
            right = i % 2 == 1
            w.segment(cur, nxt, k if right else k - 1)
            cur = nxt
            if right and k == p:
                ends[(g_index, i)] = len(w.gaps)
    w.segment(cur, mid4, p)
    if w.side != RIGHT:
        w.cross(w.gap_of(mid4))
    images.update(finish(w, ends, False, GAMMA0))

    for ci, comp in enumerate(pc.components):
        if comp.kind != CLOSED:
            continue
        h = comp.crossings
        n = len(h)
        for k in range(1, p + 1):
            w = _Walker(pegs)
            ends = {}
            start = cur = s4(h[0], k)
            side = comp.first_side
            for i in range(n):
                nxt = s4(h[(i + 1) % n], k) if i + 1 < n else start
                w.segment(cur, nxt, k if side == RIGHT else k - 1)
                if side == RIGHT and k == p:
                    ends[(ci, i)] = len(w.gaps)
                cur = nxt
                side = LEFT if side == RIGHT else RIGHT
            if w.side != LEFT:
                w.cross(w.gap_of(start))
            images.update(finish(w, ends, True, CLOSED))

    out = PegCurve(tuple(comps))
    rep = check_structure(out)
    for name in ("one_gamma0", "pulled_tight", "parity", "integer_heights"):
        if not rep.checks.get(name, False):
            raise NotPulledTight(f"cabling produced an invalid curve: {rep.messages}")
    return CableResult(out, images)


def cable_geometric(pc: PegCurve, cp: CableParams) -> PegCurve:
    return cable_with_provenance(pc, cp).curve


# ---- closed-form rules ----------------------------------------------------------

_NONINITIAL = {"--": (1, 0), "-+": (1, 1), "+-": (1, -1), "++": (1, 0)}


def cable_arc_rule(a: ArcForm, cp: CableParams, tau_base: int) -> ArcForm:
    """Image of a right arc under (p, q)-cabling.

    The result's ``form`` carries ``?`` for a superscript the rule leaves open.
    Initial arcs are covered only when y0 is their top end (epsilon = 1).
    """
    p, q, n = cp.p, cp.q, a.length
    if a.form == "0":
        raise RuleNotApplicable("degenerate initial arc")
    if not a.initial:
        if a.form not in _NONINITIAL:
            raise RuleNotApplicable(f"noninitial arc with form {a.form}")
        if a.form == "-+":
            length = p * n - p + 1
        elif a.form == "+-":
            length = p * n + p - 1
        else:
            length = p * n
        return ArcForm(a.form, length, False)
    if a.y0_end != "top":
        raise RuleNotApplicable("initial arc with epsilon != 1")
    t = tau_base
    lo, hi = p * (2 * t - 1), 2 * p * t
    if q in (lo, hi):
        raise RuleNotApplicable(f"q = {q} sits on a boundary of the rule's ranges")
    bottom = a.bottom
    if bottom == "-":
        if q < lo:
            length = p * n
        elif q < hi:
            length = p * n + p - 2 * p * t + q - 1
        else:
            length = p * n + p - 1
    elif bottom == "+":
        if q < lo:
            length = p * n - p + 1
        elif q < hi:
            length = p * n - 2 * p * t + q
        else:
            length = p * n
    else:
        raise RuleNotApplicable(f"initial arc with form {a.form}")
    return ArcForm("?" + bottom, length, False)


def forms_agree(predicted: ArcForm, actual: ArcForm) -> bool:
    if predicted.length != actual.length or predicted.initial != actual.initial:
        return False
    return all(x == "?" or x == y for x, y in zip(predicted.form, actual.form))


@dataclass
class CheckReport:
    params: CableParams
    checked: int = 0
    skipped: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "p": self.params.p,
            "q": self.params.q,
            "checked": self.checked,
            "skipped": self.skipped,
            "ok": self.ok,
            "mismatches": list(self.mismatches),
        }


def crosscheck_rules(pc: PegCurve, cp: CableParams) -> CheckReport:
    res = cable_with_provenance(pc, cp)
    out_forms = {(f.component, f.position): f for f in classify_arcs(res.curve)}
    t = tau(pc)
    rep = CheckReport(cp)
    for a in classify_arcs(pc):
        try:
            pred = cable_arc_rule(a, cp, t)
        except RuleNotApplicable:
            rep.skipped += 1
            continue
        rep.checked += 1
        key = res.images.get((a.component, a.position))
        got = out_forms.get(key)
        if got is None:
            rep.mismatches.append(f"{a.label()}: image {key} is not a right arc")
        elif not forms_agree(pred, got):
            rep.mismatches.append(
                f"{a.label()} with {cp}: predicted {pred.label()} form {pred.form}, got {got.label()}"
            )
    return rep


# ---- iterated cables ----------------------------------------------------------------

def base_curve(spec: CableSpec) -> PegCurve:
    if spec.torus is not None:
        p0, q0, mirrored = spec.normalized_torus()
        pc = staircase_curve(torus_alexander(p0, q0))
        return mirror_curve(pc) if mirrored else pc
    if spec.path is not None:
        return curve_from_complex(load_complex(Path(spec.path)))
    return PegCurve((CurveComponent(GAMMA0, (0,)),))


def iterate_cable(spec: CableSpec, keep_closed: bool = True) -> PegCurve:
    """Fold ``cable_geometric`` over the stages.

    Closed components never change Ord bounds coming from gamma0 but they do
    carry torsion; ``keep_closed=False`` drops them up front for speed.
    """
    pc = base_curve(spec)
    if not keep_closed:
        pc = pc.without_closed()
    for st in spec.stages:
        pc = cable_geometric(pc, st)
    return pc
