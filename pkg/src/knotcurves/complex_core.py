"""Knot-like complexes over F2[U, V] and F2[U, V]/(UV).

A differential entry from ``x`` to ``y`` is a single monomial ``U**u V**v``
stored as the pair ``(u, v)``; absent entries are zero.  The bigrading
convention is gr(U) = (-2, 0), gr(V) = (0, -2) and the differential has
bidegree (-1, -1).
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .pid import monomial_exponent, smith_diagonal

FULL = "full"
MOD_UV = "mod_uv"

Monomial = tuple[int, int]


class NotKnotLike(ValueError):
    """The homology of the complex does not have the shape of a knot complex."""


class ComplexFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    id: str
    gr_u: int
    gr_v: int

    @property
    def alexander(self) -> int:
        diff = self.gr_u - self.gr_v
        if diff % 2:
            raise ValueError(f"generator {self.id}: gr_u - gr_v must be even")
        return diff // 2


@dataclass(frozen=True)
class BigradedComplex:
    ring: str
    generators: tuple[Generator, ...]
    differential: tuple[tuple[tuple[str, str], Monomial], ...] = ()

    def __post_init__(self):
        if self.ring not in (FULL, MOD_UV):
            raise ComplexFormatError(f"unknown ring {self.ring!r}")
        ids = [g.id for g in self.generators]
        if len(set(ids)) != len(ids):
            raise ComplexFormatError("duplicate generator ids")
        known = set(ids)
        seen = set()
        for (src, tgt), (u, v) in self.differential:
            if src not in known or tgt not in known:
                raise ComplexFormatError(f"arrow {src}->{tgt} mentions an unknown generator")
            if (src, tgt) in seen:
                raise ComplexFormatError(f"duplicate arrow {src}->{tgt}")
            if u < 0 or v < 0:
                raise ComplexFormatError(f"negative exponent on {src}->{tgt}")
            if self.ring == MOD_UV and u > 0 and v > 0:
                raise ComplexFormatError(f"arrow {src}->{tgt} is zero in F[U,V]/(UV)")
            seen.add((src, tgt))
        # canonical ordering so equal complexes compare equal
        object.__setattr__(self, "differential", tuple(sorted(self.differential, key=lambda e: (ids.index(e[0][0]), ids.index(e[0][1])))))

    @classmethod
    def build(cls, ring: str, generators: Iterable, arrows: Mapping[tuple[str, str], Monomial] | Iterable = ()):
        gens = tuple(g if isinstance(g, Generator) else Generator(*g) for g in generators)
        items = arrows.items() if isinstance(arrows, Mapping) else arrows
        return cls(ring, gens, tuple(((s, t), (int(m[0]), int(m[1]))) for (s, t), m in items))

    @property
    def ids(self) -> list[str]:
        return [g.id for g in self.generators]

    def generator(self, gid: str) -> Generator:
        for g in self.generators:
            if g.id == gid:
                return g
        raise KeyError(gid)

    def arrows(self) -> dict[tuple[str, str], Monomial]:
        return dict(self.differential)

    def __len__(self):
        return len(self.generators)

    # ---- file format -------------------------------------------------
    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "generators": [{"id": g.id, "gr_u": g.gr_u, "gr_v": g.gr_v} for g in self.generators],
            "differential": [{"from": s, "to": t, "u": u, "v": v} for (s, t), (u, v) in self.differential],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "BigradedComplex":
        try:
            gens = [Generator(str(g["id"]), int(g["gr_u"]), int(g["gr_v"])) for g in doc["generators"]]
            arrows = [((str(a["from"]), str(a["to"])), (int(a["u"]), int(a["v"]))) for a in doc.get("differential", [])]
            return cls(doc.get("ring", FULL), tuple(gens), tuple(arrows))
        except (KeyError, TypeError) as exc:
            raise ComplexFormatError(f"malformed complex document: {exc}") from exc


def load_complex(path: str | Path) -> BigradedComplex:
    return BigradedComplex.from_json(json.loads(Path(path).read_text()))


def dump_complex(c: BigradedComplex, path: str | Path) -> None:
    Path(path).write_text(json.dumps(c.to_json(), indent=2) + "\n")


# ---- ring arithmetic on sparse F2 polynomials ------------------------------

def mono_mul(a: Monomial, b: Monomial, ring: str) -> Monomial | None:
    u, v = a[0] + b[0], a[1] + b[1]
    if ring == MOD_UV and u > 0 and v > 0:
        return None
    return (u, v)


def _square(c: BigradedComplex) -> dict[tuple[str, str, Monomial], int]:
    out_arrows = defaultdict(list)
    for (s, t), m in c.differential:
        out_arrows[s].append((t, m))
    counts: dict[tuple[str, str, Monomial], int] = defaultdict(int)
    for x in c.ids:
        for y, m1 in out_arrows[x]:
            for z, m2 in out_arrows[y]:
                prod = mono_mul(m1, m2, c.ring)
                if prod is not None:
                    counts[(x, z, prod)] ^= 1
    return {k: v for k, v in counts.items() if v}


# ---- validation --------------------------------------------------------------

@dataclass
class ValidationReport:
    checks: dict[str, bool] = field(default_factory=dict)
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def fail(self, name: str, msg: str) -> None:
        self.checks[name] = False
        self.messages.append(f"{name}: {msg}")

    def passed(self, name: str) -> bool:
        return self.checks.get(name, False)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": dict(self.checks), "messages": list(self.messages)}


def _localized_tower_degrees(c: BigradedComplex, kill: int) -> list[int]:
    """Degrees of a basis for H(C / var_kill) with the other variable set to 1.

    Setting the surviving variable to 1 computes the free part of H over the
    polynomial ring in that variable.  The killed variable's own grading is
    preserved by that variable, so it grades the result.
    """
    keep = 1 - kill
    grade = (lambda g: g.gr_u) if kill == 0 else (lambda g: g.gr_v)
    ids = c.ids
    index = {g: i for i, g in enumerate(ids)}
    deg = {g.id: grade(g) for g in c.generators}
    # F2 matrix with columns = sources
    cols: dict[int, int] = defaultdict(int)
    for (s, t), m in c.differential:
        if m[kill] == 0:
            cols[index[s]] ^= 1 << index[t]
    by_degree: dict[int, list[int]] = defaultdict(list)
    for g in ids:
        by_degree[deg[g]].append(index[g])
    out = []
    for d, members in sorted(by_degree.items()):
        # dim ker(d: C_d -> C_{d-1}) - rank(d: C_{d+1} -> C_d)
        k = len(members) - _f2_rank([cols[i] for i in members])
        r = _f2_rank([cols[i] for i in by_degree.get(d + 1, [])])
        out.extend([d] * (k - r))
    return out


def _f2_rank(vectors: list[int]) -> int:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def validate(c: BigradedComplex) -> ValidationReport:
    rep = ValidationReport()
    gens = {g.id: g for g in c.generators}
    rep.checks["alexander_integral"] = True
    for g in c.generators:
        if (g.gr_u - g.gr_v) % 2:
            rep.fail("alexander_integral", f"{g.id} has odd gr_u - gr_v")

    bad = _square(c)
    rep.checks["d_squared_zero"] = not bad
    if bad:
        x, z, m = next(iter(bad))
        rep.messages.append(f"d_squared_zero: <d^2 {x}, {z}> contains U^{m[0]}V^{m[1]}")

    rep.checks["grading_law"] = True
    for (s, t), (u, v) in c.differential:
        gs, gt = gens[s], gens[t]
        if gt.gr_u != gs.gr_u - 1 + 2 * u or gt.gr_v != gs.gr_v - 1 + 2 * v:
            rep.fail("grading_law", f"arrow {s}->{t} (U^{u}V^{v}) breaks the bidegree (-1,-1)")

    rep.checks["reduced"] = True
    for (s, t), (u, v) in c.differential:
        if u == 0 and v == 0:
            rep.fail("reduced", f"unit arrow {s}->{t}")

    rep.checks["odd_generator_count"] = len(c) % 2 == 1
    if len(c) % 2 == 0:
        rep.messages.append("odd_generator_count: knot-like complexes have an odd number of generators")

    ok_alg = rep.checks["d_squared_zero"] and rep.checks["alexander_integral"]
    if ok_alg:
        v_tower = _localized_tower_degrees(c, kill=0)  # H(C/U), graded by gr_u
        u_tower = _localized_tower_degrees(c, kill=1)  # H(C/V), graded by gr_v
        rep.checks["knot_like_C_mod_U"] = v_tower == [0]
        if v_tower != [0]:
            rep.messages.append(f"knot_like_C_mod_U: free part of H(C/U) sits in gr_U degrees {v_tower}, expected [0]")
        rep.checks["knot_like_C_mod_V"] = u_tower == [0]
        if u_tower != [0]:
            rep.messages.append(f"knot_like_C_mod_V: free part of H(C/V) sits in gr_V degrees {u_tower}, expected [0]")
    else:
        rep.fail("knot_like_C_mod_U", "skipped: d^2 != 0")
        rep.fail("knot_like_C_mod_V", "skipped: d^2 != 0")
    return rep


def is_knot_like(c: BigradedComplex) -> bool:
    rep = validate(c)
    return rep.passed("knot_like_C_mod_U") and rep.passed("knot_like_C_mod_V")


# ---- reduction -------------------------------------------------------------

def reduce(c: BigradedComplex) -> BigradedComplex:
    """Cancel unit arrows until none remain (Gaussian elimination)."""
    ring = c.ring
    order = c.ids
    # d[src][tgt] = set of monomials (F2 sum)
    d: dict[str, dict[str, set]] = {g: defaultdict(set) for g in order}
    for (s, t), m in c.differential:
        d[s][t] ^= {m}
    alive = list(order)
    while True:
        unit = None
        for s in alive:
            for t in alive:
                if (0, 0) in d[s].get(t, ()):
                    unit = (s, t)
                    break
            if unit:
                break
        if unit is None:
            break
        x, y = unit
        # d'z = dz + <dz,y> <dx,y>^{-1} dx, restricted to the survivors
        x_out = {w: set(ms) for w, ms in d[x].items() if ms and w not in (x, y)}
        for z in alive:
            if z in (x, y):
                continue
            coeff = d[z].get(y)
            if not coeff:
                continue
            for w, ms in x_out.items():
                for a in coeff:
                    for b in ms:
                        prod = mono_mul(a, b, ring)
                        if prod is not None:
                            d[z][w] ^= {prod}
        alive = [g for g in alive if g not in (x, y)]
        for z in alive:
            d[z].pop(x, None)
            d[z].pop(y, None)
    arrows = []
    for s in alive:
        for t in alive:
            ms = d[s].get(t)
            if not ms:
                continue
            if len(ms) != 1:
                raise ValueError(f"entry {s}->{t} is not a monomial after reduction; input is not graded")
            arrows.append(((s, t), next(iter(ms))))
    keep = [g for g in c.generators if g.id in alive]
    return BigradedComplex(ring, tuple(keep), tuple(arrows))


def change_basis(c: BigradedComplex, x: str, coeff: Monomial, y: str) -> BigradedComplex:
    """Replace basis element x by x + coeff*y; coeff must match the gradings."""
    gx, gy = c.generator(x), c.generator(y)
    if x == y or gy.gr_u - 2 * coeff[0] != gx.gr_u or gy.gr_v - 2 * coeff[1] != gx.gr_v:
        raise ValueError(f"x + {coeff}*y is not homogeneous")
    ring = c.ring
    d: dict[str, dict[str, set]] = {g: defaultdict(set) for g in c.ids}
    for (s, t), m in c.differential:
        d[s][t] ^= {m}
    for t, ms in list(d[y].items()):
        for m in ms:
            prod = mono_mul(coeff, m, ring)
            if prod is not None:
                d[x][t] ^= {prod}
    for s in c.ids:
        for m in list(d[s].get(x, ())):
            prod = mono_mul(m, coeff, ring)
            if prod is not None:
                d[s][y] ^= {prod}
    arrows = []
    for s in c.ids:
        for t, ms in d[s].items():
            if ms:
                if len(ms) != 1:
                    raise ValueError(f"entry {s}->{t} is not a monomial; complex is not graded")
                arrows.append(((s, t), next(iter(ms))))
    return BigradedComplex(ring, c.generators, tuple(arrows))


def direct_sum(*cs: BigradedComplex) -> BigradedComplex:
    ring = MOD_UV if any(c.ring == MOD_UV for c in cs) else FULL
    parts = [mod_uv(c) if ring == MOD_UV else c for c in cs]
    return BigradedComplex(
        ring,
        tuple(g for c in parts for g in c.generators),
        tuple(e for c in parts for e in c.differential),
    )


def mod_uv(c: BigradedComplex) -> BigradedComplex:
    if c.ring == MOD_UV:
        return c
    arrows = tuple(e for e in c.differential if not (e[1][0] > 0 and e[1][1] > 0))
    return BigradedComplex(MOD_UV, c.generators, arrows)


# ---- homology over F2[U] ---------------------------------------------------

@dataclass(frozen=True)
class UModuleDecomposition:
    free_rank: int
    torsion_exponents: tuple[int, ...]


def _mod_v_matrix(c: BigradedComplex) -> list[list[int]]:
    ids = c.ids
    index = {g: i for i, g in enumerate(ids)}
    m = [[0] * len(ids) for _ in ids]
    for (s, t), (u, v) in c.differential:
        if v == 0:
            m[index[t]][index[s]] ^= 1 << u
    return m


def homology_minus(c: BigradedComplex) -> UModuleDecomposition:
    """H_*(C/V) as an F2[U]-module: free rank and sorted torsion exponents."""
    n = len(c)
    diag = smith_diagonal(_mod_v_matrix(c))
    exps = []
    for p in diag:
        e = monomial_exponent(p)
        if e is None:
            raise ValueError("invariant factor is not a power of U; complex is not graded")
        if e > 0:
            exps.append(e)
    return UModuleDecomposition(n - 2 * len(diag), tuple(sorted(exps)))


def torsion_order(c: BigradedComplex) -> int:
    if not is_knot_like(c):
        raise NotKnotLike("torsion order needs a knot-like complex")
    exps = homology_minus(c).torsion_exponents
    return max(exps, default=0)


def mirror(c: BigradedComplex) -> BigradedComplex:
    """Dual complex: arrows reversed, gradings negated."""
    gens = tuple(Generator(g.id, -g.gr_u, -g.gr_v) for g in c.generators)
    arrows = tuple(((t, s), m) for (s, t), m in c.differential)
    return BigradedComplex(c.ring, gens, arrows)


def relabel(c: BigradedComplex, mapping: Mapping[str, str]) -> BigradedComplex:
    gens = tuple(Generator(mapping[g.id], g.gr_u, g.gr_v) for g in c.generators)
    arrows = tuple(((mapping[s], mapping[t]), m) for (s, t), m in c.differential)
    return BigradedComplex(c.ring, gens, arrows)


def permute(c: BigradedComplex, order: list[str]) -> BigradedComplex:
    by_id = {g.id: g for g in c.generators}
    return BigradedComplex(c.ring, tuple(by_id[g] for g in order), c.differential)


def unknot() -> BigradedComplex:
    return BigradedComplex(FULL, (Generator("x", 0, 0),))


def loop_sample() -> BigradedComplex:
    """Six generators, a single closed curve (not knot-like)."""
    arrows = {
        ("a", "b"): (5, 0), ("a", "d"): (1, 1), ("a", "f"): (0, 3),
        ("b", "c"): (0, 1), ("d", "c"): (4, 0), ("d", "e"): (0, 2), ("f", "e"): (1, 0),
    }
    alex = {"a": 0, "b": 5, "c": 4, "d": 0, "e": -2, "f": -3}
    gr_u = {"a": 0}
    # propagate gr_u along arrows: gr_u(t) = gr_u(s) - 1 + 2u
    for _ in range(len(alex)):
        for (s, t), (u, _v) in arrows.items():
            if s in gr_u and t not in gr_u:
                gr_u[t] = gr_u[s] - 1 + 2 * u
            if t in gr_u and s not in gr_u:
                gr_u[s] = gr_u[t] + 1 - 2 * u
    gens = [Generator(g, gr_u[g], gr_u[g] - 2 * alex[g]) for g in "abcdef"]
    return BigradedComplex.build(FULL, gens, arrows)


def stair_sample() -> BigradedComplex:
    """Five-generator staircase with tau = 4, eps = 1."""
    arrows = {("b", "a"): (1, 0), ("b", "c"): (0, 3), ("d", "c"): (3, 0), ("d", "e"): (0, 1)}
    gens = [
        Generator("a", 0, -8), Generator("b", -1, -7), Generator("c", -2, -2),
        Generator("d", -7, -1), Generator("e", -8, 0),
    ]
    return BigradedComplex.build(FULL, gens, arrows)
