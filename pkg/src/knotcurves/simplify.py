"""Horizontally / vertically simplified bases over F2[U, V]/(UV)."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product

from .complex_core import MOD_UV, BigradedComplex, mod_uv, mono_mul

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


class LocalSystemRequired(ValueError):
    """No simultaneously simplified basis was found; the curve needs a local system."""


@dataclass(frozen=True)
class ArrowPairing:
    direction: str
    pairs: tuple[tuple[str, str, int], ...]
    unpaired: str | None

    def lengths(self) -> list[int]:
        return sorted(n for _, _, n in self.pairs)

    def partner(self) -> dict[str, str]:
        out = {}
        for s, t, _ in self.pairs:
            out[s] = t
            out[t] = s
        return out


class _Work:
    """Mutable differential used while changing basis."""

    def __init__(self, c: BigradedComplex):
        self.c = c
        self.order = c.ids
        self.d: dict[str, dict[str, set]] = {g: defaultdict(set) for g in self.order}
        for (s, t), m in c.differential:
            self.d[s][t] ^= {m}

    def entry(self, s: str, t: str):
        ms = self.d[s].get(t)
        if not ms:
            return None
        if len(ms) != 1:
            raise ValueError(f"entry {s}->{t} is not a monomial; complex is not graded")
        return next(iter(ms))

    def change_basis(self, x: str, coeff, y: str) -> None:
        """Replace basis element x by x + coeff*y."""
        # outgoing: d(x') = dx + coeff * dy
        for t, ms in list(self.d[y].items()):
            for m in ms:
                prod = mono_mul(coeff, m, MOD_UV)
                if prod is not None:
                    self.d[x][t] ^= {prod}
        # incoming: a term m*x becomes m*x' + m*coeff*y
        for s in self.order:
            ms = self.d[s].get(x)
            if not ms:
                continue
            for m in list(ms):
                prod = mono_mul(m, coeff, MOD_UV)
                if prod is not None:
                    self.d[s][y] ^= {prod}

    def complex(self) -> BigradedComplex:
        arrows = []
        for s in self.order:
            for t in self.order:
                m = self.entry(s, t)
                if m is not None:
                    arrows.append(((s, t), m))
        return BigradedComplex(MOD_UV, self.c.generators, tuple(arrows))


def _axis(direction: str) -> tuple[int, int]:
    # (index of the arrow's variable, index of the killed variable)
    return (0, 1) if direction == HORIZONTAL else (1, 0)


def _simplify(c: BigradedComplex, direction: str) -> tuple[BigradedComplex, ArrowPairing]:
    c = mod_uv(c)
    var, kill = _axis(direction)
    w = _Work(c)
    pos = {g: i for i, g in enumerate(w.order)}
    remaining = list(w.order)
    pairs = []

    def arrows_among(gens):
        live = set(gens)
        for s in gens:
            for t in gens:
                m = w.entry(s, t)
                if m is not None and m[kill] == 0 and t in live:
                    yield s, t, m[var]

    while True:
        cands = sorted(arrows_among(remaining), key=lambda a: (a[2], pos[a[0]], pos[a[1]]))
        if not cands:
            break
        x, y, n = cands[0]
        # clear every other arrow into y
        for z in remaining:
            if z == x:
                continue
            m = w.entry(z, y)
            if m is not None and m[kill] == 0:
                k = m[var] - n
                w.change_basis(z, (k, 0) if var == 0 else (0, k), x)
        # clear every other arrow out of x
        for t in remaining:
            if t == y:
                continue
            m = w.entry(x, t)
            if m is not None and m[kill] == 0:
                k = m[var] - n
                w.change_basis(y, (k, 0) if var == 0 else (0, k), t)
        pairs.append((x, y, n))
        remaining = [g for g in remaining if g not in (x, y)]

    out = w.complex()
    pairing = ArrowPairing(direction, tuple(pairs), remaining[0] if len(remaining) == 1 else None)
    if not is_simplified(out, direction):
        raise AssertionError(f"{direction} simplification did not converge")
    return out, pairing


def horizontally_simplify(c: BigradedComplex) -> tuple[BigradedComplex, ArrowPairing]:
    return _simplify(c, HORIZONTAL)


def vertically_simplify(c: BigradedComplex) -> tuple[BigradedComplex, ArrowPairing]:
    return _simplify(c, VERTICAL)


def read_pairing(c: BigradedComplex, direction: str) -> ArrowPairing | None:
    """The pairing of an already simplified basis, or None."""
    var, kill = _axis(direction)
    touched: dict[str, int] = defaultdict(int)
    pairs = []
    for (s, t), m in c.differential:
        if m[kill] == 0:
            pairs.append((s, t, m[var]))
            touched[s] += 1
            touched[t] += 1
    if any(v > 1 for v in touched.values()):
        return None
    free = [g for g in c.ids if g not in touched]
    return ArrowPairing(direction, tuple(pairs), free[0] if len(free) == 1 else None)


def is_simplified(c: BigradedComplex, direction: str) -> bool:
    return read_pairing(c, direction) is not None


def _alternate(c: BigradedComplex):
    """Alternate the two simplifications for at most n**2 passes."""
    for _ in range(max(1, len(c) ** 2)):
        h = read_pairing(c, HORIZONTAL)
        v = read_pairing(c, VERTICAL)
        if h is not None and v is not None:
            return c, h, v
        if h is None:
            c, _ = horizontally_simplify(c)
        else:
            c, _ = vertically_simplify(c)
    h = read_pairing(c, HORIZONTAL)
    v = read_pairing(c, VERTICAL)
    if h is not None and v is not None:
        return c, h, v
    return None


def _f2_invertible(rows: tuple[int, ...]) -> bool:
    rows = list(rows)
    for bit in range(len(rows)):
        piv = next((i for i in range(bit, len(rows)) if rows[i] >> bit & 1), None)
        if piv is None:
            return False
        rows[bit], rows[piv] = rows[piv], rows[bit]
        for i in range(len(rows)):
            if i != bit and rows[i] >> bit & 1:
                rows[i] ^= rows[bit]
    return True


def _gl(n: int) -> list[tuple[int, ...]]:
    """GL_n(F2) as tuples of row bitmasks, identity first."""
    ident = tuple(1 << i for i in range(n))
    rest = [m for m in product(range(1 << n), repeat=n) if m != ident and _f2_invertible(m)]
    return [ident] + rest


def _f2_inverse(rows: tuple[int, ...]) -> tuple[int, ...]:
    n = len(rows)
    aug = [rows[i] | (1 << (n + i)) for i in range(n)]
    for bit in range(n):
        piv = next(i for i in range(bit, n) if aug[i] >> bit & 1)
        aug[bit], aug[piv] = aug[piv], aug[bit]
        for i in range(n):
            if i != bit and aug[i] >> bit & 1:
                aug[i] ^= aug[bit]
    return tuple(a >> n for a in aug)


def graded_unit_blocks(c: BigradedComplex) -> list[list[str]]:
    """Generators grouped by bigrading, groups of size >= 2 only."""
    groups: dict[tuple[int, int], list[str]] = defaultdict(list)
    for g in c.generators:
        groups[(g.gr_u, g.gr_v)].append(g.id)
    return [ids for ids in groups.values() if len(ids) > 1]


def apply_unit_automorphism(c: BigradedComplex, blocks: list[list[str]], mats: list[tuple[int, ...]]) -> BigradedComplex:
    """Change basis by an F2-matrix inside each bigrading block (D' = P D P^-1)."""
    row: dict[str, dict[str, int]] = {}
    inv: dict[str, dict[str, int]] = {}
    for ids, m in zip(blocks, mats):
        mi = _f2_inverse(m)
        for r, x in enumerate(ids):
            row[x] = {ids[i]: 1 for i in range(len(ids)) if m[r] >> i & 1}
            inv[x] = {ids[i]: 1 for i in range(len(ids)) if mi[r] >> i & 1}
    for g in c.ids:
        row.setdefault(g, {g: 1})
        inv.setdefault(g, {g: 1})
    d: dict[str, dict[str, list]] = defaultdict(lambda: defaultdict(list))
    for (s, t), mono in c.differential:
        d[s][t].append(mono)
    acc: dict[tuple[str, str, tuple[int, int]], int] = defaultdict(int)
    for x in c.ids:
        for i in row[x]:
            for j, monos in d[i].items():
                for t in inv[j]:
                    for mono in monos:
                        acc[(x, t, mono)] ^= 1
    arrows = {}
    for (s, t, mono), bit in acc.items():
        if bit:
            if (s, t) in arrows:
                raise ValueError("automorphism produced a non-monomial entry")
            arrows[(s, t)] = mono
    return BigradedComplex(MOD_UV, c.generators, tuple(arrows.items()))


def simultaneous_simplify(
    c: BigradedComplex, search_limit: int = 5000
) -> tuple[BigradedComplex, ArrowPairing, ArrowPairing]:
    """A basis that is both horizontally and vertically simplified.

    First alternates the two simplifications.  Equal-length arrows can leave
    that loop stuck on the wrong F2-basis of a bigrading block, so on failure
    it retries after every unit automorphism of the blocks, as long as there
    are at most ``search_limit`` of them.
    """
    c = mod_uv(c)
    found = _alternate(c)
    if found is not None:
        return found
    blocks = graded_unit_blocks(c)
    choices = [_gl(len(b)) if len(b) <= 3 else None for b in blocks]
    total = 1
    for ch in choices:
        total = total * len(ch) if ch is not None else search_limit + 1
    if total <= search_limit:
        for mats in product(*choices):
            found = _alternate(apply_unit_automorphism(c, blocks, list(mats)))
            if found is not None:
                return found
        raise LocalSystemRequired(
            "no simultaneously simplified basis found after trying every unit automorphism "
            "of the bigrading blocks; a nontrivial local system is needed"
        )
    raise LocalSystemRequired(
        f"no simultaneously simplified basis found (block search over {total} automorphisms skipped)"
    )


def torsion_order_simplified(c: BigradedComplex) -> int:
    """Ord as the longest horizontal arrow in a horizontally simplified basis."""
    _, h = horizontally_simplify(c)
    return max((n for _, _, n in h.pairs), default=0)
