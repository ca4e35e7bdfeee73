"""Random knot-like complexes and curves for tests and experiment sweeps."""

from __future__ import annotations

import random

from .complex_core import FULL, MOD_UV, BigradedComplex, Generator, change_basis, direct_sum, relabel
from .curve_model import CLOSED, CurveComponent, PegCurve
from .lspace import random_staircase, staircase_curve, staircase_from_alexander


def box_complex(n: int, m: int, height: int, gr_u: int, tag: str = "b") -> BigradedComplex:
    """Square d a = U^n b + V^m c, d b = V^m d, d c = U^n d: one closed curve."""
    a, b, c, d = (f"{tag}{s}" for s in "abcd")
    gens = [
        Generator(a, gr_u, gr_u - 2 * height),
        Generator(b, gr_u - 1 + 2 * n, gr_u - 1 + 2 * n - 2 * (height + n)),
        Generator(c, gr_u - 1, gr_u - 1 - 2 * (height - m)),
        Generator(d, gr_u - 2 + 2 * n, gr_u - 2 + 2 * n - 2 * (height + n - m)),
    ]
    arrows = {(a, b): (n, 0), (a, c): (0, m), (b, d): (0, m), (c, d): (n, 0)}
    return BigradedComplex.build(FULL, gens, arrows)


def box_component(n: int, m: int, height: int) -> CurveComponent:
    return CurveComponent(CLOSED, (height, height + n, height + n - m, height - m), "right")


def random_simplified(rng: random.Random, max_boxes: int = 2, max_ell: int = 4, max_gap: int = 5) -> BigradedComplex:
    """Staircase plus boxes: knot-like and simultaneously simplified."""
    parts = [staircase_from_alexander(random_staircase(rng, max_ell, max_gap))]
    for i in range(rng.randint(0, max_boxes)):
        parts.append(box_complex(rng.randint(1, 4), rng.randint(1, 4), rng.randint(-4, 4),
                                 2 * rng.randint(-3, 3), tag=f"q{i}"))
    c = direct_sum(*parts)
    ids = c.ids
    rng.shuffle(ids)
    c = relabel(c, {g: f"g{k}" for k, g in enumerate(ids)})
    order = c.ids
    rng.shuffle(order)
    by_id = {g.id: g for g in c.generators}
    return BigradedComplex(c.ring, tuple(by_id[g] for g in order), c.differential)


def scramble(c: BigradedComplex, rng: random.Random, steps: int = 6) -> BigradedComplex:
    """Random homogeneous basis changes x <- x + U^a V^b y."""
    gens = list(c.generators)
    for _ in range(steps):
        moves = []
        for x in gens:
            for y in gens:
                if x.id == y.id:
                    continue
                du, dv = y.gr_u - x.gr_u, y.gr_v - x.gr_v
                if du >= 0 and dv >= 0 and du % 2 == 0 and dv % 2 == 0:
                    a, b = du // 2, dv // 2
                    if c.ring == FULL or a == 0 or b == 0:
                        moves.append((x.id, (a, b), y.id))
        if not moves:
            break
        c = change_basis(c, *rng.choice(moves))
    return c


def random_complex(rng: random.Random) -> BigradedComplex:
    return scramble(random_simplified(rng), rng, rng.randint(0, 8))


def random_curve(rng: random.Random, boxes: bool = True) -> PegCurve:
    pc = staircase_curve(random_staircase(rng))
    if boxes:
        extra = tuple(box_component(rng.randint(1, 4), rng.randint(1, 4), rng.randint(-4, 4))
                      for _ in range(rng.randint(0, 2)))
        pc = PegCurve(pc.components + extra)
    return pc


def local_system_example(monodromy: tuple[tuple[int, int], tuple[int, int]] = ((1, 1), (1, 0))) -> BigradedComplex:
    """Two parallel loops around one peg, glued by a 2x2 F2 monodromy.

    Horizontal arrows pair b_j with a_j; the vertical arrows from a_i follow
    the rows of ``monodromy``.  A simultaneously simplified basis exists
    exactly when the monodromy is conjugate to a permutation matrix, which
    fails for the order-3 default.
    """
    gens = [Generator("z", 0, 0), Generator("a1", 3, 1), Generator("a2", 3, 1),
            Generator("b1", 2, 2), Generator("b2", 2, 2)]
    arrows = {("b1", "a1"): (1, 0), ("b2", "a2"): (1, 0)}
    for i, r in enumerate(monodromy, start=1):
        for j, bit in enumerate(r, start=1):
            if bit:
                arrows[(f"a{i}", f"b{j}")] = (0, 1)
    return BigradedComplex.build(MOD_UV, gens, arrows)
