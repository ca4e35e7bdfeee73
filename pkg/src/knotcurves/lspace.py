"""Staircase complexes of L-space knots, driven by Alexander exponents."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .complex_core import FULL, BigradedComplex, Generator
from .curve_model import PegCurve, gamma0_curve


class BadParams(ValueError):
    pass


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class StaircaseSpec:
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(a) for a in self.exponents))

    @property
    def length(self) -> int:
        """ell, half the number of steps."""
        return (len(self.exponents) - 1) // 2

    def gaps(self) -> list[int]:
        a = self.exponents
        return [a[i - 1] - a[i] for i in range(1, len(a))]

    def problems(self) -> list[str]:
        a = self.exponents
        out = []
        if len(a) % 2 == 0:
            out.append("needs an odd number of exponents")
            return out
        if any(a[i] <= a[i + 1] for i in range(len(a) - 1)):
            out.append("exponents must strictly decrease")
        if any(a[k] != -a[-1 - k] for k in range(len(a))):
            out.append("exponents must be symmetric about 0")
        if len(a) > 1 and (a[0] != a[1] + 1 or a[-2] != a[-1] + 1):
            out.append("end gaps must be 1")
        return out

    def check(self) -> "StaircaseSpec":
        bad = self.problems()
        if bad:
            raise InvalidSpec(f"{list(self.exponents)}: " + "; ".join(bad))
        return self


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    """Integer long division; den must be monic and divide num."""
    num = list(num)
    assert den[-1] == 1
    dq = len(num) - len(den)
    quot = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = num[k + len(den) - 1]
        quot[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("division is not exact")
    return quot


def _t_pow_minus_one(n: int) -> list[int]:
    return [-1] + [0] * (n - 1) + [1]


def torus_alexander(p: int, q: int) -> StaircaseSpec:
    """Exponents of the symmetrized Alexander polynomial of T(p, q)."""
    if not (1 < p < q) or gcd(p, q) != 1:
        raise BadParams(f"need 1 < p < q coprime, got ({p}, {q})")
    num = _poly_mul(_t_pow_minus_one(p * q), _t_pow_minus_one(1))
    den = _poly_mul(_t_pow_minus_one(p), _t_pow_minus_one(q))
    coeffs = _poly_exact_div(num, den)
    shift = (p - 1) * (q - 1) // 2
    terms = [(k - shift, c) for k, c in enumerate(coeffs) if c]
    terms.sort(reverse=True)
    signs = [c for _, c in terms]
    if signs != [(-1) ** k for k in range(len(signs))]:
        raise ArithmeticError(f"coefficients of T({p},{q}) do not alternate")
    return StaircaseSpec(tuple(e for e, _ in terms)).check()


def staircase_from_alexander(s: StaircaseSpec) -> BigradedComplex:
    """Staircase complex: z_k at Alexander height alpha_k, odd z_k carry the arrows."""
    a = s.check().exponents
    n = len(a)
    gr_u = [0] * n
    arrows = []
    for k in range(1, n, 2):
        h = a[k - 1] - a[k]
        v = a[k] - a[k + 1]
        gr_u[k] = gr_u[k - 1] + 1 - 2 * h
        gr_u[k + 1] = gr_u[k] - 1
        arrows.append(((f"z{k}", f"z{k - 1}"), (h, 0)))
        arrows.append(((f"z{k}", f"z{k + 1}"), (0, v)))
    gens = [Generator(f"z{k}", gr_u[k], gr_u[k] - 2 * a[k]) for k in range(n)]
    return BigradedComplex(FULL, tuple(gens), tuple(arrows))


def staircase_curve(s: StaircaseSpec) -> PegCurve:
    return gamma0_curve(s.check().exponents)


def ord_lspace(s: StaircaseSpec) -> int:
    return max(s.check().gaps(), default=0)


def genus(s: StaircaseSpec) -> int:
    a = s.check().exponents
    return (a[0] - a[-1]) // 2


def check_unique_genus_one(s: StaircaseSpec) -> bool:
    return s.check().exponents == (1, 0, -1)


def spec_from_gaps(half: list[int]) -> StaircaseSpec:
    """Staircase whose first ell gaps are ``half``; the rest mirror them."""
    gaps = list(half) + list(reversed(half))
    top = sum(half)
    exps = [top]
    for g in gaps:
        exps.append(exps[-1] - g)
    return StaircaseSpec(tuple(exps)).check()


def random_staircase(rng: random.Random, max_ell: int = 4, max_gap: int = 5) -> StaircaseSpec:
    ell = rng.randint(0, max_ell)
    if ell == 0:
        return StaircaseSpec((0,))
    half = [1] + [rng.randint(1, max_gap) for _ in range(ell - 1)]
    return spec_from_gaps(half)
