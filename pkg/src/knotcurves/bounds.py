"""Lower bounds derived from the torsion order of an iterated cable."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from math import prod

from .cabling import CableSpec, base_curve, cable_geometric
from .curve_model import epsilon, tau
from .lspace import StaircaseSpec, check_unique_genus_one, torus_alexander

SCHEMA = 1


class TrivialBase(ValueError):
    pass


class ExcludedBase(ValueError):
    pass


def unknotting_lower(ord_: int) -> int:
    return ord_


def cable_ord_lower(ord_base: int, ps: list[int]) -> int:
    if ord_base < 1:
        raise TrivialBase("the cable bound needs a nontrivial base (Ord >= 1)")
    n = prod(ps)
    return max(n * (ord_base - 1) + 1, n)


def lspace_cable_ord_lower(
    ord_base: int,
    ps: list[int],
    base_bridge: int | None = None,
    base: StaircaseSpec | None = None,
) -> tuple[int, bool]:
    """Bound for cables of an L-space knot other than T(2,3).

    Returns ``(bound, equality)``; equality is certified when the base's
    bridge index is Ord + 1.
    """
    if base is not None and check_unique_genus_one(base):
        raise ExcludedBase("the L-space bound excludes T(2,3)")
    if ord_base < 1:
        raise TrivialBase("the L-space bound needs a nontrivial base")
    bound = prod(ps) * (ord_base + 1) - 1
    return bound, base_bridge is not None and base_bridge == ord_base + 1


def schubert_bridge(br_base: int, ps: list[int]) -> int:
    return br_base * prod(ps)


def bridge_braid_lower(ord_: int) -> int:
    return ord_ + 1


def local_minima_lower(ord_: int, slice_assumed: bool) -> int | None:
    return ord_ + 1 if slice_assumed else None


@dataclass
class BoundsReport:
    spec: str
    ord: int
    tau: int
    epsilon: int
    u_lower: int
    br_lower: int
    b_lower: int
    minima_lower: int | None
    formula_ord_lower: int | None
    lspace_ord_lower: int | None
    equality_certified: bool
    schubert_bridge: int | None = None
    provenance: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"schema": SCHEMA, **asdict(self)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        rows = [
            (name, "-" if value is None else str(value), self.provenance.get(name, ""))
            for name, value in asdict(self).items()
            if name not in ("provenance",)
        ]
        w0 = max(len(r[0]) for r in rows)
        w1 = max(len(r[1]) for r in rows)
        return "\n".join(f"{a:<{w0}}  {b:<{w1}}  {c}".rstrip() for a, b, c in rows) + "\n"


def report(spec: CableSpec, slice_assumed: bool = False) -> BoundsReport:
    base = base_curve(spec)
    pc = base
    for st in spec.stages:
        pc = cable_geometric(pc, st)
    ps = spec.ps()
    ord_base = base.max_right_arc()
    ord_ = pc.max_right_arc()
    prov = {
        "spec": "input",
        "ord": "direct: longest right arc of the cabled curve",
        "tau": "direct: read at y0 on gamma0",
        "epsilon": "direct: turning direction at y0",
        "u_lower": "formula: u >= Ord",
        "br_lower": "formula: br >= Ord + 1",
        "b_lower": "formula: b >= br >= Ord + 1",
    }

    formula = None
    if ord_base >= 1:
        formula = cable_ord_lower(ord_base, ps)
        prov["formula_ord_lower"] = "formula: max(P*(Ord(K)-1)+1, P), P = product of p_i"
        if ord_ < formula:
            raise AssertionError(f"direct Ord {ord_} below the cable bound {formula}")
    else:
        prov["formula_ord_lower"] = "not applicable: trivial base"

    lspace_bound = None
    certified = False
    schubert = None
    if spec.torus is not None:
        p0, q0, _ = spec.normalized_torus()
        stair = torus_alexander(p0, q0)
        schubert = schubert_bridge(p0, ps)
        prov["schubert_bridge"] = "formula: br(T(p0,q0)) = p0 times product of p_i"
        if check_unique_genus_one(stair):
            prov["lspace_ord_lower"] = "not applicable: base is T(2,3)"
        elif ps:
            lspace_bound, certified = lspace_cable_ord_lower(ord_base, ps, p0, stair)
            prov["lspace_ord_lower"] = "formula: P*(Ord(K)+1)-1 for L-space bases"
            if ord_ < lspace_bound:
                raise AssertionError(f"direct Ord {ord_} below the L-space bound {lspace_bound}")
            if certified and ord_ != lspace_bound:
                raise AssertionError(f"certified equality fails: Ord {ord_} != {lspace_bound}")
        else:
            prov["lspace_ord_lower"] = "not applicable: no cabling stages"
    else:
        prov["lspace_ord_lower"] = "not applicable: base is not a torus knot"
    prov["equality_certified"] = (
        "Ord equals the L-space bound and br equals Ord + 1"
        if certified
        else "no equality certificate; all numbers are lower bounds"
    )

    br_lower = bridge_braid_lower(ord_)
    if schubert is not None and br_lower > schubert:
        raise AssertionError("bridge lower bound exceeds the Schubert value")
    minima = local_minima_lower(ord_, slice_assumed)
    prov["minima_lower"] = (
        "formula: Ord + 1 minima, assuming the base is slice" if slice_assumed else "not requested"
    )
    return BoundsReport(
        spec=str(spec),
        ord=ord_,
        tau=tau(pc),
        epsilon=epsilon(pc),
        u_lower=unknotting_lower(ord_),
        br_lower=br_lower,
        b_lower=br_lower,
        minima_lower=minima,
        formula_ord_lower=formula,
        lspace_ord_lower=lspace_bound,
        equality_certified=certified,
        schubert_bridge=schubert,
        provenance=prov,
    )
