"""Print Ord, tau and the bound columns for a grid of iterated torus-knot cables."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from math import gcd

from knotcurves.bounds import report
from knotcurves.cabling import CableParams, CableSpec


@dataclass
class TableConfig:
    bases: list[tuple[int, int]] = field(default_factory=lambda: [(2, 3), (2, 5), (3, 4), (3, 5)])
    ps: list[int] = field(default_factory=lambda: [2, 3])
    q_max: int = 15
    json: bool = False


def rows(cfg: TableConfig):
    for p0, q0 in cfg.bases:
        for p in cfg.ps:
            for q in range(-cfg.q_max, cfg.q_max + 1):
                if q == 0 or gcd(p, q) != 1:
                    continue
                yield report(CableSpec(torus=(p0, q0), stages=(CableParams(p, q),)))


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q-max", type=int, default=TableConfig.q_max)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    cfg = TableConfig(q_max=args.q_max, json=args.json)
    if cfg.json:
        for rep in rows(cfg):
            print(rep.dumps(), end="")
        return
    head = f"{'spec':<18}{'Ord':>5}{'tau':>6}{'cable':>7}{'lspace':>8}{'eq':>4}{'br>=':>6}{'schub':>7}"
    print(head)
    for r in rows(cfg):
        ls = "-" if r.lspace_ord_lower is None else r.lspace_ord_lower
        print(f"{r.spec:<18}{r.ord:>5}{r.tau:>6}{r.formula_ord_lower:>7}{ls:>8}"
              f"{'y' if r.equality_certified else '':>4}{r.br_lower:>6}{r.schubert_bridge:>7}")


if __name__ == "__main__":
    main()
