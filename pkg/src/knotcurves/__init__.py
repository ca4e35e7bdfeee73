"""Knot-like complexes, peg-diagram curves, cabling and torsion-order bounds."""

from .bounds import BoundsReport, report
from .cabling import CableParams, CableSpec, cable_arc_rule, cable_geometric, crosscheck_rules, iterate_cable
from .complex_core import BigradedComplex, Generator, homology_minus, reduce, torsion_order, validate
from .curve_model import PegCurve, classify_arcs, complex_to_curve, curve_to_complex, epsilon, tau, validate_curve
from .lspace import StaircaseSpec, ord_lspace, staircase_from_alexander, torus_alexander
from .simplify import horizontally_simplify, simultaneous_simplify, vertically_simplify

__all__ = [
    "BigradedComplex", "BoundsReport", "CableParams", "CableSpec", "Generator", "PegCurve",
    "StaircaseSpec", "cable_arc_rule", "cable_geometric", "classify_arcs", "complex_to_curve",
    "crosscheck_rules", "curve_to_complex", "epsilon", "homology_minus", "horizontally_simplify",
    "iterate_cable", "ord_lspace", "reduce", "report", "simultaneous_simplify",
    "staircase_from_alexander", "tau", "torsion_order", "torus_alexander", "validate",
    "validate_curve", "vertically_simplify",
]
