"""Kauffman bracket, SO(3) quantum invariants at odd primes, and periodicity criteria."""

from .bracket import bracket, bracket_renormalized, colored_bracket, jones
from .cyclotomic import CycloElem, LaurentPoly, cyclotomic_ring
from .diagram import FramedLinkDiagram, PDCode
from .errors import (IntegralityViolation, MalformedDiagram, NonIntegralExponent, NotDivisible,
                     TooManyCrossings)
from .periodicity import (bracket_periodicity_test, grid_experiment, jones_periodicity_test,
                          manifold_periodicity_test, poincare_scan)
from .so3 import InvariantValue, brieskorn_invariant, so3_context, surgery_invariant

__all__ = [
    "CycloElem", "FramedLinkDiagram", "IntegralityViolation", "InvariantValue", "LaurentPoly",
    "MalformedDiagram", "NonIntegralExponent", "NotDivisible", "PDCode", "TooManyCrossings",
    "bracket", "bracket_periodicity_test", "bracket_renormalized", "brieskorn_invariant",
    "colored_bracket", "cyclotomic_ring", "grid_experiment", "jones", "jones_periodicity_test",
    "manifold_periodicity_test", "poincare_scan", "so3_context", "surgery_invariant",
]
__version__ = "0.1.0"
