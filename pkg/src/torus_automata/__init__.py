"""Automatic presentations of Z^n by digit strings modulo t(x), and of Z^2 x|_A Z."""
from .core_ring import ReprParams, equivalent, reduce, residue
from .errors import (
    AlphabetMismatch, CarryBoundError, CarryCycleError, InvalidParams, NotRecognizable,
    ReductionBudgetExceeded, StateBudgetExceeded, TorusAutomataError,
)
from .presentation import Presentation, add_strings, build_dom, build_equiv_automaton
from .words import format_digits, parse_digits

__all__ = [
    "AlphabetMismatch", "CarryBoundError", "CarryCycleError", "InvalidParams", "NotRecognizable",
    "Presentation", "ReductionBudgetExceeded", "ReprParams", "StateBudgetExceeded",
    "TorusAutomataError", "add_strings", "build_dom", "build_equiv_automaton", "equivalent",
    "format_digits", "parse_digits", "reduce", "residue",
]
