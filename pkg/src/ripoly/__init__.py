"""Orthogonal-polynomial sequences from R_I recurrences, their common-zero
combinations, and the para-orthogonal and Szego families built from them."""
from .combiner import (AlphaSeq, CommonZeroFamily, build_alpha, build_family, gen_Q_direct,
                       gen_Q_mixed, validate_combination)
from .errors import InadmissibleParameter, NoConvergence, NumericalFailure, RipolyError
from .polycore import ComplexPoly, roots
from .r1engine import R1Params, gen_P, shift_to_zero_gamma

__all__ = [
    "AlphaSeq", "CommonZeroFamily", "ComplexPoly", "InadmissibleParameter", "NoConvergence",
    "NumericalFailure", "R1Params", "RipolyError", "build_alpha", "build_family", "gen_P",
    "gen_Q_direct", "gen_Q_mixed", "roots", "shift_to_zero_gamma", "validate_combination",
]
__version__ = "0.1.0"
