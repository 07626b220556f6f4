"""Exception hierarchy.

Configuration-type problems derive from ``ValueError``; failures of a numerical
procedure derive from ``ArithmeticError`` (the CLI maps them to exit code 3).
"""
from __future__ import annotations


class RipolyError(Exception):
    pass


class NumericalFailure(RipolyError, ArithmeticError):
    pass


class InadmissibleParameter(RipolyError, ValueError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class NonConstantGamma(InadmissibleParameter):
    pass


class Beta0Inadmissible(InadmissibleParameter):
    pass


class NotARoot(RipolyError, ValueError):
    pass


class DegreeTooHigh(RipolyError, ValueError):
    pass


class NoConvergence(NumericalFailure):
    def __init__(self, message: str, best=None, residuals=None):
        super().__init__(message)
        self.best = best
        self.residuals = residuals


class _Indexed(NumericalFailure):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class AlphaVanished(_Indexed):
    pass


class QVanished(_Indexed):
    pass


class RVanished(_Indexed):
    pass


class SingularG(NumericalFailure):
    pass


class PoleAtZero(NumericalFailure):
    pass


class PoleAtOne(NumericalFailure):
    pass


class CoincidentArguments(RipolyError, ValueError):
    pass


class DegenerateZero(NumericalFailure):
    pass


class ChainViolation(_Indexed):
    pass


class PochhammerPole(RipolyError, ValueError):
    pass


class NonTerminating(RipolyError, ValueError):
    pass


class ZeroDenominator(NumericalFailure):
    pass
