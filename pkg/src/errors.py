"""
Exception hierarchy for SymReal.
"""
from typing import Optional


class SymRealError(Exception):
    """Base class of every error raised by the library."""

    exit_code = 1


class InputError(SymRealError):
    """The caller handed in something the operation cannot accept."""

    exit_code = 1


class InconclusiveError(SymRealError):
    """A randomized step failed; the question is still open."""

    exit_code = 2


# Polynomials

class PolynomialSyntaxError(InputError):
    """Raised by the parser; carries the offending position."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariable(PolynomialSyntaxError):
    pass


class ZeroDenominator(PolynomialSyntaxError):
    pass


class ArityMismatch(InputError):
    pass


# Combinatorics

class InvalidComposition(InputError):
    pass


class SumMismatch(InputError):
    pass


class NotSorted(InputError):
    pass


# Symmetric functions

class NotSymmetric(InputError):
    pass


class NonTermination(SymRealError):
    """The lex-reduction loop failed to decrease its leading monomial."""


class NotInSubring(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class UnsupportedBasisPair(InputError):
    pass


class TooManyVariables(InputError):
    pass


# Real roots

class ZeroPolynomial(InputError):
    pass


class EncodingMismatch(InputError):
    pass


class LeadingCoefficientVanishes(InputError):
    pass


# Zero-dimensional solving

class PositiveDimensional(InputError):
    pass


class InvalidParam(InputError):
    pass


class SeparationFailure(InconclusiveError):
    pass


# Decision and emptiness

class PatternMismatch(InputError):
    pass


class AssumptionViolated(InputError):
    pass


class DegenerateInstance(InconclusiveError):
    pass


# Sums of squares

class OddDegree(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class TooFewVariables(InputError):
    pass


class CertificateWriteError(SymRealError):
    """Writing an SDPA file failed."""
