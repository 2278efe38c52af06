"""Equations of Hilbert schemes in Plücker coordinates."""

from .errors import (
    BadComposition,
    BadMultiIndex,
    DegenerateDimension,
    DimensionMismatch,
    HilbEqError,
    NotAdmissible,
    ParseError,
    RankDeficient,
    SelectionSizeMismatch,
)
from .hilbpoly import HilbertPolynomialContext, gotzmann_decompose, parse_polynomial, q_of, qprime_of
from .plucker import DeltaPolynomial

__version__ = "0.1.0"

__all__ = [
    "BadComposition",
    "BadMultiIndex",
    "DegenerateDimension",
    "DeltaPolynomial",
    "DimensionMismatch",
    "HilbEqError",
    "HilbertPolynomialContext",
    "NotAdmissible",
    "ParseError",
    "RankDeficient",
    "SelectionSizeMismatch",
    "gotzmann_decompose",
    "parse_polynomial",
    "q_of",
    "qprime_of",
]
