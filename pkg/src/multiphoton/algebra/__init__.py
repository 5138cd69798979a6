"""Exact symbolic engine for one bosonic mode."""

from .coeffs import PolyCoeff, conj_name
from .operators import (
    OperatorMonomial,
    OperatorPoly,
    adjoint,
    commutator,
    evaluate_numeric,
    normal_order,
    substitute,
)
from .parser import ParseError, format_expr, parse_coeff, parse_expr
from .scalars import ExactScalar

__all__ = [
    "ExactScalar",
    "OperatorMonomial",
    "OperatorPoly",
    "ParseError",
    "PolyCoeff",
    "adjoint",
    "commutator",
    "conj_name",
    "evaluate_numeric",
    "format_expr",
    "normal_order",
    "parse_coeff",
    "parse_expr",
    "substitute",
]
