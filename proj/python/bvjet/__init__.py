"""Graded variational calculus on jet spaces of a BV bundle.

The engine computes total and variational derivatives, the variational
Schouten bracket, the jet-space BV-Laplacian and the multi-base-point
functional BV-Laplacian, over exact rational scalars with the formal
symbols i and hbar.
"""

from ._bvjet import (
    FieldContent,
    GradedExpr,
    LocalFunctional,
    ExtendedFunctional,
    YangMillsModel,
    ParseError,
    field_content,
    parse,
    integral,
    extend,
    schouten_jet,
    laplacian_jet,
    schouten,
    laplacian,
    functional_derivative,
    restrict_to_diagonal,
    functional_equal,
    functional_zero,
    check_qme,
    verify,
)

__all__ = [
    "FieldContent",
    "GradedExpr",
    "LocalFunctional",
    "ExtendedFunctional",
    "YangMillsModel",
    "ParseError",
    "field_content",
    "parse",
    "integral",
    "extend",
    "schouten_jet",
    "laplacian_jet",
    "schouten",
    "laplacian",
    "functional_derivative",
    "restrict_to_diagonal",
    "functional_equal",
    "functional_zero",
    "check_qme",
    "verify",
]
