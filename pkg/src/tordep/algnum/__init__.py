"""Exact algebraic numbers, Weil heights and root-of-unity certification."""

from .balls import ComplexBall
from .fields import (
    Embedding,
    KPoly,
    NumberField,
    PrecisionExhausted,
    common_embedding,
    embedded_roots,
    extend,
)
from .height import (
    HeightValue,
    conjugates,
    cyclotomic_orders,
    is_root_of_unity,
    minpoly_is_cyclotomic,
    weil_height,
)
from .number import (
    AlgebraicNumber,
    AmbiguousBranch,
    an_add,
    an_equals,
    an_from_rational,
    an_inv,
    an_mul,
    an_neg,
    an_sqrt,
    as_algebraic,
    root_of_polynomial,
)

__all__ = [
    "AlgebraicNumber",
    "AmbiguousBranch",
    "ComplexBall",
    "Embedding",
    "HeightValue",
    "KPoly",
    "NumberField",
    "PrecisionExhausted",
    "an_add",
    "an_equals",
    "an_from_rational",
    "an_inv",
    "an_mul",
    "an_neg",
    "an_sqrt",
    "as_algebraic",
    "common_embedding",
    "conjugates",
    "cyclotomic_orders",
    "embedded_roots",
    "extend",
    "is_root_of_unity",
    "minpoly_is_cyclotomic",
    "root_of_polynomial",
    "weil_height",
]
