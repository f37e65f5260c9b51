"""The effective pipeline: height budgets, exponent boxes and the bounded
search over torsion points."""

from .bounds import exponent_box, integral_scale, torsion_coordinate_height_bound
from .expr import (
    BinOp,
    Const,
    EvalResult,
    Neg,
    ParseError,
    Pow,
    RationalFunction,
    Var,
    eval_function,
    function_height_bound,
    parse_function,
    parse_functions,
    to_rational_function,
)
from .search import (
    EPS_PRESETS,
    EffectiveReport,
    Exclusion,
    Hit,
    Inconclusive,
    dependent_torsion_search,
    function_dependence_warnings,
    height_budget,
    hits_galois_closed,
    resolve_eps,
    sample_points,
)

__all__ = [
    "EPS_PRESETS",
    "BinOp",
    "Const",
    "EffectiveReport",
    "EvalResult",
    "Exclusion",
    "Hit",
    "Inconclusive",
    "Neg",
    "ParseError",
    "Pow",
    "RationalFunction",
    "Var",
    "dependent_torsion_search",
    "eval_function",
    "exponent_box",
    "function_dependence_warnings",
    "function_height_bound",
    "height_budget",
    "hits_galois_closed",
    "integral_scale",
    "parse_function",
    "parse_functions",
    "resolve_eps",
    "sample_points",
    "to_rational_function",
    "torsion_coordinate_height_bound",
]
