"""Valued field: truncated Puiseux series and the ordered value group."""

from ._backend import backend_name
from .lam import BOTTOM, LambdaVal, LexPair
from .series import (
    EQ,
    GT,
    LT,
    ONE,
    T,
    ZERO,
    PuiseuxElem,
    add,
    cmp,
    from_rational,
    in_O,
    inv,
    is_unit,
    monomial,
    mul,
    neg,
    negval,
    parse,
    residue,
    sqrt_pos,
    sub,
    to_str,
    with_floor,
)

__all__ = [
    "BOTTOM",
    "EQ",
    "GT",
    "LT",
    "LambdaVal",
    "LexPair",
    "ONE",
    "PuiseuxElem",
    "T",
    "ZERO",
    "add",
    "backend_name",
    "cmp",
    "from_rational",
    "in_O",
    "inv",
    "is_unit",
    "monomial",
    "mul",
    "neg",
    "negval",
    "parse",
    "residue",
    "sqrt_pos",
    "sub",
    "to_str",
    "with_floor",
]
