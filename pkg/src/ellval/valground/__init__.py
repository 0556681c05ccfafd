"""Exact valued-field arithmetic: value group, coefficient fields, backends."""
from .context import (
    DEFAULT_PRECISION,
    make_context,
    LaurentContext,
    PadicRationals,
    ValuedFieldContext,
    hensel_sqrt,
    ramify,
    residue,
    val,
)
from .fields import (
    QQ_FIELD,
    CoefficientField,
    Fp,
    FunctionField,
    PrimeField,
    Rationals,
    field_descriptor,
    parse_field,
    with_transcendentals,
)
from .gamma import INFINITY, GammaValue, format_gamma, gamma, is_finite
from .laurent import LaurentSeries
from .literal import parse_literal

__all__ = [
    "DEFAULT_PRECISION",
    "make_context",
    "INFINITY",
    "QQ_FIELD",
    "CoefficientField",
    "Fp",
    "FunctionField",
    "GammaValue",
    "LaurentContext",
    "LaurentSeries",
    "PadicRationals",
    "PrimeField",
    "Rationals",
    "ValuedFieldContext",
    "field_descriptor",
    "format_gamma",
    "gamma",
    "hensel_sqrt",
    "is_finite",
    "parse_field",
    "parse_literal",
    "ramify",
    "residue",
    "val",
    "with_transcendentals",
]
