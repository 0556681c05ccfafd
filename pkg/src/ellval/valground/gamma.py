"""The value group: exact rationals extended by a top element."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union


class _Infinity:
    """Top element of the value group; the valuation of 0."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("ellval.INFINITY")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        if isinstance(other, (Rational, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("INFINITY - INFINITY is undefined")
        if isinstance(other, Rational):
            return self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Rational) and other > 0:
            return self
        if isinstance(other, Rational):
            raise ArithmeticError("INFINITY may only be scaled by a positive rational")
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational) and other > 0:
            return self
        return NotImplemented


INFINITY = _Infinity()

GammaValue = Union[Fraction, _Infinity]


def gamma(value) -> GammaValue:
    """Coerce ``value`` (int, Fraction, ``"3/2"``, ``"inf"``) to a GammaValue."""
    if value is INFINITY:
        return value
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "oo"):
            return INFINITY
        return Fraction(text)
    if isinstance(value, bool):
        raise TypeError("booleans are not valuations")
    if isinstance(value, Rational):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a value-group element")


def is_finite(g) -> bool:
    return g is not INFINITY


def format_gamma(g) -> str:
    return "inf" if g is INFINITY else str(g)
