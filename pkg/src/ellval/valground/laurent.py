"""Truncated Laurent (Puiseux-with-bounded-denominator) series.

A series is ``sum c_e t^(e/N) + O(t^(prec/N))``.  Exponents are stored as
integers in units of ``1/N``; ``prec`` is ``None`` for exact elements
(finite sums, e.g. the literals a user types).  Operations that would produce
an infinite expansion (inversion, square roots) truncate at the relative
``budget``; everything else propagates precision the usual way.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from ..errors import PrecisionExhausted
from .gamma import INFINITY


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class LaurentSeries:
    __slots__ = ("field", "N", "terms", "prec", "budget")

    def __init__(self, field, terms=None, prec=None, N=1, budget=Fraction(40)):
        self.field = field
        self.N = N
        self.prec = prec
        self.budget = Fraction(budget)
        clean = {}
        if terms:
            for e, c in terms.items():
                if prec is not None and e >= prec:
                    continue
                c = field.coerce(c)
                if not field.is_exact_zero(c):
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field, terms, prec, N, budget):
        # trusted constructor: terms already coerced, zero-free and below prec
        s = object.__new__(cls)
        s.field = field
        s.N = N
        s.terms = terms
        s.prec = prec
        s.budget = budget
        return s

    # ------------------------------------------------------------ structure
    @property
    def is_exact(self):
        return self.prec is None

    def min_exp(self):
        return min(self.terms) if self.terms else None

    def _low(self):
        """Lower bound for the exponent of the first nonzero term (units)."""
        if self.terms:
            return min(self.terms)
        return self.prec

    def valuation(self):
        if self.terms:
            return Fraction(min(self.terms), self.N)
        if self.prec is None:
            return INFINITY
        raise PrecisionExhausted(
            f"series is zero to precision O(t^{Fraction(self.prec, self.N)})"
        )

    def precision(self):
        """Absolute precision as a valuation (INFINITY when exact)."""
        return INFINITY if self.prec is None else Fraction(self.prec, self.N)

    def leading_coefficient(self):
        if not self.terms:
            raise PrecisionExhausted("no leading term")
        return self.terms[min(self.terms)]

    def coefficient(self, q):
        """Coefficient of ``t^q`` for rational ``q``."""
        q = Fraction(q)
        scaled = q * self.N
        if self.prec is not None and scaled >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{q} lies beyond precision")
        if scaled.denominator != 1:
            return self.field.zero
        return self.terms.get(int(scaled), self.field.zero)

    def embed(self, N):
        if N == self.N:
            return self
        if N % self.N:
            raise ValueError(f"cannot embed ramification {self.N} into {N}")
        k = N // self.N
        return LaurentSeries._raw(
            self.field,
            {e * k: c for e, c in self.terms.items()},
            None if self.prec is None else self.prec * k,
            N,
            self.budget,
        )

    def truncate(self, q):
        """Forget every term at or beyond valuation ``q``."""
        cut = math.ceil(Fraction(q) * self.N)
        if self.prec is not None and self.prec <= cut:
            return self
        return LaurentSeries._raw(
            self.field,
            {e: c for e, c in self.terms.items() if e < cut},
            cut,
            self.N,
            self.budget,
        )

    # ------------------------------------------------------------ coercion
    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")
            return other
        try:
            c = self.field.coerce(other)
        except TypeError:
            return None
        terms = {} if self.field.is_exact_zero(c) else {0: c}
        return LaurentSeries._raw(self.field, terms, None, self.N, self.budget)

    def _pair(self, other):
        other = self._coerce(other)
        if other is None:
            return None, None
        a, b = self, other
        if a.N != b.N:
            n = _lcm(a.N, b.N)
            a, b = a.embed(n), b.embed(n)
        return a, b

    # ---------------------------------------------------------- arithmetic
    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        prec = _pmin(a.prec, b.prec)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            if e in terms:
                s = terms[e] + c
                if a.field.is_exact_zero(s):
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        if prec is not None:
            terms = {e: c for e, c in terms.items() if e < prec}
        return LaurentSeries._raw(a.field, terms, prec, a.N, min(a.budget, b.budget))

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries._raw(
            self.field, {e: -c for e, c in self.terms.items()}, self.prec, self.N, self.budget
        )

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        budget = min(a.budget, b.budget)
        if (not a.terms and a.prec is None) or (not b.terms and b.prec is None):
            return LaurentSeries._raw(a.field, {}, None, a.N, budget)
        prec = None
        if b.prec is not None:
            prec = a._low() + b.prec
        if a.prec is not None:
            prec = _pmin(prec, b._low() + a.prec)
        terms = {}
        zero = a.field.is_exact_zero
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                if e in terms:
                    terms[e] = terms[e] + c1 * c2
                else:
                    terms[e] = c1 * c2
        terms = {e: c for e, c in terms.items() if not zero(c)}
        return LaurentSeries._raw(a.field, terms, prec, a.N, budget)

    __rmul__ = __mul__

    def inverse(self, rel_prec=None):
        """Multiplicative inverse; ``rel_prec`` (units of 1/N) defaults to the budget."""
        if not self.terms:
            if self.prec is None:
                raise ZeroDivisionError("inverse of exact zero series")
            raise PrecisionExhausted("cannot invert a series that is zero to precision")
        v = min(self.terms)
        c = self.terms[v]
        cinv = self.field.one / c
        if self.prec is None and len(self.terms) == 1:
            return LaurentSeries._raw(self.field, {-v: cinv}, None, self.N, self.budget)
        R = rel_prec if rel_prec is not None else math.ceil(self.budget * self.N)
        if self.prec is not None:
            R = min(R, self.prec - v)
        w = sorted((e - v, coef * cinv) for e, coef in self.terms.items() if 0 < e - v < R)
        zero = self.field.zero
        inv = [self.field.one] + [zero] * (R - 1)
        for k in range(1, R):
            acc = zero
            for i, wi in w:
                if i > k:
                    break
                acc = acc + wi * inv[k - i]
            inv[k] = -acc
        terms = {}
        for k, ck in enumerate(inv):
            if not self.field.is_exact_zero(ck):
                terms[k - v] = ck * cinv
        return LaurentSeries._raw(self.field, terms, R - v, self.N, self.budget)

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self._coerce(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # ------------------------------------------------------------ equality
    def __eq__(self, other):
        if not isinstance(other, (LaurentSeries, Rational)) and self._coerce(other) is None:
            return NotImplemented
        try:
            d = self - other
        except (TypeError, ValueError):
            return False
        return not d.terms

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def __bool__(self):
        return bool(self.terms) or self.prec is not None

    def __repr__(self):
        return f"LaurentSeries({format_series(self)})"

    __str__ = lambda self: format_series(self)


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _fmt_exp(q: Fraction) -> str:
    if q.denominator == 1:
        return f"t^{q.numerator}" if q.numerator >= 0 else f"t^({q.numerator})"
    return f"t^({q.numerator}/{q.denominator})"


def format_series(s: LaurentSeries) -> str:
    parts = []
    for e in sorted(s.terms):
        c = s.terms[e]
        q = Fraction(e, s.N)
        ctext = s.field.format(c)
        if q == 0:
            parts.append(ctext)
            continue
        mono = "t" if q == 1 else _fmt_exp(q)
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{ctext}*{mono}")
    if s.prec is not None:
        parts.append(f"O({_fmt_exp(Fraction(s.prec, s.N))})")
    if not parts:
        return "0"
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


def series_sqrt(s: LaurentSeries):
    """Newton square root of a series with even leading exponent.

    Returns None when the leading coefficient is not a square in the
    coefficient field.  The caller is responsible for the parity and
    characteristic checks.
    """
    if not s.terms:
        return s
    v = min(s.terms)
    c = s.terms[v]
    r0 = s.field.sqrt(c)
    if r0 is None:
        return None
    cinv = s.field.one / c
    unit = LaurentSeries._raw(
        s.field,
        {e - v: coef * cinv for e, coef in s.terms.items()},
        None if s.prec is None else s.prec - v,
        s.N,
        s.budget,
    )
    R = math.ceil(s.budget * s.N)
    if s.prec is not None:
        R = min(R, s.prec - v)
    one = unit._coerce(1)
    half = s.field.one / 2
    y = one.truncate(Fraction(1, s.N))
    k = 1
    while k < R:
        k = min(2 * k, R)
        uk = unit.truncate(Fraction(k, s.N))
        # the approximant is correct to the old precision; extend it formally
        ye = LaurentSeries._raw(s.field, y.terms, None, s.N, s.budget)
        y = ((ye + uk * ye.inverse(k)) * half).truncate(Fraction(k, s.N))
    if s.prec is None:
        candidate = LaurentSeries._raw(s.field, dict(y.terms), None, s.N, s.budget)
        if candidate * candidate == unit:
            y = candidate
    lead = LaurentSeries._raw(s.field, {v // 2: r0}, None, s.N, s.budget)
    return lead * y
