"""Valued-field backends.

Two concrete backends share one interface:

* :class:`PadicRationals` -- the rationals with the p-adic valuation.  Elements
  are :class:`fractions.Fraction`; every valuation is exact.
* :class:`LaurentContext` -- Laurent series ``k((t^(1/N)))`` over an exact
  coefficient field, truncated at a relative precision budget.

Valuations live in the value group ``(1/N)Z`` of rationals, with
:data:`~ellval.valground.gamma.INFINITY` for zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from numbers import Rational

from ..errors import (
    NotASquare,
    NotIntegral,
    NotRepresentable,
    OddValuation,
    PrecisionExhausted,
    UnsupportedCharacteristic,
    UnsupportedRamification,
)
from .fields import CoefficientField, Fp, PrimeField, Rationals, field_descriptor
from .gamma import INFINITY, GammaValue
from .laurent import LaurentSeries, format_series, series_sqrt

DEFAULT_PRECISION = Fraction(40)


class ValuedFieldContext:
    """Interface shared by the backends."""

    N: int = 1

    # The coordinate-ring code treats a context as its coefficient domain.
    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def value_group_contains(self, g) -> bool:
        if g is INFINITY:
            return True
        return (Fraction(g) * self.N).denominator == 1

    def require_residue_char_not(self, *chars):
        if self.residue_characteristic in chars:
            raise UnsupportedCharacteristic(
                f"residue characteristic {self.residue_characteristic} is not supported here"
            )

    def parse(self, text: str):
        from .literal import parse_literal

        return parse_literal(text, self)

    def pi_power(self, q):
        """An element of valuation ``q``: the uniformizer's power where possible."""
        q = Fraction(q)
        if not self.value_group_contains(q):
            raise UnsupportedRamification(
                f"valuation {q} is not in the value group (1/{self.N})Z; ramify first"
            )
        return self._pi_power(q)

    def is_exact_zero(self, x) -> bool:
        return x == 0


@dataclass(frozen=True)
class PadicRationals(ValuedFieldContext):
    p: int
    N: int = dc_field(default=1, init=False)

    def __post_init__(self):
        PrimeField(self.p)  # validates primality

    @property
    def residue_field(self) -> PrimeField:
        return PrimeField(self.p)

    @property
    def residue_characteristic(self) -> int:
        return self.p

    @property
    def exact(self) -> bool:
        return True

    def describe(self) -> dict:
        return {"backend": "padic", "p": self.p, "N": 1}

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Rational) and not isinstance(x, bool):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"{x!r} is not an element of QQ with the {self.p}-adic valuation")

    element = coerce

    def val(self, x) -> GammaValue:
        x = self.coerce(x)
        if x == 0:
            return INFINITY
        p = self.p
        v = 0
        n, d = x.numerator, x.denominator
        while n % p == 0:
            n //= p
            v += 1
        while d % p == 0:
            d //= p
            v -= 1
        return Fraction(v)

    def residue(self, x):
        x = self.coerce(x)
        v = self.val(x)
        if v < 0:
            raise NotIntegral(f"{x} has negative {self.p}-adic valuation")
        if v > 0:
            return Fp(0, self.p)
        return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)

    def residue_shifted(self, x, s):
        """Residue of ``x / pi^s`` computed from valuations alone."""
        s = Fraction(s)
        v = self.val(x)
        if v is INFINITY or v > s:
            return Fp(0, self.p)
        if v < s:
            raise NotIntegral(f"{x} / {self.p}^{s} is not integral")
        return self.residue(self.coerce(x) / Fraction(self.p) ** int(s))

    def uniformizer(self):
        return Fraction(self.p)

    def _pi_power(self, q):
        return Fraction(self.p) ** int(q)

    def lift_residue(self, r):
        return Fraction(self.residue_field.lift(r))

    def hensel_sqrt(self, x):
        x = self.coerce(x)
        if self.p == 2:
            raise UnsupportedCharacteristic("square roots need residue characteristic != 2")
        if x == 0:
            return x
        v = self.val(x)
        if v.numerator % 2:
            raise OddValuation(f"valuation {v} of {x} is odd")
        unit = x / Fraction(self.p) ** int(v)
        r = self.residue_field.sqrt(self.residue(unit))
        if r is None:
            raise NotASquare(f"residue of {unit} is not a square mod {self.p}")
        root = Rationals().sqrt(x)
        if root is None:
            raise NotRepresentable(f"{x} has no rational square root")
        root = self.coerce(root)
        if self.residue(root / Fraction(self.p) ** int(v / 2)) != r:
            root = -root
        return root

    def ramify(self, M: int):
        if M < 1:
            raise ValueError("ramification index must be positive")
        if M == 1:
            return self
        raise UnsupportedRamification("the p-adic rationals backend cannot be ramified")

    def embed(self, x):
        return self.coerce(x)

    def format(self, x) -> str:
        return str(self.coerce(x))

    def random_unit(self, rng):
        while True:
            n = rng.choice([-1, 1]) * rng.randint(1, 30)
            d = rng.randint(1, 6)
            if n % self.p and d % self.p:
                return Fraction(n, d)


@dataclass(frozen=True)
class LaurentContext(ValuedFieldContext):
    field: CoefficientField
    precision: Fraction = DEFAULT_PRECISION
    N: int = 1

    def __post_init__(self):
        object.__setattr__(self, "precision", Fraction(self.precision))
        if self.precision <= 0:
            raise ValueError("precision must be positive")
        if self.N < 1:
            raise ValueError("ramification index must be positive")

    @property
    def residue_field(self) -> CoefficientField:
        return self.field

    @property
    def residue_characteristic(self) -> int:
        return self.field.characteristic

    @property
    def exact(self) -> bool:
        return False

    def describe(self) -> dict:
        return {
            "backend": "laurent",
            "field": field_descriptor(self.field),
            "N": self.N,
            "precision": str(self.precision),
        }

    def _series(self, terms, prec=None):
        return LaurentSeries(self.field, terms, prec, self.N, self.precision)

    def coerce(self, x):
        if isinstance(x, LaurentSeries):
            if x.field != self.field:
                raise ValueError(f"series over {x.field!r} is not in {self!r}")
            if x.N != self.N:
                if self.N % x.N:
                    raise ValueError(f"series with ramification {x.N} does not embed here")
                x = x.embed(self.N)
            return x
        if isinstance(x, str):
            return self.parse(x)
        c = self.field.coerce(x)
        return self._series({0: c})

    element = coerce

    def t(self, q=1):
        """The monomial ``t^q``; ``q`` must lie in (1/N)Z."""
        return self.pi_power(q)

    def _pi_power(self, q):
        return self._series({int(Fraction(q) * self.N): self.field.one})

    def uniformizer(self):
        return self._series({1: self.field.one})

    def monomial(self, c, q):
        q = Fraction(q)
        if not self.value_group_contains(q):
            raise UnsupportedRamification(f"t^{q} is not in this context; ramify first")
        return self._series({int(q * self.N): self.field.coerce(c)})

    def val(self, x) -> GammaValue:
        return self.coerce(x).valuation()

    def residue_shifted(self, x, s):
        """Residue of ``x * t^(-s)``: the coefficient of ``t^s`` when val(x) >= s."""
        x = self.coerce(x)
        s = Fraction(s)
        if x.terms and Fraction(min(x.terms), x.N) < s:
            raise NotIntegral(f"{format_series(x)} / t^{s} is not integral")
        return x.coefficient(s)

    def residue(self, x):
        return self.residue_shifted(x, 0)

    def lift_residue(self, r):
        return self.coerce(self.field.coerce(r))

    def hensel_sqrt(self, x):
        x = self.coerce(x)
        if self.residue_characteristic == 2:
            raise UnsupportedCharacteristic("square roots need residue characteristic != 2")
        if not x.terms:
            if x.prec is None:
                return x
            raise PrecisionExhausted("square root of a series that is zero to precision")
        v = min(x.terms)
        if v % 2:
            raise OddValuation(f"valuation {Fraction(v, x.N)} is odd in (1/{x.N})Z")
        root = series_sqrt(x)
        if root is None:
            raise NotASquare(
                f"leading coefficient {self.field.format(x.terms[v])} is not a square"
            )
        return root

    def ramify(self, M: int):
        if M < 1:
            raise ValueError("ramification index must be positive")
        return LaurentContext(self.field, self.precision, self.N * M)

    def embed(self, x):
        return self.coerce(x)

    def format(self, x) -> str:
        return format_series(self.coerce(x))

    def is_exact_zero(self, x) -> bool:
        return isinstance(x, LaurentSeries) and not x.terms and x.prec is None

    def random_unit(self, rng):
        u = self._series({0: self.field.random_unit(rng)})
        if rng.random() < 0.5:
            u = u + self._series({self.N: self.field.random_unit(rng)})
        return u


# Module-level operations mirror the context methods.
def val(x, ctx: ValuedFieldContext) -> GammaValue:
    return ctx.val(x)


def residue(x, ctx: ValuedFieldContext):
    return ctx.residue(x)


def hensel_sqrt(x, ctx: ValuedFieldContext):
    return ctx.hensel_sqrt(x)


def ramify(ctx: ValuedFieldContext, M: int) -> ValuedFieldContext:
    return ctx.ramify(M)


def make_context(backend: str, p=None, field="Q", N=1, precision=DEFAULT_PRECISION):
    """Build a backend from its descriptor fields (as used in curve records)."""
    from .fields import parse_field

    backend = backend.strip().lower()
    if backend == "padic":
        if p is None:
            raise ValueError("the padic backend needs a prime p")
        if int(N) != 1:
            raise UnsupportedRamification("the p-adic rationals backend has N = 1")
        return PadicRationals(int(p))
    if backend == "laurent":
        k = parse_field(field) if isinstance(field, str) else field
        return LaurentContext(k, Fraction(precision), int(N))
    raise ValueError(f"unknown backend {backend!r} (expected padic or laurent)")
