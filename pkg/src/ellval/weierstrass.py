"""Weierstrass curves over a valued-field context and their chord-tangent law."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidCurve,
    NotIntegralAfterScaling,
    UnsupportedCharacteristic,
)
from .valground import INFINITY, ValuedFieldContext, gamma


class _PointAtInfinity:
    """The identity of E: the unique point at infinity."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POINT_AT_INFINITY"

    def __reduce__(self):
        return (_PointAtInfinity, ())


POINT_AT_INFINITY = _PointAtInfinity()


@dataclass(frozen=True, eq=False)
class AffinePoint:
    x: object
    y: object

    @classmethod
    def on(cls, c, x, y):
        """A point with coordinates coerced into ``c``'s context."""
        return cls(c.ctx.coerce(x), c.ctx.coerce(y))

    def __eq__(self, other):
        if not isinstance(other, AffinePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    __hash__ = None

    def __iter__(self):
        yield self.x
        yield self.y


def is_infinity(P) -> bool:
    return P is POINT_AT_INFINITY


@dataclass(frozen=True, eq=False)
class GeneralWeierstrass:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integral coefficients."""

    a1: object
    a2: object
    a3: object
    a4: object
    a6: object
    ctx: ValuedFieldContext

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, self.ctx.coerce(getattr(self, name)))
            if self.ctx.val(getattr(self, name)) < 0:
                raise InvalidCurve(f"{name} is not integral")
        if self.ctx.val(self.discriminant) is INFINITY:
            raise InvalidCurve("discriminant vanishes")

    @property
    def a_invariants(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def discriminant(self):
        return b_quantities(self)[4]

    def __eq__(self, other):
        if not isinstance(other, GeneralWeierstrass) or isinstance(other, ShortWeierstrass):
            return NotImplemented
        return self.ctx == other.ctx and all(
            u == v for u, v in zip(self.a_invariants, other.a_invariants)
        )

    __hash__ = None

    def __repr__(self):
        f = self.ctx.format
        return (
            f"GeneralWeierstrass(a1={f(self.a1)}, a2={f(self.a2)}, a3={f(self.a3)}, "
            f"a4={f(self.a4)}, a6={f(self.a6)})"
        )

    def is_on_curve(self, P) -> bool:
        if is_infinity(P):
            return True
        x, y = P
        a1, a2, a3, a4, a6 = self.a_invariants
        return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6


class ShortWeierstrass(GeneralWeierstrass):
    """y^2 = x^3 + A x + B, integral, residue characteristic outside {2, 3}."""

    def __init__(self, A, B, ctx: ValuedFieldContext):
        ctx.require_residue_char_not(2, 3)
        object.__setattr__(self, "A", ctx.coerce(A))
        object.__setattr__(self, "B", ctx.coerce(B))
        zero = ctx.zero
        super().__init__(zero, zero, zero, self.A, self.B, ctx)

    @property
    def discriminant(self):
        A, B = self.A, self.B
        return -16 * (4 * A * A * A + 27 * B * B)

    def __eq__(self, other):
        if not isinstance(other, ShortWeierstrass):
            return NotImplemented
        return self.ctx == other.ctx and self.A == other.A and self.B == other.B

    __hash__ = None

    def __repr__(self):
        return f"ShortWeierstrass(A={self.ctx.format(self.A)}, B={self.ctx.format(self.B)})"

    def as_general(self) -> GeneralWeierstrass:
        z = self.ctx.zero
        return GeneralWeierstrass(z, z, z, self.A, self.B, self.ctx)

    def is_on_curve(self, P) -> bool:
        if is_infinity(P):
            return True
        x, y = P
        return y * y == x * x * x + self.A * x + self.B

    def embed(self, ctx: ValuedFieldContext) -> "ShortWeierstrass":
        """The same curve read in a (ramified) extension context."""
        return ShortWeierstrass(ctx.embed(self.A), ctx.embed(self.B), ctx)


def b_quantities(c: GeneralWeierstrass):
    """(b2, b4, b6, b8, discriminant) of a general Weierstrass equation."""
    a1, a2, a3, a4, a6 = c.a_invariants
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    delta = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return b2, b4, b6, b8, delta


# --------------------------------------------------------------- group law
def neg(c: GeneralWeierstrass, P):
    if is_infinity(P):
        return P
    x, y = c.ctx.coerce(P.x), c.ctx.coerce(P.y)
    if isinstance(c, ShortWeierstrass):
        return AffinePoint(x, -y)
    return AffinePoint(x, -y - c.a1 * x - c.a3)


def add(c: GeneralWeierstrass, P, Q):
    """P + Q by the chord-tangent construction.

    Over truncated series, coordinate equality means equality to precision.
    """
    if is_infinity(P):
        return Q
    if is_infinity(Q):
        return P
    a1, a2, a3, a4, a6 = c.a_invariants
    co = c.ctx.coerce
    x1, y1 = co(P.x), co(P.y)
    x2, y2 = co(Q.x), co(Q.y)
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return POINT_AT_INFINITY
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return AffinePoint(x3, y3)


def sub(c, P, Q):
    return add(c, P, neg(c, Q))


def multiply(c: GeneralWeierstrass, n: int, P):
    """n * P by double-and-add."""
    if n < 0:
        return multiply(c, -n, neg(c, P))
    result = POINT_AT_INFINITY
    base = P
    while n:
        if n & 1:
            result = add(c, result, base)
        n >>= 1
        if n:
            base = add(c, base, base)
    return result


def lift_x(c: ShortWeierstrass, x0):
    """The point (x0, y0) with y0 the canonical Hensel square root of x0^3 + A x0 + B."""
    ctx = c.ctx
    x0 = ctx.coerce(x0)
    y0 = ctx.hensel_sqrt(x0 * x0 * x0 + c.A * x0 + c.B)
    return AffinePoint(x0, y0)


# ---------------------------------------------------------------- scalings
def scale_short(c: ShortWeierstrass, g) -> ShortWeierstrass:
    """y^2 = x^3 + (A/a^2) x + B/a^3 with a = pi^(g*N), i.e. val(a) = g."""
    g = gamma(g)
    ctx = c.ctx
    if ctx.val(c.A) < 2 * g or ctx.val(c.B) < 3 * g:
        raise NotIntegralAfterScaling(f"gamma={g} exceeds the integrality bound of {c!r}")
    if g == 0:
        return c
    a = ctx.pi_power(g)
    return ShortWeierstrass(c.A / (a * a), c.B / (a * a * a), ctx)


def scale_standard(c: ShortWeierstrass, m: int) -> ShortWeierstrass:
    """A -> A/u^4, B -> B/u^6 with u = pi^m."""
    ctx = c.ctx
    step = Fraction(m, ctx.N)
    if ctx.val(c.A) < 4 * step or ctx.val(c.B) < 6 * step:
        raise NotIntegralAfterScaling(f"u = pi^{m} does not keep {c!r} integral")
    if m == 0:
        return c
    u = ctx.pi_power(step)
    u2 = u * u
    return ShortWeierstrass(c.A / (u2 * u2), c.B / (u2 * u2 * u2), ctx)


def gamma_infinity(c: ShortWeierstrass):
    """min(val(A)/2, val(B)/3); the largest gamma the scaled curves stay integral for."""
    ctx = c.ctx
    vA, vB = ctx.val(c.A), ctx.val(c.B)
    cand = []
    if vA is not INFINITY:
        cand.append(vA / 2)
    if vB is not INFINITY:
        cand.append(vB / 3)
    return min(cand)


# ------------------------------------------------------------------ records
_GENERAL_KEYS = ("a1", "a2", "a3", "a4", "a6")


def curve_record(c: GeneralWeierstrass) -> dict:
    """``{backend, p | field + t, N, ...coefficients}`` with literal strings."""
    ctx = c.ctx
    desc = ctx.describe()
    rec = {"backend": desc["backend"]}
    if desc["backend"] == "padic":
        rec["p"] = desc["p"]
    else:
        rec["field"] = desc["field"]
        rec["t"] = "t"
        rec["precision"] = desc["precision"]
    rec["N"] = desc["N"]
    if isinstance(c, ShortWeierstrass):
        rec["A"] = ctx.format(c.A)
        rec["B"] = ctx.format(c.B)
    else:
        for k in _GENERAL_KEYS:
            rec[k] = ctx.format(getattr(c, k))
    return rec


def curve_from_record(rec: dict, ctx=None) -> GeneralWeierstrass:
    from .valground import make_context

    if ctx is None:
        ctx = make_context(
            rec.get("backend", "laurent"),
            p=rec.get("p"),
            field=rec.get("field", "Q"),
            N=rec.get("N", 1),
            precision=rec.get("precision", "40"),
        )
    if "A" in rec or "B" in rec:
        if any(k in rec for k in _GENERAL_KEYS):
            raise InvalidCurve("give either A, B or a1..a6, not both")
        return ShortWeierstrass(ctx.coerce(str(rec.get("A", "0"))), ctx.coerce(str(rec.get("B", "0"))), ctx)
    return GeneralWeierstrass(*(ctx.coerce(str(rec.get(k, "0"))) for k in _GENERAL_KEYS), ctx)
