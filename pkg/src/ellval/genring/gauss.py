"""Generic profiles, the Gauss valuation on canonical forms, and residues.

A profile ``(gamma_1, ..., gamma_n)`` stands for n independent generic points
with ``val(x_i) = gamma_i`` and ``val(y_i) = 3/2 gamma_i``.  On the canonical
basis the valuation of a combination is the minimum over its terms, so every
query here is a finite computation on coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ..errors import InvalidCurve, NotIntegral, PrecisionExhausted
from ..valground import INFINITY, gamma
from ..weierstrass import GeneralWeierstrass, ShortWeierstrass, gamma_infinity
from .ring import CanonicalPoly, CoordinateRing, proportional


def coordinate_ring(curve: GeneralWeierstrass, n: int) -> CoordinateRing:
    """The n-pair ring of ``curve``, shared between profiles of that curve."""
    cache = curve.__dict__.setdefault("_rings", {})
    ring = cache.get(n)
    if ring is None:
        ring = CoordinateRing(curve.ctx, [curve.a_invariants] * n)
        cache[n] = ring
    return ring


@dataclass(frozen=True, eq=False)
class GenericProfile:
    curve: GeneralWeierstrass
    gammas: tuple

    def __post_init__(self):
        gs = tuple(gamma(g) for g in self.gammas)
        if not gs:
            raise ValueError("a profile needs at least one pair")
        object.__setattr__(self, "gammas", gs)
        if isinstance(self.curve, ShortWeierstrass):
            top = gamma_infinity(self.curve)
            for g in gs:
                if g is INFINITY or g > top:
                    raise InvalidCurve(f"gamma {g} exceeds gamma_inf = {top}")
        elif any(g != 0 for g in gs):
            raise InvalidCurve("general Weierstrass profiles only support gamma = 0")

    @property
    def n(self):
        return len(self.gammas)

    @property
    def ctx(self):
        return self.curve.ctx

    @cached_property
    def ring(self) -> CoordinateRing:
        return coordinate_ring(self.curve, self.n)

    @cached_property
    def residue_ring(self) -> CoordinateRing:
        ctx = self.ctx
        kfield = ctx.residue_field
        rels = []
        for g in self.gammas:
            if isinstance(self.curve, ShortWeierstrass):
                z = kfield.zero
                rels.append((z, z, z,
                             ctx.residue_shifted(self.curve.A, 2 * g),
                             ctx.residue_shifted(self.curve.B, 3 * g)))
            else:
                rels.append(tuple(ctx.residue(a) for a in self.curve.a_invariants))
        return CoordinateRing(kfield, rels)

    @cached_property
    def _weights(self):
        return [g for g in self.gammas] + [Fraction(3, 2) * g for g in self.gammas]

    def weight(self, m) -> Fraction:
        w = Fraction(0)
        for k, g in zip(m, self._weights):
            if k:
                w += k * g
        return w

    def x(self, i):
        return self.ring.x(i)

    def y(self, i):
        return self.ring.y(i)


@dataclass(frozen=True, eq=False)
class RatExpr:
    """num / den, deliberately not reduced to lowest terms."""

    num: CanonicalPoly
    den: CanonicalPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("RatExpr with zero denominator")

    @classmethod
    def of(cls, p: CanonicalPoly) -> "RatExpr":
        return cls(p, p.ring.one)

    def _as(self, other):
        if isinstance(other, RatExpr):
            return other
        if isinstance(other, CanonicalPoly):
            return RatExpr.of(other)
        return RatExpr.of(self.num.ring.const(other))

    def __add__(self, other):
        o = self._as(other)
        if o.den == self.den:
            return RatExpr(self.num + o.num, self.den)
        return RatExpr(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatExpr(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._as(other))

    def __rsub__(self, other):
        return self._as(other) + (-self)

    def __mul__(self, other):
        o = self._as(other)
        return RatExpr(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._as(other)
        return RatExpr(self.num * o.den, self.den * o.num)

    def __repr__(self):
        return f"RatExpr(({self.num!r}) / ({self.den!r}))"


def _as_poly(g, profile):
    if isinstance(g, CanonicalPoly):
        if g.ring is not profile.ring:
            raise ValueError("polynomial does not live in the profile's ring")
        return g
    return profile.ring.const(g)


def gauss_val(g, profile: GenericProfile):
    """min over terms of val(coefficient) + weight(monomial).

    A coefficient that is zero only to precision contributes the lower bound
    ``precision + weight``; if such a bound could reach the minimum the answer
    is not certified and PrecisionExhausted is raised.
    """
    g = _as_poly(g, profile)
    ctx = profile.ctx
    best = INFINITY
    doubtful = INFINITY
    for m, c in g.terms.items():
        w = profile.weight(m)
        try:
            v = ctx.val(c)
        except PrecisionExhausted:
            doubtful = min(doubtful, c.precision() + w)
            continue
        if v + w < best:
            best = v + w
    if doubtful is not INFINITY and doubtful <= best:
        raise PrecisionExhausted(
            f"a term known only to O(pi^{doubtful}) may decide the Gauss valuation"
        )
    return best


def rat_val(r, profile: GenericProfile):
    if isinstance(r, CanonicalPoly):
        return gauss_val(r, profile)
    vd = gauss_val(r.den, profile)
    if vd is INFINITY:
        raise ZeroDivisionError("denominator vanishes")
    vn = gauss_val(r.num, profile)
    if vn is INFINITY:
        return INFINITY
    return vn - vd


def residue_at(g, profile: GenericProfile, shift=0) -> CanonicalPoly:
    """Residue of ``g / pi^shift`` on the residue ring of the scaled curves.

    Pair i is read through x_i = pi^gamma_i X_i, y_i = pi^(3/2 gamma_i) Y_i;
    terms of weighted valuation above ``shift`` vanish.
    """
    g = _as_poly(g, profile)
    ctx = profile.ctx
    shift = Fraction(shift)
    target = profile.residue_ring
    out = {}
    for m, c in g.terms.items():
        w = profile.weight(m)
        try:
            v = ctx.val(c)
        except PrecisionExhausted:
            if c.precision() + w <= shift:
                raise
            continue
        if v + w < shift:
            raise NotIntegral(f"term of weighted valuation {v + w} lies below {shift}")
        if v + w == shift:
            out[m] = ctx.residue_shifted(c, shift - w)
    return target.from_terms(out)


def is_ball_generic(r, g, profile: GenericProfile) -> bool:
    """val(r) = g and the residue of r / pi^g involves some X_i or Y_i."""
    if isinstance(r, CanonicalPoly):
        r = RatExpr.of(r)
    g = gamma(g)
    if rat_val(r, profile) != g:
        return False
    num = residue_at(r.num, profile, gauss_val(r.num, profile))
    den = residue_at(r.den, profile, gauss_val(r.den, profile))
    # only a scalar multiple of the denominator residue gives a constant quotient
    return not proportional(num, den)
