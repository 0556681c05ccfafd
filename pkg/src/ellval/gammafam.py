"""The family of generic types p_gamma and their stabilizers E_gamma(O).

p_gamma is described by its x-pushforward alone: x is generic in the closed
ball of radius gamma around 0.  Membership in Stab(p_gamma) is decided by
translating a generic point and testing that pushforward again.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import Counterexample, CurveMismatch, InvalidCurve
from .genring import (
    ADD,
    GenericProfile,
    Translate,
    compose_group_law,
    coordinate_ring,
    gauss_val,
    is_ball_generic,
    rat_val,
)
from .neron import smooth_reduction_member
from .valground import INFINITY, format_gamma, gamma, is_finite
from .weierstrass import ShortWeierstrass, gamma_infinity, is_infinity

__all__ = [
    "BallDescriptor", "GammaType", "Reject", "ProductReport", "ChainReport",
    "gamma_infinity", "eq2_value", "classify_idempotent", "product_gamma",
    "verify_product_symbolic", "stab_member", "fast_member", "chain_check",
    "gamma_grid", "idempotence_holds",
]

CENTER_TOO_LARGE = "CENTER_TOO_LARGE"
GAMMA_EXCEEDS_MAX = "GAMMA_EXCEEDS_MAX"
Y_VALUATION_MISMATCH = "Y_VALUATION_MISMATCH"


@dataclass(frozen=True, eq=False)
class BallDescriptor:
    """x generic in the ball a*O + b, recorded through val(a) and b."""

    a_val: Fraction
    b: object = 0

    def __post_init__(self):
        g = gamma(self.a_val)
        if not is_finite(g):
            raise ValueError("a_val must be finite")
        object.__setattr__(self, "a_val", g)


@dataclass(frozen=True)
class Reject:
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True, eq=False)
class GammaType:
    curve: ShortWeierstrass
    gamma: Fraction

    def __post_init__(self):
        g = gamma(self.gamma)
        if not is_finite(g):
            raise ValueError("gamma must be finite")
        if g > gamma_infinity(self.curve):
            raise InvalidCurve(f"gamma={g} exceeds gamma_inf={gamma_infinity(self.curve)}")
        object.__setattr__(self, "gamma", g)

    def __eq__(self, other):
        if not isinstance(other, GammaType):
            return NotImplemented
        return self.gamma == other.gamma and _same_curve(self.curve, other.curve)

    __hash__ = None

    def __repr__(self):
        return f"p_{format_gamma(self.gamma)} on {self.curve!r}"


def _same_curve(c1, c2):
    return c1 is c2 or c1 == c2


def _half_min(values):
    finite = [v for v in values if v is not INFINITY]
    return min(finite) / 2 if finite else INFINITY


def eq2_value(curve: ShortWeierstrass, d: BallDescriptor):
    """val(d_y) for x = d generic in a*O + b, as forced by the curve equation."""
    ctx = curve.ctx
    a = d.a_val
    b = ctx.coerce(d.b)
    vb = ctx.val(b)
    A, B = curve.A, curve.B
    return _half_min([
        3 * a,
        2 * a + vb,
        a + ctx.val(3 * b * b + A),
        ctx.val(b * b * b + A * b + B),
    ])


def classify_idempotent(curve: ShortWeierstrass, d: BallDescriptor) -> Union[Fraction, Reject]:
    """gamma when the ball generic is the idempotent p_gamma, else Reject(reason)."""
    vb = curve.ctx.val(curve.ctx.coerce(d.b))
    if vb < d.a_val:
        return Reject(CENTER_TOO_LARGE)
    if d.a_val > gamma_infinity(curve):
        return Reject(GAMMA_EXCEEDS_MAX)
    if eq2_value(curve, d) != Fraction(3, 2) * d.a_val:
        return Reject(Y_VALUATION_MISMATCH)
    return d.a_val


def product_gamma(t1: GammaType, t2: GammaType) -> GammaType:
    if not _same_curve(t1.curve, t2.curve):
        raise CurveMismatch("product of types on different curves")
    return t1 if t1.gamma >= t2.gamma else t2


@dataclass
class ProductReport:
    gamma1: Fraction
    gamma2: Fraction
    num_val: Fraction
    den_val: Fraction
    expected_num: Fraction
    expected_den: Fraction
    generic: bool

    @property
    def passed(self) -> bool:
        return (self.generic and self.num_val == self.expected_num
                and self.den_val == self.expected_den)

    def as_dict(self):
        return {
            "gamma1": format_gamma(self.gamma1),
            "gamma2": format_gamma(self.gamma2),
            "num_val": format_gamma(self.num_val),
            "den_val": format_gamma(self.den_val),
            "expected_num": format_gamma(self.expected_num),
            "expected_den": format_gamma(self.expected_den),
            "generic": self.generic,
        }


def verify_product_symbolic(curve: ShortWeierstrass, g1, g2, raise_on_fail: bool = True) -> ProductReport:
    """x(f * d) for f |= p_g1, d |= p_g2 independent; check it is generic at max(g1, g2)."""
    g1, g2 = gamma(g1), gamma(g2)
    if g1 > g2:
        g1, g2 = g2, g1
    profile = GenericProfile(curve, (g1, g2))
    x = coordinate_ring(curve, 1).x(1)
    r = compose_group_law(x, ADD(1, 2), profile)
    nv = gauss_val(r.num, profile)
    dv = gauss_val(r.den, profile)
    if g1 < g2:
        en, ed = 2 * g1 + g2, 2 * g1
    else:
        en, ed = 3 * g1, 2 * g1
    rep = ProductReport(g1, g2, nv, dv, en, ed, is_ball_generic(r, g2, profile))
    if raise_on_fail and not rep.passed:
        raise Counterexample(rep)
    return rep


def _translate_pushforward(curve, g, P):
    profile = GenericProfile(curve, (g,))
    x = profile.x(1)
    return profile, compose_group_law(x, Translate(P), profile)


def stab_member(t: GammaType, P) -> bool:
    """P stabilizes p_gamma iff x(P * d) is ball-generic at gamma for d |= p_gamma."""
    if is_infinity(P):
        return True
    profile, r = _translate_pushforward(t.curve, t.gamma, P)
    return is_ball_generic(r, t.gamma, profile)


def fast_member(t: GammaType, P) -> bool:
    """Smooth reduction of P on the gamma-scaled curve."""
    return smooth_reduction_member(t.curve, t.gamma, P)


@dataclass
class ChainReport:
    gammas: list
    memberships: list = field(default_factory=list)  # one list of booleans per point
    violations: list = field(default_factory=list)    # (point index, gamma_lo, gamma_hi)

    @property
    def passed(self):
        return not self.violations


def chain_check(curve: ShortWeierstrass, gammas, points, oracle=stab_member,
                raise_on_fail: bool = True) -> ChainReport:
    """E_g(O) grows with g: once a point is a member it stays one."""
    gs = [gamma(g) for g in gammas]
    if gs != sorted(gs):
        raise ValueError("gamma list must be sorted")
    types = [GammaType(curve, g) for g in gs]
    rep = ChainReport(gs)
    for idx, P in enumerate(points):
        row = [oracle(t, P) for t in types]
        rep.memberships.append(row)
        for k in range(len(row) - 1):
            if row[k] and not row[k + 1]:
                rep.violations.append((idx, gs[k], gs[k + 1]))
    if raise_on_fail and rep.violations:
        raise Counterexample(rep)
    return rep


def gamma_grid(curve: ShortWeierstrass, fractions=(0, Fraction(1, 3), Fraction(1, 2), 1)):
    """{0, g_inf/3, g_inf/2, g_inf} (deduplicated, sorted)."""
    top = gamma_infinity(curve)
    out = []
    for f in fractions:
        g = Fraction(f) * top
        if g not in out:
            out.append(g)
    return sorted(out)


def idempotence_holds(f, g, curve) -> tuple:
    """(rat_val of f after the group law, gauss_val of f, x-pushforward generic)."""
    p1 = GenericProfile(curve, (g,))
    p2 = GenericProfile(curve, (g, g))
    r = compose_group_law(f, ADD(1, 2), p2)
    rx = compose_group_law(p1.x(1), ADD(1, 2), p2)
    return rat_val(r, p2), gauss_val(f, p1), is_ball_generic(rx, g, p2)
