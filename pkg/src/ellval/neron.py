"""Reduction of scaled curves and points, smooth-locus membership, minimal models.

Everything here works from valuations and shifted residues, so a point can be
reduced on the gamma-scaled curve without ever forming pi^gamma itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .errors import (
    NotASquare,
    NotIntegral,
    NotIntegralAfterScaling,
    NotOnCurve,
    NotRepresentable,
    OddValuation,
    PrecisionExhausted,
)
from .valground import INFINITY, format_gamma, gamma
from .weierstrass import (
    POINT_AT_INFINITY,
    AffinePoint,
    ShortWeierstrass,
    gamma_infinity,
    is_infinity,
    lift_x,
    scale_standard,
)


@dataclass(frozen=True, eq=False)
class ResidueCurve:
    """Y^2 = X^3 + A X + B over the residue field; possibly singular."""

    A: object
    B: object
    field: object

    def __eq__(self, other):
        if not isinstance(other, ResidueCurve):
            return NotImplemented
        return self.field == other.field and self.A == other.A and self.B == other.B

    __hash__ = None

    def __repr__(self):
        f = self.field.format
        return f"ResidueCurve(Y^2 = X^3 + ({f(self.A)})X + ({f(self.B)}))"

    @property
    def discriminant(self):
        A, B = self.A, self.B
        return -16 * (4 * A * A * A + 27 * B * B)

    @property
    def is_singular(self) -> bool:
        return self.field.is_exact_zero(self.field.coerce(self.discriminant))

    def contains(self, P) -> bool:
        if is_infinity(P):
            return True
        X, Y = P
        return Y * Y == X * X * X + self.A * X + self.B

    def neg(self, P):
        if is_infinity(P):
            return P
        return AffinePoint(P.x, -P.y)

    def add(self, P, Q):
        """Chord-tangent sum of smooth points.

        Returns None when the chord (or tangent) meets the singular point,
        where the law on the smooth locus is not given by this formula.
        """
        if is_infinity(P):
            return Q
        if is_infinity(Q):
            return P
        S = singular_locus(self)
        if S is not None and (P == S or Q == S):
            return None
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if y1 + y2 == 0:
                return POINT_AT_INFINITY
            lam = (3 * x1 * x1 + self.A) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam - x1 - x2
        R = AffinePoint(x3, -(lam * x3 + nu))
        if S is not None:
            # the third intersection is -R; a chord through S never reaches it
            if AffinePoint(x3, lam * x3 + nu) == S:
                return None
            if S.y == lam * S.x + nu:
                return None
        return R


def reduce_curve(curve: ShortWeierstrass, g) -> ResidueCurve:
    """Residues of A / pi^(2g) and B / pi^(3g)."""
    g = gamma(g)
    ctx = curve.ctx
    if g > gamma_infinity(curve):
        raise NotIntegralAfterScaling(f"gamma={g} exceeds gamma_inf={gamma_infinity(curve)}")
    k = ctx.residue_field
    return ResidueCurve(
        k.coerce(ctx.residue_shifted(curve.A, 2 * g)),
        k.coerce(ctx.residue_shifted(curve.B, 3 * g)),
        k,
    )


def singular_locus(rc: ResidueCurve):
    """The singular point (X0, 0) of a singular residue cubic, else None."""
    if not rc.is_singular:
        return None
    k = rc.field
    if k.is_exact_zero(k.coerce(rc.A)):
        return AffinePoint(k.zero, k.zero)
    # double root of X^3 + A X + B when 4A^3 = -27B^2
    return AffinePoint(k.coerce(-3 * rc.B / (2 * rc.A)), k.zero)


def reduce_point(curve: ShortWeierstrass, g, P):
    """Reduction of P on the g-scaled curve: (x/pi^g, y/pi^(3g/2)) mod m."""
    if is_infinity(P):
        return POINT_AT_INFINITY
    g = gamma(g)
    ctx = curve.ctx
    k = ctx.residue_field
    x, y = ctx.coerce(P.x), ctx.coerce(P.y)
    vx = ctx.val(x)
    vy = ctx.val(y)
    sx = vx - g if vx is not INFINITY else INFINITY
    sy = vy - Fraction(3, 2) * g if vy is not INFINITY else INFINITY
    if sx >= 0 and sy >= 0:
        return AffinePoint(
            k.coerce(ctx.residue_shifted(x, g)),
            k.coerce(ctx.residue_shifted(y, Fraction(3, 2) * g)),
        )
    if sx is not INFINITY and sx < 0 and sy == Fraction(3, 2) * sx:
        # (x : y : 1) scaled by pi^(-sy) lands on (0 : 1 : 0)
        return POINT_AT_INFINITY
    raise NotOnCurve(
        f"valuations ({format_gamma(vx)}, {format_gamma(vy)}) do not fit the curve at gamma={g}"
    )


def smooth_reduction_member(curve: ShortWeierstrass, g, P) -> bool:
    """True iff P reduces to a smooth point of the g-scaled special fibre."""
    if is_infinity(P):
        return True
    S = singular_locus(reduce_curve(curve, g))
    if S is None:
        return True
    R = reduce_point(curve, g, P)
    return is_infinity(R) or R != S


def good_reduction(curve) -> bool:
    return curve.ctx.val(curve.discriminant) == 0


def _floor_or_inf(v, d, N):
    if v is INFINITY:
        return None
    return floor(v * N / d)


def minimalize(curve: ShortWeierstrass):
    """(scale_standard(curve, m), m) for the largest integral u = pi^m.

    For ramified Laurent contexts m counts steps of the uniformizer t^(1/N).
    """
    ctx = curve.ctx
    bounds = [b for b in (_floor_or_inf(ctx.val(curve.A), 4, ctx.N),
                          _floor_or_inf(ctx.val(curve.B), 6, ctx.N)) if b is not None]
    m = max(0, min(bounds))
    return scale_standard(curve, m), m


def is_minimal(curve: ShortWeierstrass) -> bool:
    return minimalize(curve)[1] == 0


def _witness_candidates(curve: ShortWeierstrass, budget: int, max_k: int):
    ctx = curve.ctx
    rc = reduce_curve(curve, 0)
    S = singular_locus(rc)
    seen = []

    def fresh(x):
        for s in seen:
            if s == x:
                return False
        seen.append(x)
        return True

    base = ctx.lift_residue(S.x) if S is not None else ctx.zero
    out = []
    if fresh(base):
        out.append(base)
    coeffs = [1, -1, 2, -2, 3, -3]
    for k in range(1, max_k + 1):
        pk = ctx.pi_power(Fraction(k, ctx.N))
        for c in coeffs:
            x = base + c * pk
            if fresh(x):
                out.append(x)
    # small-coordinate sweep: n * pi^k; over a finite residue field the
    # constants repeat quickly, so the sweep is bounded rather than open-ended
    for n in range(1, budget + 1):
        for k in range(0, max_k + 1):
            if len(out) >= budget:
                return out
            pk = ctx.pi_power(Fraction(k, ctx.N))
            for x in (n * pk, -n * pk):
                if fresh(x):
                    out.append(x)
    return out[:budget]


def bad_reduction_witness(curve: ShortWeierstrass, budget: int = 200, max_k: int = 6):
    """A K-point reducing to the singular point, or None (NOT_FOUND)."""
    if good_reduction(curve):
        raise ValueError("bad_reduction_witness needs val(discriminant) > 0")
    for x in _witness_candidates(curve, budget, max_k):
        try:
            P = lift_x(curve, x)
        except (NotASquare, OddValuation, NotRepresentable, PrecisionExhausted):
            continue
        try:
            if not smooth_reduction_member(curve, 0, P):
                return P
        except (NotOnCurve, NotIntegral, PrecisionExhausted):
            continue
    return None


@dataclass
class AnalysisRow:
    curve_id: str
    gamma: str
    delta_val: str
    gamma_max: str
    minimal: bool
    singular_x: str | None
    singular_y: str | None
    good_reduction: bool

    FIELDS = ("curve_id", "gamma", "delta_val", "gamma_max", "minimal",
              "singular_x", "singular_y", "good_reduction")

    def as_dict(self):
        return {k: getattr(self, k) for k in self.FIELDS}


@dataclass
class Analysis:
    curve_id: str
    delta: str
    delta_val: Fraction
    gamma_max: Fraction
    minimal: bool
    m: int
    good: bool
    rows: list = field(default_factory=list)
    reductions: list = field(default_factory=list)


def default_grid(curve: ShortWeierstrass):
    top = gamma_infinity(curve)
    grid = []
    for g in (Fraction(0), top / 3, top / 2, top):
        if g not in grid:
            grid.append(g)
    return sorted(grid)


def analyze(curve: ShortWeierstrass, gammas=None, curve_id: str = "curve") -> Analysis:
    ctx = curve.ctx
    delta = curve.discriminant
    dval = ctx.val(delta)
    top = gamma_infinity(curve)
    _, m = minimalize(curve)
    good = good_reduction(curve)
    grid = sorted(gamma(g) for g in gammas) if gammas is not None else default_grid(curve)
    a = Analysis(curve_id, ctx.format(delta), dval, top, m == 0, m, good)
    k = ctx.residue_field
    for g in grid:
        rc = reduce_curve(curve, g)
        S = singular_locus(rc)
        a.reductions.append(rc)
        a.rows.append(AnalysisRow(
            curve_id,
            format_gamma(g),
            format_gamma(dval),
            format_gamma(top),
            m == 0,
            None if S is None else k.format(S.x),
            None if S is None else k.format(S.y),
            good,
        ))
    return a
