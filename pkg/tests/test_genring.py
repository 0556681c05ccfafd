from fractions import Fraction

import pytest

from ellval.errors import InvalidCurve, PrecisionExhausted
from ellval.genring import (
    Add,
    AddInv,
    CoordinateRing,
    GenericProfile,
    Translate,
    check_eq1,
    compose_group_law,
    coordinate_ring,
    eq1_rhs,
    gauss_val,
    is_ball_generic,
    normalize,
    proportional,
    rat_val,
    residue_at,
)
from ellval.valground import LaurentContext, make_context, parse_field
from ellval.weierstrass import AffinePoint, ShortWeierstrass, add, is_infinity, neg


@pytest.fixture
def L():
    return make_context("laurent", field="Q")


@pytest.fixture
def curve(L):
    return ShortWeierstrass(L.parse("t^2"), L.parse("t^3"), L)


def symbolic_ring():
    K = parse_field("Q(A,B)")
    ctx = LaurentContext(K)
    A, B = (ctx.coerce(K.symbols()[s]) for s in ("A", "B"))
    return CoordinateRing(ctx, [(0, 0, 0, A, B)] * 2)


def test_y_squared_reduces(curve):
    ring = coordinate_ring(curve, 2)
    x1, y1 = ring.x(1), ring.y(1)
    assert y1 * y1 == x1 ** 3 + x1.scale(curve.A) + ring.const(curve.B)
    assert normalize(ring, {((0, 0), (2, 0)): 1}) == y1 * y1


def test_ring_arithmetic_is_commutative(curve):
    ring = coordinate_ring(curve, 2)
    a = ring.x(1) * ring.y(2) + ring.y(1)
    b = ring.y(1) * ring.y(2) - ring.x(2).scale(curve.A)
    assert a * b == b * a
    assert (a + b) * (a - b) == a * a - b * b
    assert (a ** 3).degree() >= a.degree()


def test_chord_identity_exact():
    ring = symbolic_ring()
    assert check_eq1(ring) == []
    rhs = eq1_rhs(ring)
    # 1, x2, x1, x1 x2^2, y1 y2 and x1^2 x2
    assert len(rhs.terms) == 6


def test_chord_identity_catches_corruption():
    ring = symbolic_ring()
    bad = check_eq1(ring, eq1_rhs(ring) + ring.x(1))
    assert len(bad) == 1
    assert bad[0][0] == (1, 0, 0, 0)


def test_gauss_weights(curve, L):
    ring = coordinate_ring(curve, 2)
    pr = GenericProfile(curve, (1, 1))
    assert gauss_val(ring.x(1), pr) == 1
    assert gauss_val(ring.y(2), pr) == Fraction(3, 2)
    assert gauss_val(ring.x(1).scale(L.parse("t")) + ring.y(1), pr) == Fraction(3, 2)
    res = residue_at(ring.x(1) * ring.x(1) - ring.x(1).scale(L.parse("t")), pr, 2)
    assert res == residue_at(ring.x(1) * ring.x(1), pr, 2) - residue_at(ring.x(1).scale(L.parse("t")), pr, 2)


def test_profile_bounds(curve):
    with pytest.raises(InvalidCurve):
        GenericProfile(curve, (2,))
    # only the upper bound applies; negative gammas are balls larger than O
    pr = GenericProfile(curve, (-1,))
    assert gauss_val(pr.x(1), pr) == -1


def test_inexact_zero_raises():
    Lp = make_context("laurent", field="Q", precision=5)
    c = ShortWeierstrass(Lp.parse("t^2"), Lp.parse("t^3"), Lp)
    ring = coordinate_ring(c, 1)
    s = Lp.hensel_sqrt(Lp.parse("1+t"))
    z = s * s - Lp.parse("1+t")
    with pytest.raises(PrecisionExhausted):
        gauss_val(ring.x(1).scale(z), GenericProfile(c, (1,)))
    # a known unit term dominates the unknown tail
    assert gauss_val(ring.x(1).scale(z) + ring.one, GenericProfile(c, (1,))) == 0


def test_pullback_of_x_under_addition(curve):
    one = coordinate_ring(curve, 1)
    two = coordinate_ring(curve, 2)
    r = compose_group_law(one.x(1), Add(1, 2), two)
    pr = GenericProfile(curve, (1, 1))
    assert gauss_val(r.den, pr) == 2
    assert gauss_val(r.num, pr) == 3
    assert rat_val(r, pr) == 1
    assert is_ball_generic(r, 1, pr)
    mixed = GenericProfile(curve, (0, 1))
    assert rat_val(r, mixed) == 1
    assert is_ball_generic(r, 1, mixed)
    assert not is_ball_generic(r, 0, mixed)


def specialize(poly, pts, ctx):
    """Evaluate a canonical poly at concrete points (x_i, y_i)."""
    n = poly.ring.n
    total = ctx.zero
    for m, c in poly.terms.items():
        v = ctx.coerce(c)
        for i in range(n):
            v = v * ctx.coerce(pts[i].x) ** m[i] * ctx.coerce(pts[i].y) ** m[n + i]
        total = total + v
    return total


def test_pullbacks_specialize_to_point_arithmetic():
    ctx = make_context("padic", p=5)
    e = ShortWeierstrass(0, 17, ctx)
    P, Q = AffinePoint.on(e, -2, 3), AffinePoint.on(e, 2, 5)
    one, two = coordinate_ring(e, 1), coordinate_ring(e, 2)
    f = one.x(1) * one.y(1) + one.x(1).scale(3)

    def image(R):
        return specialize(f, [R], ctx)

    for mode, R in ((Add(1, 2), add(e, P, Q)), (AddInv(1, 2), add(e, P, neg(e, Q)))):
        r = compose_group_law(f, mode, two)
        assert specialize(r.num, [P, Q], ctx) / specialize(r.den, [P, Q], ctx) == image(R)
    r = compose_group_law(f, Translate(P), one)
    R = add(e, P, Q)
    assert not is_infinity(R)
    assert specialize(r.num, [Q], ctx) / specialize(r.den, [Q], ctx) == image(R)


def test_proportional(curve):
    ring = coordinate_ring(curve, 2)
    assert proportional(ring.x(1).scale(3), ring.x(1))
    assert not proportional(ring.x(1), ring.y(1))
