from fractions import Fraction

import pytest

from ellval.errors import Counterexample, CurveMismatch, InvalidCurve
from ellval.gammafam import (
    BallDescriptor,
    GammaType,
    Reject,
    chain_check,
    classify_idempotent,
    eq2_value,
    fast_member,
    gamma_grid,
    product_gamma,
    stab_member,
    verify_product_symbolic,
)
from ellval.valground import make_context
from ellval.weierstrass import POINT_AT_INFINITY, AffinePoint, ShortWeierstrass, lift_x


@pytest.fixture
def L():
    return make_context("laurent", field="Q")


@pytest.fixture
def q5_curve():
    ctx = make_context("padic", p=5)
    return ShortWeierstrass(ctx.parse("5^3"), ctx.parse("5^6"), ctx)


def test_eq2_values(q5_curve, L):
    assert eq2_value(q5_curve, BallDescriptor(Fraction(3, 2), 0)) == Fraction(9, 4)
    good = ShortWeierstrass(L.parse("1"), L.parse("1"), L)
    assert eq2_value(good, BallDescriptor(0, 0)) == 0


def test_classify(q5_curve, L):
    assert classify_idempotent(q5_curve, BallDescriptor(Fraction(3, 2), 0)) == Fraction(3, 2)
    rej = classify_idempotent(q5_curve, BallDescriptor(2, 0))
    assert isinstance(rej, Reject) and rej.reason == "GAMMA_EXCEEDS_MAX"
    assert not rej
    c = ShortWeierstrass(L.parse("t^4"), L.zero, L)
    assert classify_idempotent(c, BallDescriptor(1, L.parse("t"))) == 1
    assert classify_idempotent(c, BallDescriptor(1, L.one)).reason == "CENTER_TOO_LARGE"
    # the family is indexed by every gamma up to gamma_inf, negative ones included
    assert classify_idempotent(c, BallDescriptor(-1, 0)) == -1


def test_classify_depends_only_on_a_val(L):
    c = ShortWeierstrass(L.parse("t^4"), L.parse("t^6"), L)
    for b in ("0", "t^2", "3*t^2+t^5", "t^7"):
        assert classify_idempotent(c, BallDescriptor(2, L.parse(b))) == 2


def test_product_gamma(q5_curve, L):
    one = GammaType(q5_curve, 1)
    top = GammaType(q5_curve, Fraction(3, 2))
    assert product_gamma(one, top).gamma == Fraction(3, 2)
    assert product_gamma(GammaType(q5_curve, 0), GammaType(q5_curve, 0)).gamma == 0
    other = ShortWeierstrass(L.one, L.one, L)
    with pytest.raises(CurveMismatch):
        product_gamma(one, GammaType(other, 0))
    with pytest.raises(InvalidCurve):
        GammaType(q5_curve, 2)


def test_product_symbolic_q5(q5_curve):
    rep = verify_product_symbolic(q5_curve, 1, Fraction(3, 2))
    assert rep.passed
    assert rep.den_val == 2 and rep.num_val == Fraction(7, 2)
    assert verify_product_symbolic(q5_curve, Fraction(3, 2), Fraction(3, 2)).passed


def test_membership_examples(L):
    c = ShortWeierstrass(L.parse("t^2"), L.zero, L)
    P = AffinePoint(L.zero, L.zero)
    t0 = GammaType(c, 0)
    assert stab_member(t0, POINT_AT_INFINITY) and fast_member(t0, POINT_AT_INFINITY)
    assert not stab_member(t0, P) and not fast_member(t0, P)
    t1 = GammaType(c, 1)
    assert stab_member(t1, P) and fast_member(t1, P)


def test_point_near_infinity_is_member(L):
    good = ShortWeierstrass(L.parse("1"), L.parse("1"), L)
    P = lift_x(good, L.parse("t^-2"))
    t = GammaType(good, 0)
    assert stab_member(t, P) and fast_member(t, P)


def test_chain_entering_point(L):
    c = ShortWeierstrass(L.parse("t^4"), L.zero, L)
    rep = chain_check(c, [0, 1, 2], [AffinePoint(L.zero, L.zero)])
    assert rep.memberships == [[False, False, True]]
    assert rep.passed


def test_chain_flags_violation(L):
    c = ShortWeierstrass(L.parse("t^4"), L.zero, L)

    def backwards(t, P):
        return t.gamma == 0

    with pytest.raises(Counterexample):
        chain_check(c, [0, 1, 2], [AffinePoint(L.zero, L.zero)], oracle=backwards)
    rep = chain_check(c, [0, 1, 2], [AffinePoint(L.zero, L.zero)], oracle=backwards, raise_on_fail=False)
    assert not rep.passed and rep.violations


def test_gamma_grid(L):
    c = ShortWeierstrass(L.parse("t^4"), L.zero, L)
    assert gamma_grid(c) == [0, Fraction(2, 3), 1, 2]
    good = ShortWeierstrass(L.one, L.one, L)
    assert gamma_grid(good) == [0]
