import random
from fractions import Fraction

import pytest

from ellval.errors import InvalidCurve, NotRepresentable, UnsupportedCharacteristic
from ellval.valground import make_context
from ellval.weierstrass import (
    POINT_AT_INFINITY,
    AffinePoint,
    GeneralWeierstrass,
    ShortWeierstrass,
    add,
    b_quantities,
    curve_from_record,
    curve_record,
    gamma_infinity,
    lift_x,
    multiply,
    neg,
    scale_short,
    scale_standard,
)

from oracles import general_delta, short_delta


def chord(A, P, Q):
    """Textbook affine addition on y^2 = x^3 + A x + B, points as tuples."""
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and y1 == -y2:
        return None
    lam = (3 * x1 * x1 + A) / (2 * y1) if x1 == x2 else (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


@pytest.fixture
def Q5():
    return make_context("padic", p=5)


@pytest.fixture
def e17(Q5):
    return ShortWeierstrass(0, 17, Q5)


def test_discriminant_short(Q5):
    assert ShortWeierstrass(0, 1, Q5).discriminant == -432
    c = ShortWeierstrass(Q5.parse("5^3"), Q5.parse("5^6"), Q5)
    assert c.discriminant == short_delta(125, 15625)


def test_discriminant_general(Q5):
    c = GeneralWeierstrass(1, 0, 1, -1, 0, Q5)
    b2, b4, b6, b8, delta = b_quantities(c)
    assert (b2, b4, b6, b8) == (1, -1, 1, 0)
    assert delta == general_delta(1, 0, 1, -1, 0) == -28


def test_small_known_sums(e17, Q5):
    P = AffinePoint.on(e17, -2, 3)
    Q = AffinePoint.on(e17, -1, 4)
    assert add(e17, P, Q) == AffinePoint(Fraction(4), Fraction(-9))
    assert multiply(e17, 2, P) == AffinePoint(Fraction(8), Fraction(-23))
    assert add(e17, P, neg(e17, P)) is POINT_AT_INFINITY
    assert add(e17, POINT_AT_INFINITY, P) == P


def test_group_law_matches_textbook_formula(e17):
    gens = [(Fraction(-2), Fraction(3)), (Fraction(-1), Fraction(4)), (Fraction(2), Fraction(5))]
    rng = random.Random(3)
    for _ in range(40):
        a, b = rng.sample(gens, 2)
        sa = (a[0], a[1] * rng.choice([1, -1]))
        ours = add(e17, AffinePoint(*sa), AffinePoint(*b))
        ref = chord(Fraction(0), sa, b)
        assert (ours is POINT_AT_INFINITY) == (ref is None)
        if ref is not None:
            assert (ours.x, ours.y) == ref
            assert e17.is_on_curve(ours)


def test_multiply_consistent(e17):
    P = AffinePoint.on(e17, 2, 5)
    assert multiply(e17, 0, P) is POINT_AT_INFINITY
    acc = P
    for n in range(1, 6):
        assert multiply(e17, n, P) == acc
        acc = add(e17, acc, P)
    assert multiply(e17, -3, P) == neg(e17, multiply(e17, 3, P))


def test_invalid_curves(Q5):
    with pytest.raises(InvalidCurve):
        ShortWeierstrass(0, 0, Q5)
    with pytest.raises(InvalidCurve):
        ShortWeierstrass(Fraction(1, 5), 1, Q5)
    with pytest.raises(UnsupportedCharacteristic):
        ShortWeierstrass(0, 1, make_context("padic", p=3))


def test_gamma_infinity(Q5):
    assert gamma_infinity(ShortWeierstrass(Q5.parse("5^3"), Q5.parse("5^6"), Q5)) == Fraction(3, 2)
    L = make_context("laurent", field="Q")
    assert gamma_infinity(ShortWeierstrass(L.parse("t^4"), L.zero, L)) == 2
    assert gamma_infinity(ShortWeierstrass(L.zero, L.parse("1+t"), L)) == 0


def test_scalings(Q5):
    c = ShortWeierstrass(625, 5 ** 6, Q5)
    s = scale_standard(c, 1)
    assert (s.A, s.B) == (1, 1)
    L = make_context("laurent", field="F5")
    d = ShortWeierstrass(L.parse("t^3"), L.parse("t^6"), L)
    h = scale_short(d, 1)
    assert L.format(h.A) == "t" and L.format(h.B) == "t^3"


def test_lift_x(e17, Q5):
    P = lift_x(e17, 2)
    assert P == AffinePoint(Fraction(2), Fraction(5))
    assert isinstance(P.y, Fraction)
    with pytest.raises(NotRepresentable):
        lift_x(e17, Fraction(1, 2))
    L = make_context("laurent", field="F5")
    d = ShortWeierstrass(L.parse("t^3"), L.parse("t^6"), L)
    R = lift_x(d, L.one)
    assert d.is_on_curve(R)
    assert L.residue(R.y) == 1


def test_curve_record_round_trip(Q5):
    c = ShortWeierstrass(0, 1, Q5)
    rec = curve_record(c)
    assert rec == {"backend": "padic", "p": 5, "N": 1, "A": "0", "B": "1"}
    assert curve_from_record(rec) == c
    L = make_context("laurent", field="F5")
    d = ShortWeierstrass(L.parse("t^3"), L.parse("t^6"), L)
    rec = curve_record(d)
    assert list(rec) == ["backend", "field", "t", "precision", "N", "A", "B"]
    assert curve_from_record(rec) == d
