"""Property tests: valuation axioms, Gauss multiplicativity, group-law identities."""
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from ellval.genring import GenericProfile, coordinate_ring, gauss_val
from ellval.valground import INFINITY, make_context
from ellval.weierstrass import POINT_AT_INFINITY, AffinePoint, ShortWeierstrass, add, is_infinity, multiply, neg

from oracles import padic_val

Q7 = make_context("padic", p=7)
QL = make_context("laurent", field="Q")
F5L = make_context("laurent", field="F5")

rationals = st.fractions(max_denominator=10**6).filter(lambda q: q != 0)


def series(ctx):
    term = st.tuples(st.integers(-9, 9).filter(bool), st.integers(-4, 6))
    return st.lists(term, min_size=1, max_size=5).map(
        lambda ts: sum((ctx.monomial(c, e) for c, e in ts), ctx.zero))


def _ultra(ctx, a, b):
    va, vb, vs = ctx.val(a), ctx.val(b), ctx.val(a + b)
    if vs is INFINITY:
        return True
    return vs >= min(v for v in (va, vb) if v is not INFINITY)


@settings(max_examples=300, deadline=None)
@given(rationals, rationals)
def test_padic_axioms(a, b):
    assert Q7.val(a * b) == Q7.val(a) + Q7.val(b)
    assert Q7.val(a) == padic_val(a, 7)
    assert _ultra(Q7, a, b)
    if Q7.val(a) != Q7.val(b):
        assert Q7.val(a + b) == min(Q7.val(a), Q7.val(b))


@settings(max_examples=200, deadline=None)
@given(series(QL), series(QL))
def test_laurent_axioms(a, b):
    if QL.val(a) is INFINITY or QL.val(b) is INFINITY:
        return
    assert QL.val(a * b) == QL.val(a) + QL.val(b)
    assert _ultra(QL, a, b)


@settings(max_examples=200, deadline=None)
@given(series(F5L), series(F5L))
def test_prime_field_laurent_ultrametric(a, b):
    assert _ultra(F5L, a, b)


CURVE = ShortWeierstrass(QL.parse("t^2"), QL.parse("t^3"), QL)
RING = coordinate_ring(CURVE, 2)


def canonical(ring):
    mono = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 1), st.integers(0, 1))
    coef = st.tuples(st.integers(-5, 5).filter(bool), st.integers(0, 3))
    terms = st.dictionaries(mono, coef, min_size=1, max_size=4)
    return terms.map(lambda d: ring.from_terms({m: QL.monomial(c, e) for m, (c, e) in d.items()}))


@settings(max_examples=150, deadline=None)
@given(canonical(RING), canonical(RING), st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1)]),
       st.sampled_from([Fraction(0), Fraction(1, 3), Fraction(1)]))
def test_gauss_valuation_multiplicative(f, g, g1, g2):
    pr = GenericProfile(CURVE, (g1, g2))
    assert gauss_val(f * g, pr) == gauss_val(f, pr) + gauss_val(g, pr)
    s = f + g
    if not s.is_zero():
        assert gauss_val(s, pr) >= min(gauss_val(f, pr), gauss_val(g, pr))


E17 = ShortWeierstrass(0, 17, Q7)
GENS = [AffinePoint.on(E17, -2, 3), AffinePoint.on(E17, -1, 4), AffinePoint.on(E17, 2, 5)]
small_points = st.lists(st.tuples(st.sampled_from(range(3)), st.integers(-2, 2)), min_size=1, max_size=2).map(
    lambda combo: _combine(combo))


def _combine(combo):
    P = POINT_AT_INFINITY
    for i, n in combo:
        P = add(E17, P, multiply(E17, n, GENS[i]))
    return P


def same(P, Q):
    if is_infinity(P) or is_infinity(Q):
        return is_infinity(P) and is_infinity(Q)
    return P == Q


@settings(max_examples=60, deadline=None)
@given(small_points, small_points, small_points)
def test_group_law_identities(P, Q, R):
    assert same(add(E17, P, Q), add(E17, Q, P))
    assert same(add(E17, add(E17, P, Q), R), add(E17, P, add(E17, Q, R)))
    assert add(E17, P, neg(E17, P)) is POINT_AT_INFINITY
    assert E17.is_on_curve(add(E17, P, Q))
