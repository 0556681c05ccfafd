"""Seeded generators for test inputs: coefficients, canonical polys, points."""
from __future__ import annotations

import random
from fractions import Fraction

from .errors import NotASquare, NotRepresentable, OddValuation, PrecisionExhausted
from .weierstrass import POINT_AT_INFINITY, AffinePoint, add, lift_x, multiply, neg


def rng_for(seed, *salt) -> random.Random:
    """Independent stream per (seed, salt) so parallel cases stay reproducible."""
    return random.Random(repr((seed,) + salt))


def random_coefficient(ctx, rng, max_j: int = 3):
    """pi^j * u with j uniform on 0..max_j and u a random unit."""
    j = rng.randint(0, max_j)
    return ctx.pi_power(Fraction(j, ctx.N)) * ctx.random_unit(rng)


def random_canonical_poly(ring, rng, degree: int = 4, max_terms: int = 4, max_j: int = 3):
    """A nonzero canonical poly of total degree <= ``degree`` (x_i, y_i count 1)."""
    n = ring.n
    monos = []

    def rec(i, left, e, f):
        if i == n:
            monos.append(tuple(e) + tuple(f))
            return
        for fi in (0, 1):
            for ei in range(0, left - fi + 1):
                rec(i + 1, left - fi - ei, e + [ei], f + [fi])

    rec(0, degree, [], [])
    monos.sort()
    k = rng.randint(1, max_terms)
    chosen = rng.sample(monos, min(k, len(monos)))
    return ring.from_terms({m: random_coefficient(ring.domain, rng, max_j) for m in chosen})


def random_x(ctx, rng, low: int = -2, high: int = 3):
    """x = pi^j u (+ a higher-order tail), j uniform on low..high."""
    j = rng.randint(low, high)
    x = ctx.pi_power(Fraction(j, ctx.N)) * ctx.random_unit(rng)
    if rng.random() < 0.3:
        x = x + ctx.pi_power(Fraction(j + 1, ctx.N)) * ctx.random_unit(rng)
    return x


def random_point(curve, rng, tries: int = 60, low: int = -2, high: int = 3, x_sampler=None):
    """A random K-point via lift_x; None if every try misses a square."""
    ctx = curve.ctx
    for _ in range(tries):
        x = x_sampler(rng) if x_sampler else random_x(ctx, rng, low, high)
        try:
            P = lift_x(curve, x)
        except (NotASquare, OddValuation, NotRepresentable, PrecisionExhausted):
            continue
        if rng.random() < 0.5:
            P = neg(curve, P)
        return P
    return None


def points_from_generators(curve, gens, rng, count: int, span: int = 2):
    """Small combinations of known points (for backends where lifting rarely succeeds)."""
    out = []
    while len(out) < count:
        P = POINT_AT_INFINITY
        for G in gens:
            P = add(curve, P, multiply(curve, rng.randint(-span, span), G))
        out.append(P)
    return out
