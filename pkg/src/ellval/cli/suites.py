"""Verification suites run by ``ellval verify``.

Each suite expands into an ordered list of cases; a case is a zero-argument
callable returning a :class:`Verdict`.  Cases draw their randomness from a
stream keyed on (seed, suite, case), so results do not depend on the order in
which a worker pool happens to finish them.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import Counterexample, PrecisionExhausted
from ..gammafam import (
    GammaType,
    chain_check,
    fast_member,
    idempotence_holds,
    stab_member,
    verify_product_symbolic,
)
from ..genring import CoordinateRing, check_eq1, coordinate_ring, eq1_rhs
from ..neron import (
    bad_reduction_witness,
    good_reduction,
    reduce_curve,
    reduce_point,
    smooth_reduction_member,
)
from ..sampling import points_from_generators, random_canonical_poly, random_point, rng_for
from ..valground import LaurentContext, format_gamma, parse_field
from ..weierstrass import (
    POINT_AT_INFINITY,
    ShortWeierstrass,
    add,
    is_infinity,
    neg,
)

SUITES = ("eq1", "idempotent", "product", "membership", "homomorphism", "chain", "grouplaw")


@dataclass
class Verdict:
    suite: str
    case: str
    expected: str
    observed: str
    passed: bool
    status: str = ""  # pass | fail | precision
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.status:
            self.status = "pass" if self.passed else "fail"

    def record(self):
        return {
            "suite": self.suite,
            "case": self.case,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
            "status": self.status,
            "detail": self.detail,
        }


@dataclass
class Options:
    grid: str | None = None
    degree: int = 4
    samples: int = 50
    seed: int = 0
    mutation: str | None = None


def guarded(suite, case, fn):
    def run():
        try:
            return fn()
        except PrecisionExhausted as exc:
            return Verdict(suite, case, "certified answer", "precision exhausted", False,
                           "precision", {"error": str(exc)})
        except Counterexample as exc:
            return Verdict(suite, case, "no counterexample", "counterexample", False,
                           "fail", {"report": repr(exc.report)})
    return run


# ------------------------------------------------------------------ helpers
def _fmt_point(ctx, P):
    if is_infinity(P):
        return "infinity"
    return f"({ctx.format(P.x)}, {ctx.format(P.y)})"


def sample_points(spec, rng, count):
    """Random points: Hensel lifts where they exist, plus combinations of generators."""
    c = spec.curve
    pts = []
    if spec.generators:
        pts.extend(points_from_generators(c, spec.generators, rng, count))
    if isinstance(c.ctx, LaurentContext):
        attempts = 0
        while len(pts) < count and attempts < 4 * count:
            attempts += 1
            P = random_point(c, rng)
            if P is not None:
                pts.append(P)
    return pts[:count]


def _short_curves(cfg):
    return [s for s in cfg.curves if isinstance(s.curve, ShortWeierstrass)]


def parse_monomial(text, n=2):
    """``x1^2*y2`` -> flat exponent tuple for an n-pair ring."""
    e = [0] * n
    f = [0] * n
    text = text.replace(" ", "")
    if text in ("", "1"):
        return tuple(e + f)
    for part in text.split("*"):
        name, _, power = part.partition("^")
        if len(name) < 2 or name[0] not in "xy" or not name[1:].isdigit():
            raise ValueError(f"bad monomial factor {part!r}")
        i = int(name[1:]) - 1
        if not 0 <= i < n:
            raise ValueError(f"variable {name} out of range")
        k = int(power) if power else 1
        if name[0] == "x":
            e[i] += k
        else:
            f[i] += k
    if any(v > 1 for v in f):
        raise ValueError("y-exponents must be 0 or 1 in a canonical monomial")
    return tuple(e + f)


# ------------------------------------------------------------------- suites
def eq1_cases(cfg, opt):
    def run():
        K = parse_field("Q(A,B)")
        L = LaurentContext(K)
        A, B = (L.coerce(K.symbols()[s]) for s in ("A", "B"))
        ring = CoordinateRing(L, [(0, 0, 0, A, B)] * 2)
        rhs = eq1_rhs(ring)
        if opt.mutation:
            m = parse_monomial(opt.mutation)
            rhs = rhs + ring.from_terms({m: 1})
        bad = check_eq1(ring, rhs)
        if not bad:
            return Verdict("eq1", "Q(A,B)", "identity", "identity", True,
                           detail={"terms": len(rhs.terms)})
        m, got, want = bad[0]
        where = _mono_name(m) if isinstance(m, tuple) else str(m)
        return Verdict("eq1", "Q(A,B)", "identity", f"mismatch at {where}", False, detail={
            "monomial": where, "computed": L.format(got), "expected": L.format(want),
            "mismatches": len(bad)})
    return [guarded("eq1", "Q(A,B)", run)]


def _mono_name(m, n=2):
    parts = []
    for i in range(n):
        if m[i]:
            parts.append(f"x{i + 1}" + (f"^{m[i]}" if m[i] > 1 else ""))
        if m[n + i]:
            parts.append(f"y{i + 1}")
    return "*".join(parts) or "1"


def idempotent_cases(cfg, opt):
    cases = []
    for spec in _short_curves(cfg):
        for g in cfg.gamma_grid(spec.curve, opt.grid):
            case = f"{spec.curve_id}/gamma={format_gamma(g)}"

            def run(spec=spec, g=g, case=case):
                rng = rng_for(opt.seed, "idempotent", case)
                ring = coordinate_ring(spec.curve, 1)
                ok = 0
                first = None
                for _ in range(opt.samples):
                    f = random_canonical_poly(ring, rng, degree=opt.degree)
                    rv, gv, gen = idempotence_holds(f, g, spec.curve)
                    if rv == gv and gen:
                        ok += 1
                    elif first is None:
                        first = {"f": repr(f), "rat_val": format_gamma(rv),
                                 "gauss_val": format_gamma(gv), "generic": gen}
                detail = {"degree": opt.degree}
                if first:
                    detail["counterexample"] = first
                return Verdict("idempotent", case, f"{opt.samples}/{opt.samples}",
                               f"{ok}/{opt.samples}", ok == opt.samples, detail=detail)
            cases.append(guarded("idempotent", case, run))
    return cases


def product_cases(cfg, opt):
    cases = []
    for spec in _short_curves(cfg):
        grid = cfg.gamma_grid(spec.curve, opt.grid)
        for i, g1 in enumerate(grid):
            for g2 in grid[i:]:
                case = f"{spec.curve_id}/({format_gamma(g1)},{format_gamma(g2)})"

                def run(spec=spec, g1=g1, g2=g2, case=case):
                    rep = verify_product_symbolic(spec.curve, g1, g2, raise_on_fail=False)
                    exp = f"num={format_gamma(rep.expected_num)},den={format_gamma(rep.expected_den)},generic"
                    obs = f"num={format_gamma(rep.num_val)},den={format_gamma(rep.den_val)}" + (
                        ",generic" if rep.generic else ",not-generic")
                    return Verdict("product", case, exp, obs, rep.passed, detail=rep.as_dict())
                cases.append(guarded("product", case, run))
    return cases


def membership_cases(cfg, opt):
    cases = []
    for spec in _short_curves(cfg):
        for g in cfg.gamma_grid(spec.curve, opt.grid):
            case = f"{spec.curve_id}/gamma={format_gamma(g)}"

            def run(spec=spec, g=g, case=case):
                rng = rng_for(opt.seed, "membership", case)
                t = GammaType(spec.curve, g)
                pts = sample_points(spec, rng, opt.samples)
                agree = members = 0
                bad = None
                for P in pts:
                    a, b = stab_member(t, P), fast_member(t, P)
                    members += a
                    if a == b:
                        agree += 1
                    elif bad is None:
                        bad = {"point": _fmt_point(spec.curve.ctx, P), "stab": a, "fast": b}
                detail = {"members": members, "points": len(pts)}
                if bad:
                    detail["disagreement"] = bad
                ok = agree == len(pts) and len(pts) > 0
                return Verdict("membership", case, f"{len(pts)}/{len(pts)} agree",
                               f"{agree}/{len(pts)} agree", ok, detail=detail)
            cases.append(guarded("membership", case, run))
    return cases


def homomorphism_cases(cfg, opt):
    cases = []
    for spec in _short_curves(cfg):
        for g in cfg.gamma_grid(spec.curve, opt.grid):
            case = f"{spec.curve_id}/gamma={format_gamma(g)}"

            def run(spec=spec, g=g, case=case):
                rng = rng_for(opt.seed, "homomorphism", case)
                c = spec.curve
                rc = reduce_curve(c, g)
                pts = [P for P in sample_points(spec, rng, 2 * opt.samples)
                       if smooth_reduction_member(c, g, P)]
                ok = skipped = tested = 0
                bad = None
                for k in range(0, len(pts) - 1, 2):
                    P, Q = pts[k], pts[k + 1]
                    rs = rc.add(reduce_point(c, g, P), reduce_point(c, g, Q))
                    if rs is None:
                        skipped += 1
                        continue
                    tested += 1
                    R = add(c, P, Q)
                    if _pt_eq(reduce_point(c, g, R), rs):
                        ok += 1
                    elif bad is None:
                        bad = {"P": _fmt_point(c.ctx, P), "Q": _fmt_point(c.ctx, Q)}
                detail = {"pairs": tested, "skipped": skipped}
                if bad:
                    detail["counterexample"] = bad
                return Verdict("homomorphism", case, f"{tested}/{tested}", f"{ok}/{tested}",
                               ok == tested and tested > 0, detail=detail)
            cases.append(guarded("homomorphism", case, run))
    return cases


def chain_cases(cfg, opt):
    cases = []
    for spec in _short_curves(cfg):
        case = spec.curve_id

        def run(spec=spec, case=case):
            rng = rng_for(opt.seed, "chain", case)
            c = spec.curve
            grid = cfg.gamma_grid(c, opt.grid)
            pts = sample_points(spec, rng, opt.samples)
            if not good_reduction(c):
                w = bad_reduction_witness(c)
                if w is not None:
                    pts.append(w)
            rep = chain_check(c, grid, pts, raise_on_fail=False)
            entering = sum(1 for row in rep.memberships if any(row) and not all(row))
            return Verdict("chain", case, "monotone", "monotone" if rep.passed else "violated",
                           rep.passed and len(pts) > 0,
                           detail={"points": len(pts), "grid": [format_gamma(g) for g in grid],
                                   "entering": entering,
                                   "violations": [[i, format_gamma(a), format_gamma(b)]
                                                  for i, a, b in rep.violations]})
        cases.append(guarded("chain", case, run))
    return cases


def grouplaw_cases(cfg, opt):
    cases = []
    for spec in cfg.curves:
        case = spec.curve_id

        def run(spec=spec, case=case):
            rng = rng_for(opt.seed, "grouplaw", case)
            c = spec.curve
            if isinstance(c, ShortWeierstrass):
                pts = sample_points(spec, rng, 3 * opt.samples)
            else:
                pts = points_from_generators(c, spec.generators, rng, 3 * opt.samples) if spec.generators else []
            triples = [pts[k:k + 3] for k in range(0, len(pts) - 2, 3)]
            failures = []
            bad_triples = 0
            for P, Q, R in triples:
                checks = {
                    "associative": _pt_eq(add(c, add(c, P, Q), R), add(c, P, add(c, Q, R))),
                    "commutative": _pt_eq(add(c, P, Q), add(c, Q, P)),
                    "inverse": add(c, P, neg(c, P)) is POINT_AT_INFINITY,
                    "closure": c.is_on_curve(add(c, P, Q)),
                }
                broken = [name for name, ok in checks.items() if not ok]
                failures.extend(broken)
                bad_triples += bool(broken)
            n = len(triples)
            return Verdict("grouplaw", case, f"{n}/{n}", f"{n - bad_triples}/{n}",
                           not failures and n > 0, detail={"triples": n, "failed_axioms": sorted(set(failures))})
        cases.append(guarded("grouplaw", case, run))
    return cases


def _pt_eq(P, Q):
    if is_infinity(P) or is_infinity(Q):
        return P is Q
    return P == Q


BUILDERS = {
    "eq1": eq1_cases,
    "idempotent": idempotent_cases,
    "product": product_cases,
    "membership": membership_cases,
    "homomorphism": homomorphism_cases,
    "chain": chain_cases,
    "grouplaw": grouplaw_cases,
}
