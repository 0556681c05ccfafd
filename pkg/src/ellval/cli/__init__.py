"""Command-line front end: ``ellval <command> --config job.cfg [flags]``.

Exit codes: 0 all cases pass, 1 some case fails, 2 usage or parse error,
3 precision exhausted (and nothing failed outright).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from ..errors import EllvalError, PrecisionExhausted
from ..gammafam import BallDescriptor, GammaType, Reject, classify_idempotent, fast_member, stab_member
from ..neron import analyze, minimalize
from ..valground import format_gamma
from ..weierstrass import ShortWeierstrass, curve_record, lift_x
from .config import ConfigError, JobConfig, load_config
from .suites import BUILDERS, SUITES, Options, Verdict

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--config", required=True, help="job configuration file")
    p.add_argument("--suite", help="comma-separated suites (verify)")
    p.add_argument("--gamma-grid", help="comma-separated gammas: q, q*ginf or ginf")
    p.add_argument("--degree", type=int, help="degree bound D for random polynomials")
    p.add_argument("--samples", type=int, help="samples per case")
    p.add_argument("--seed", type=int, help="seed for every random stream")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.add_argument("--format", choices=("human", "records"), default="human")
    p.add_argument("--workers", type=int, default=1, help="worker threads for suite cases")


def build_parser():
    parser = _Parser(prog="ellval", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, text in (
        ("analyze", "discriminant, gamma_inf, minimality and reductions per gamma"),
        ("verify", "run verification suites"),
        ("classify", "classify a closed-ball generic (a_val, b)"),
        ("member", "membership of a point in Stab(p_gamma)"),
        ("minimalize", "minimal model by u-rescaling"),
        ("lift", "lift an x-coordinate to a point"),
    ):
        _common(sub.add_parser(name, help=text))
    return parser


# ---------------------------------------------------------------- output
class Sink:
    """Single ordered writer for records and human lines."""

    def __init__(self, stream, fmt):
        self.stream = stream
        self.fmt = fmt

    def record(self, rec: dict, human: str):
        if self.fmt == "records":
            self.stream.write(json.dumps(rec, ensure_ascii=False) + "\n")
        else:
            self.stream.write(human + "\n")

    def text(self, line: str):
        if self.fmt == "human":
            self.stream.write(line + "\n")


def _human_verdict(v: Verdict):
    tag = {"pass": "PASS", "fail": "FAIL", "precision": "PREC"}[v.status]
    expected = "-" if v.expected is None else v.expected
    line = f"{tag}  {v.suite:<13} {v.case:<28} expected {expected}; observed {v.observed}"
    extra = {k: v.detail[k] for k in ("counterexample", "disagreement", "monomial", "error", "report")
             if k in v.detail}
    if extra:
        line += "  " + json.dumps(extra, ensure_ascii=False)
    return line


def _exit_for(verdicts):
    if any(v.status == "fail" for v in verdicts):
        return EXIT_FAIL
    if any(v.status == "precision" for v in verdicts):
        return EXIT_PRECISION
    return EXIT_OK


def _options(cfg: JobConfig, args) -> Options:
    return Options(
        grid=args.gamma_grid,
        degree=args.degree if args.degree is not None else cfg.integer("degree", 4),
        samples=args.samples if args.samples is not None else cfg.integer("samples", 50),
        seed=args.seed if args.seed is not None else cfg.integer("seed", 0),
        mutation=cfg.raw("eq1_mutation"),
    )


def _need_curve(cfg, short=True):
    if not cfg.curves:
        raise ConfigError("no curve defined (set A, B or a1..a6)", 0, 0, cfg.path)
    spec = cfg.curves[0]
    if short and not isinstance(spec.curve, ShortWeierstrass):
        raise ConfigError(f"curve {spec.curve_id!r} must be in short form for this command", 0, 0, cfg.path)
    return spec


# --------------------------------------------------------------- commands
def cmd_analyze(cfg, args, sink):
    status = EXIT_OK
    for spec in cfg.curves:
        if not isinstance(spec.curve, ShortWeierstrass):
            raise ConfigError(f"analyze needs short-form curves ({spec.curve_id})", 0, 0, cfg.path)
        grid = cfg.gamma_grid(spec.curve, args.gamma_grid) if (args.gamma_grid or cfg.has("gamma_grid")) else None
        a = analyze(spec.curve, grid, spec.curve_id)
        sink.text(f"curve {spec.curve_id}: {json.dumps(curve_record(spec.curve), ensure_ascii=False)}")
        sink.text(f"  discriminant     {a.delta}")
        sink.text(f"  val(discriminant) {format_gamma(a.delta_val)}")
        sink.text(f"  gamma_inf        {format_gamma(a.gamma_max)}")
        sink.text(f"  minimal          {str(a.minimal).lower()} (m={a.m})")
        sink.text(f"  good reduction   {str(a.good).lower()}")
        sink.text(f"  {'gamma':<8} {'reduction':<40} singular point")
        for row, rc in zip(a.rows, a.reductions):
            sing = "none" if row.singular_x is None else f"({row.singular_x}, {row.singular_y})"
            red = f"Y^2 = X^3 + ({rc.field.format(rc.A)})X + ({rc.field.format(rc.B)})"
            sink.text(f"  {row.gamma:<8} {red:<40} {sing}")
            if sink.fmt == "records":
                sink.record(row.as_dict(), "")
    return status


def _single(sink, v: Verdict):
    sink.record(v.record(), _human_verdict(v))
    return _exit_for([v])


def _expect(cfg, observed):
    exp = cfg.raw("expect")
    return exp, (exp is None or exp == observed)


def cmd_classify(cfg, args, sink):
    spec = _need_curve(cfg)
    if not cfg.has("a_val"):
        raise ConfigError("classify needs a_val", 0, 0, cfg.path)
    a_val = cfg.fraction("a_val")
    b = cfg.literal("b", spec.curve.ctx) if cfg.has("b") else 0
    res = classify_idempotent(spec.curve, BallDescriptor(a_val, b))
    observed = f"REJECT({res.reason})" if isinstance(res, Reject) else f"gamma={format_gamma(res)}"
    exp, ok = _expect(cfg, observed)
    case = f"{spec.curve_id}/a_val={format_gamma(a_val)},b={cfg.raw('b', '0')}"
    return _single(sink, Verdict("classify", case, exp, observed, ok))


def cmd_member(cfg, args, sink):
    spec = _need_curve(cfg)
    if not cfg.has("point"):
        raise ConfigError("member needs point", 0, 0, cfg.path)
    g = cfg.fraction("gamma", 0)
    P = cfg.point("point", spec)
    oracle = cfg.raw("oracle", "both")
    if oracle not in ("stab", "fast", "both"):
        raise cfg.error("oracle", "oracle must be stab, fast or both")
    t = GammaType(spec.curve, g)
    detail = {}
    if oracle in ("stab", "both"):
        detail["stab"] = stab_member(t, P)
    if oracle in ("fast", "both"):
        detail["fast"] = fast_member(t, P)
    vals = set(detail.values())
    observed = str(vals.pop()).lower() if len(vals) == 1 else "disagree"
    exp, ok = _expect(cfg, observed)
    ok = ok and observed != "disagree"
    case = f"{spec.curve_id}/gamma={format_gamma(g)}/{cfg.raw('point')}"
    return _single(sink, Verdict("member", case, exp, observed, ok, detail=detail))


def cmd_minimalize(cfg, args, sink):
    spec = _need_curve(cfg)
    c2, m = minimalize(spec.curve)
    rec = curve_record(c2)
    observed = f"m={m}"
    exp, ok = _expect(cfg, observed)
    return _single(sink, Verdict("minimalize", spec.curve_id, exp, observed, ok,
                                 detail={"A": rec["A"], "B": rec["B"],
                                         "delta_val": format_gamma(c2.ctx.val(c2.discriminant))}))


def cmd_lift(cfg, args, sink):
    spec = _need_curve(cfg)
    if not cfg.has("x0"):
        raise ConfigError("lift needs x0", 0, 0, cfg.path)
    ctx = spec.curve.ctx
    P = lift_x(spec.curve, cfg.literal("x0", ctx))
    observed = f"({ctx.format(P.x)}, {ctx.format(P.y)})"
    exp, ok = _expect(cfg, observed)
    return _single(sink, Verdict("lift", f"{spec.curve_id}/x0={cfg.raw('x0')}", exp, observed,
                                 ok and spec.curve.is_on_curve(P)))


def cmd_verify(cfg, args, sink):
    names = args.suite.split(",") if args.suite else cfg.names("suites")
    names = [n.strip() for n in names if n.strip()]
    if not names:
        raise UsageError("verify needs at least one suite (--suite or suites = ...)")
    for n in names:
        if n not in SUITES:
            raise UsageError(f"unknown suite {n!r}; choose from {', '.join(SUITES)}")
    if any(n != "eq1" for n in names) and not cfg.curves:
        raise ConfigError("these suites need at least one curve", 0, 0, cfg.path)
    opt = _options(cfg, args)
    cases = [case for n in names for case in BUILDERS[n](cfg, opt)]
    workers = max(1, args.workers or cfg.integer("workers", 1))
    verdicts = []
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map yields in submission order: the sink sees cases in a fixed order
        for v in pool.map(lambda fn: fn(), cases):
            verdicts.append(v)
            sink.record(v.record(), _human_verdict(v))
    passed = sum(v.passed for v in verdicts)
    sink.text(f"{passed}/{len(verdicts)} cases passed")
    return _exit_for(verdicts)


COMMANDS = {
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "member": cmd_member,
    "minimalize": cmd_minimalize,
    "lift": cmd_lift,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("missing command; choose one of " + ", ".join(COMMANDS))
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        cfg = load_config(text, args.config)
        out = open(args.output, "w", encoding="utf-8") if args.output else stdout
        try:
            return COMMANDS[args.command](cfg, args, Sink(out, args.format))
        finally:
            if args.output:
                out.close()
    except UsageError as exc:
        stderr.write(f"ellval: usage error: {exc}\n")
        return EXIT_USAGE
    except ConfigError as exc:
        stderr.write(f"ellval: {exc}\n")
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        stderr.write(f"ellval: precision exhausted: {exc}\n")
        return EXIT_PRECISION
    except EllvalError as exc:
        stderr.write(f"ellval: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


__all__ = ["main", "build_parser", "COMMANDS"]
