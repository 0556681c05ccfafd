"""Flat ``key = value`` job configuration (grammar in docs/grammar.md)."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import EllvalError, LiteralError
from ..valground import make_context
from ..weierstrass import (
    POINT_AT_INFINITY,
    AffinePoint,
    GeneralWeierstrass,
    ShortWeierstrass,
    gamma_infinity,
)

CONTEXT_KEYS = ("backend", "p", "field", "N", "precision")
CURVE_KEYS = ("A", "B", "a1", "a2", "a3", "a4", "a6")
PER_CURVE = CONTEXT_KEYS + CURVE_KEYS + ("generators",)
GLOBAL_KEYS = set(PER_CURVE) | {
    "curve_id", "curves", "gamma_grid", "degree", "samples", "seed", "suites",
    "workers", "a_val", "b", "gamma", "point", "oracle", "x0", "expect",
    "eq1_mutation",
}

_KEY = re.compile(r"[A-Za-z_][A-Za-z_0-9]*(\.[A-Za-z_][A-Za-z_0-9]*)?")


class ConfigError(EllvalError):
    def __init__(self, message, line=0, column=0, path="<config>"):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        super().__init__(f"{path}:{line}:{column}: {message}")


@dataclass
class Entry:
    value: str
    line: int
    column: int  # column of the first character of the value


def parse_config_text(text: str, path: str = "<config>") -> dict:
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            col = len(body) - len(body.lstrip()) + 1
            raise ConfigError("expected 'key = value'", lineno, col, path)
        key_part, _, value_part = body.partition("=")
        key = key_part.strip()
        kcol = len(key_part) - len(key_part.lstrip()) + 1
        if not _KEY.fullmatch(key):
            raise ConfigError(f"malformed key {key!r}", lineno, kcol, path)
        base = key.split(".")[-1]
        if ("." in key and base not in PER_CURVE) or ("." not in key and key not in GLOBAL_KEYS):
            raise ConfigError(f"unknown key {key!r}", lineno, kcol, path)
        if key in entries:
            raise ConfigError(f"duplicate key {key!r}", lineno, kcol, path)
        value = value_part.strip()
        vcol = len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno, vcol, path)
        entries[key] = Entry(value, lineno, vcol)
    return entries


def _split_top(text: str, sep: str):
    """Split on ``sep`` outside parentheses; yields (piece, offset)."""
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            yield text[start:i], start
            start = i + 1
    yield text[start:], start


@dataclass
class CurveSpec:
    curve_id: str
    curve: GeneralWeierstrass
    generators: list = field(default_factory=list)


@dataclass
class JobConfig:
    entries: dict
    path: str
    curves: list = field(default_factory=list)

    # ------------------------------------------------------------ lookup
    def has(self, key):
        return key in self.entries

    def raw(self, key, default=None):
        e = self.entries.get(key)
        return default if e is None else e.value

    def error(self, key, message, offset=0):
        e = self.entries.get(key)
        if e is None:
            return ConfigError(message, 0, 0, self.path)
        return ConfigError(message, e.line, e.column + offset, self.path)

    def literal(self, key, ctx, text=None, offset=0):
        e = self.entries[key]
        text = e.value if text is None else text
        try:
            return ctx.parse(text)
        except LiteralError as exc:
            if exc.column is None:
                raise ConfigError(exc.message, e.line, e.column + offset, self.path) from None
            raise ConfigError(exc.message, e.line, e.column + offset + exc.column - 1, self.path) from None
        except EllvalError as exc:
            raise ConfigError(str(exc), e.line, e.column + offset, self.path) from None

    def integer(self, key, default):
        if key not in self.entries:
            return default
        try:
            return int(self.entries[key].value)
        except ValueError:
            raise self.error(key, f"{key} must be an integer") from None

    def fraction(self, key, default=None):
        if key not in self.entries:
            return default
        try:
            return Fraction(self.entries[key].value)
        except (ValueError, ZeroDivisionError):
            raise self.error(key, f"{key} must be a rational number") from None

    def names(self, key, default=()):
        if key not in self.entries:
            return list(default)
        return [s.strip() for s in self.entries[key].value.split(",") if s.strip()]

    @property
    def curve(self):
        return self.curves[0].curve

    # ------------------------------------------------------------ values
    def point(self, key, spec: CurveSpec, text=None, offset=0):
        e = self.entries[key]
        full = e.value if text is None else text
        lead = len(full) - len(full.lstrip())
        text = full.strip()
        if text.lower() in ("infinity", "inf", "o"):
            return POINT_AT_INFINITY
        if not (text.startswith("(") and text.endswith(")")):
            raise ConfigError("a point is 'infinity' or '(x, y)'", e.line, e.column + offset + lead, self.path)
        parts = list(_split_top(text[1:-1], ","))
        if len(parts) != 2:
            raise ConfigError("a point needs exactly two coordinates", e.line, e.column + offset + lead, self.path)
        ctx = spec.curve.ctx
        (xs, xo), (ys, yo) = parts
        x = self.literal(key, ctx, xs, offset + lead + 1 + xo)
        y = self.literal(key, ctx, ys, offset + lead + 1 + yo)
        P = AffinePoint(x, y)
        if not spec.curve.is_on_curve(P):
            raise ConfigError(f"point {text} is not on curve {spec.curve_id}", e.line, e.column + offset, self.path)
        return P

    def gamma_grid(self, curve, override=None):
        """Absolute entries ``q``, or relative ``q*ginf`` / ``ginf``."""
        text = override if override is not None else self.raw("gamma_grid", "0, 1/2*ginf, ginf")
        top = gamma_infinity(curve)
        out = []
        for item, off in _split_top(text, ","):
            s = item.strip().replace(" ", "")
            try:
                if s == "ginf":
                    g = top
                elif s.endswith("*ginf"):
                    g = Fraction(s[:-5]) * top
                else:
                    g = Fraction(s)
                    if g > top:
                        continue  # absolute entries beyond gamma_inf do not apply to this curve
            except (ValueError, ZeroDivisionError):
                if override is not None:
                    raise ConfigError(f"bad gamma grid entry {s!r}", 0, off + 1, "--gamma-grid") from None
                raise self.error("gamma_grid", f"bad gamma grid entry {s!r}", off) from None
            if g not in out:
                out.append(g)
        return sorted(out)


def _curve_spec(cfg: JobConfig, cid: str, prefix: str) -> CurveSpec:
    def key(k):
        pk = prefix + k
        return pk if pk in cfg.entries else k

    backend = cfg.raw(key("backend"), "laurent")
    try:
        ctx = make_context(
            backend,
            p=cfg.raw(key("p")),
            field=cfg.raw(key("field"), "Q"),
            N=cfg.raw(key("N"), "1"),
            precision=cfg.raw(key("precision"), "40"),
        )
    except (ValueError, EllvalError) as exc:
        raise cfg.error(key("backend"), str(exc)) from None
    have_short = any(key(k) in cfg.entries for k in ("A", "B"))
    have_general = any(key(k) in cfg.entries for k in ("a1", "a2", "a3", "a4", "a6"))
    if have_short and have_general:
        raise cfg.error(key("A") if key("A") in cfg.entries else key("B"), "give either A, B or a1..a6")
    if not have_short and not have_general:
        where = "curves" if prefix else "curve_id"
        raise cfg.error(where, f"curve {cid!r} has no coefficients (A, B or a1..a6)")

    def coef(k):
        kk = key(k)
        return cfg.literal(kk, ctx) if kk in cfg.entries else ctx.zero

    try:
        if have_short:
            curve = ShortWeierstrass(coef("A"), coef("B"), ctx)
        else:
            curve = GeneralWeierstrass(*(coef(k) for k in ("a1", "a2", "a3", "a4", "a6")), ctx)
    except EllvalError as exc:
        if isinstance(exc, ConfigError):
            raise
        k = key("A") if have_short else key("a1")
        raise cfg.error(k if k in cfg.entries else key("B"), f"curve {cid!r}: {exc}") from None
    spec = CurveSpec(cid, curve)
    gk = key("generators")
    if gk in cfg.entries:
        text = cfg.entries[gk].value
        for piece, off in _split_top(text, ";"):
            if piece.strip():
                spec.generators.append(cfg.point(gk, spec, piece, off))
    return spec


def load_config(text: str, path: str = "<config>") -> JobConfig:
    cfg = JobConfig(parse_config_text(text, path), path)
    ids = cfg.names("curves")
    known = set(ids)
    for k, e in cfg.entries.items():
        if "." in k and k.split(".")[0] not in known:
            raise ConfigError(f"key {k!r} refers to an undeclared curve", e.line, 1, path)
    if ids:
        for cid in ids:
            cfg.curves.append(_curve_spec(cfg, cid, cid + "."))
    else:
        cid = cfg.raw("curve_id", "curve")
        if any(k in cfg.entries for k in CURVE_KEYS):
            cfg.curves.append(_curve_spec(cfg, cid, ""))
    return cfg
