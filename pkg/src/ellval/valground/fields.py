"""Exact coefficient fields: the rationals, prime fields, and rational function fields.

These are the residue fields of the valued-field backends and the coefficient
fields of Laurent series.  Every field exposes the same small surface
(``zero``, ``one``, ``coerce``, ``sqrt``, ``format``) so that series and
polynomial code can stay generic.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral, Rational

import gmpy2
from gmpy2 import mpq
from sympy import GF, QQ
from sympy.ntheory import isprime, sqrt_mod
from sympy.polys.fields import FracElement, field as sympy_field

from ..errors import DuplicateSymbol

_MPQ = type(mpq(0))


class Fp:
    """Element of the prime field F_p, stored as its least nonnegative representative."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"cannot mix F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, Integral):
            return int(other)
        if isinstance(other, Rational):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if n < 0:
            return Fp(pow(pow(self.v, -1, self.p), -n, self.p), self.p)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class CoefficientField:
    """Common interface; see the concrete subclasses."""

    characteristic: int = 0

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def symbols(self) -> dict:
        """Named constants available to the literal parser."""
        return {}

    def is_zero(self, x) -> bool:
        return x == 0

    def is_exact_zero(self, x) -> bool:
        return x == 0

    def random_unit(self, rng):
        raise NotImplementedError


class Rationals(CoefficientField):
    """QQ with gmpy2 ``mpq`` elements (series arithmetic is dominated by these)."""

    characteristic = 0

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def coerce(self, x):
        if type(x) is _MPQ:
            return x
        if isinstance(x, bool):
            raise TypeError("booleans are not rationals")
        if isinstance(x, (int, Fraction, str)):
            return mpq(x)
        # mpz, sympy rationals and other Rational implementations
        if hasattr(x, "numerator") and hasattr(x, "denominator"):
            return mpq(int(x.numerator), int(x.denominator))
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def sqrt(self, x):
        """Nonnegative rational square root, or None."""
        x = self.coerce(x)
        if x < 0:
            return None
        n, d = x.numerator, x.denominator
        if gmpy2.is_square(n) and gmpy2.is_square(d):
            return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))
        return None

    def format(self, x) -> str:
        return str(x)

    def random_unit(self, rng):
        num = rng.choice([-1, 1]) * rng.randint(1, 9)
        return mpq(num, rng.randint(1, 4))

    def lift(self, x):
        return x


QQ_FIELD = Rationals()


class PrimeField(CoefficientField):
    def __init__(self, p: int):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def coerce(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError(f"element of F_{x.p} is not in F_{self.p}")
            return x
        if isinstance(x, Integral) and not isinstance(x, bool):
            return Fp(int(x), self.p)
        if isinstance(x, Rational):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def sqrt(self, x):
        """Least nonnegative square root, or None."""
        x = self.coerce(x)
        if x.v == 0:
            return Fp(0, self.p)
        roots = sqrt_mod(x.v, self.p, all_roots=True)
        if not roots:
            return None
        return Fp(min(roots), self.p)

    def format(self, x) -> str:
        return str(self.coerce(x).v)

    def random_unit(self, rng):
        return Fp(rng.randint(1, self.p - 1), self.p)

    def lift(self, x):
        """Least nonnegative integer representative."""
        return self.coerce(x).v


class FunctionField(CoefficientField):
    """``base(names...)``: rational functions over QQ or F_p, kept in lowest terms."""

    def __init__(self, base: CoefficientField, names):
        names = tuple(names)
        if not names:
            raise ValueError("a function field needs at least one transcendental")
        if isinstance(base, FunctionField):
            ground = base.ground
            all_names = base.names + names
        else:
            ground = base
            all_names = names
        if len(set(all_names)) != len(all_names):
            raise DuplicateSymbol(f"duplicate transcendental names in {all_names}")
        for n in names:
            if not n.isidentifier() or n in ("t", "pi", "p", "O"):
                raise DuplicateSymbol(f"{n!r} is reserved or not an identifier")
        if isinstance(ground, Rationals):
            domain = QQ
        elif isinstance(ground, PrimeField):
            domain = GF(ground.p)
        else:
            raise TypeError(f"unsupported ground field {ground!r}")
        self.base = base
        self.ground = ground
        self.names = all_names
        self.characteristic = ground.characteristic
        self._K, *gens = sympy_field(",".join(all_names), domain)
        self._gens = dict(zip(all_names, gens))

    def __eq__(self, other):
        return isinstance(other, FunctionField) and (other.ground, other.names) == (
            self.ground,
            self.names,
        )

    def __hash__(self):
        return hash(("FF", self.ground, self.names))

    def __repr__(self):
        return f"{self.ground!r}({', '.join(self.names)})"

    def gen(self, name):
        return self._gens[name]

    def symbols(self):
        return dict(self._gens)

    def coerce(self, x):
        if isinstance(x, FracElement):
            if x.field == self._K:
                return x
            return x.set_field(self._K)
        if isinstance(x, Fp):
            return self._K(int(x))
        if isinstance(x, Integral) and not isinstance(x, bool):
            return self._K(int(x))
        if isinstance(x, Rational):
            if isinstance(self.ground, PrimeField):
                return self._K(int(self.ground.coerce(x)))
            return self._K(QQ(int(x.numerator), int(x.denominator)))
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def _ground_elt(self, c):
        if isinstance(self.ground, PrimeField):
            return self.ground.coerce(int(c))
        return Fraction(int(c.numerator), int(c.denominator))

    def sqrt(self, x):
        """Square root as a rational function, or None; the root whose
        numerator leading coefficient is the ground field's canonical root."""
        x = self.coerce(x)
        if x == 0:
            return x
        num, den = x.numer, x.denom
        roots = []
        for poly in (num, den):
            content, factors = poly.factor_list()
            c = self._ground_elt(content)
            rc = self.ground.sqrt(c)
            if rc is None or any(m % 2 for _, m in factors):
                return None
            r = self._K(poly.ring.one)
            for f, m in factors:
                r *= self._K(f) ** (m // 2)
            roots.append(r * self.coerce(rc))
        root = roots[0] / roots[1]
        lc = self._ground_elt(root.numer.LC) / self._ground_elt(root.denom.LC)
        if lc != self.ground.sqrt(lc * lc):
            root = -root
        return root

    def format(self, x) -> str:
        return "(" + str(self.coerce(x)).replace("**", "^") + ")"

    def random_unit(self, rng):
        return self.coerce(self.ground.random_unit(rng))

    def lift(self, x):
        return x


def with_transcendentals(k: CoefficientField, names) -> FunctionField:
    """Adjoin fresh transcendental symbols to ``k``."""
    return FunctionField(k, names)


def parse_field(text: str) -> CoefficientField:
    """``"Q"``, ``"F5"``/``"GF(5)"``, or ``"Q(A,B)"``/``"F5(s)"``."""
    text = text.strip().replace(" ", "")
    names = None
    if text.endswith(")") and "(" in text and not text.upper().startswith("GF("):
        head, _, rest = text.partition("(")
        names = [n for n in rest[:-1].split(",") if n]
        text = head
    up = text.upper()
    if up in ("Q", "QQ"):
        base = QQ_FIELD
    elif up.startswith("GF(") and up.endswith(")"):
        base = PrimeField(int(up[3:-1]))
    elif up.startswith("F") and up[1:].isdigit():
        base = PrimeField(int(up[1:]))
    elif up.startswith("GF") and up[2:].isdigit():
        base = PrimeField(int(up[2:]))
    else:
        raise ValueError(f"unknown coefficient field {text!r}")
    if names:
        return FunctionField(base, names)
    return base


def field_descriptor(k: CoefficientField) -> str:
    if isinstance(k, Rationals):
        return "Q"
    if isinstance(k, PrimeField):
        return f"F{k.p}"
    return f"{field_descriptor(k.ground)}({','.join(k.names)})"
