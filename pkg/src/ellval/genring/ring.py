"""Canonical forms in K[x_1, y_1, ..., x_n, y_n] / (Weierstrass relations).

Every element is stored on the basis ``prod x_i^e_i y_i^f_i`` with each
``f_i`` in {0, 1}; products are reduced on the fly with

    y_i^2 = x_i^3 + a2 x_i^2 + a4 x_i + a6 - a1 x_i y_i - a3 y_i.

Each pair may carry its own relation, which is how the residue rings of
scaled curves are represented.  A monomial key is the flat tuple
``(e_1, ..., e_n, f_1, ..., f_n)``.
"""
from __future__ import annotations

from typing import Mapping, Sequence


class CoordinateRing:
    """Ring of n independent generic points on Weierstrass charts.

    ``domain`` supplies ``zero``, ``one``, ``coerce`` and ``is_exact_zero``:
    a valued-field context or a residue :class:`CoefficientField`.
    ``relations`` lists the a-invariants ``(a1, a2, a3, a4, a6)`` per pair.
    """

    def __init__(self, domain, relations: Sequence[Sequence]):
        self.domain = domain
        self.n = len(relations)
        if self.n < 1:
            raise ValueError("need at least one pair of variables")
        self.relations = [tuple(domain.coerce(a) for a in rel) for rel in relations]
        self._zero_c = domain.zero
        self._one_c = domain.one
        self._is_zero = domain.is_exact_zero
        self._y2 = [self._relation_terms(i) for i in range(self.n)]
        self._reduced = {}
        self.cache = {}

    def __repr__(self):
        return f"CoordinateRing(n={self.n}, domain={self.domain!r})"

    def same_relations(self, other: "CoordinateRing", pairs=None) -> bool:
        pairs = pairs if pairs is not None else range(other.n)
        return all(
            all(u == v for u, v in zip(self.relations[j], other.relations[i]))
            for i, j in enumerate(pairs)
        )

    # ----------------------------------------------------------- builders
    def _relation_terms(self, i):
        a1, a2, a3, a4, a6 = self.relations[i]
        n = self.n
        out = []
        for e, f, c in ((3, 0, self._one_c), (2, 0, a2), (1, 0, a4), (0, 0, a6), (1, 1, -a1), (0, 1, -a3)):
            if self._is_zero(c):
                continue
            m = [0] * (2 * n)
            m[i] = e
            m[n + i] = f
            out.append((tuple(m), c))
        return out

    def _mono(self, e=None, f=None):
        n = self.n
        e = tuple(e) if e is not None else (0,) * n
        f = tuple(f) if f is not None else (0,) * n
        if len(e) != n or len(f) != n:
            raise ValueError(f"monomial vectors must have length {n}")
        return e + f

    def from_terms(self, terms: Mapping) -> "CanonicalPoly":
        """Build from ``{flat_monomial: coefficient}`` already in canonical form."""
        out = {}
        for m, c in terms.items():
            m = tuple(m)
            if any(f > 1 for f in m[self.n:]):
                raise ValueError("use normalize() for monomials with y-exponent >= 2")
            c = self.domain.coerce(c)
            if not self._is_zero(c):
                out[m] = c
        return CanonicalPoly(self, out)

    def const(self, c) -> "CanonicalPoly":
        c = self.domain.coerce(c)
        if self._is_zero(c):
            return CanonicalPoly(self, {})
        return CanonicalPoly(self, {(0,) * (2 * self.n): c})

    @property
    def zero(self):
        return CanonicalPoly(self, {})

    @property
    def one(self):
        return self.const(1)

    def x(self, i: int) -> "CanonicalPoly":
        """x_i, 1-based."""
        e = [0] * self.n
        e[i - 1] = 1
        return CanonicalPoly(self, {self._mono(e=e): self._one_c})

    def y(self, i: int) -> "CanonicalPoly":
        f = [0] * self.n
        f[i - 1] = 1
        return CanonicalPoly(self, {self._mono(f=f): self._one_c})

    def monomial(self, e, f, c=1) -> "CanonicalPoly":
        return self.normalize({(tuple(e), tuple(f)): c})

    def normalize(self, raw: Mapping) -> "CanonicalPoly":
        """Reduce ``{(e_vector, f_vector): coefficient}`` with arbitrary y-powers."""
        result = self.zero
        for (e, f), c in raw.items():
            c = self.domain.coerce(c)
            if self._is_zero(c):
                continue
            base = CanonicalPoly(self, {self._mono(e, [fi % 2 for fi in f]): c})
            for i, fi in enumerate(f):
                if fi >= 2:
                    base = base * (CanonicalPoly(self, dict(self._y2[i])) ** (fi // 2))
            result = result + base
        return result

    def embed(self, poly: "CanonicalPoly", pairs: Sequence[int]) -> "CanonicalPoly":
        """Send pair k of ``poly``'s ring to pair ``pairs[k]`` (1-based) of this ring."""
        src = poly.ring
        if len(pairs) != src.n:
            raise ValueError("pair map length must equal the source arity")
        targets = [p - 1 for p in pairs]
        if not self.same_relations(src, targets):
            raise ValueError("pair relations differ between the two rings")
        n = self.n
        out = {}
        for m, c in poly.terms.items():
            new = [0] * (2 * n)
            for k, j in enumerate(targets):
                new[j] = m[k]
                new[n + j] = m[src.n + k]
            out[tuple(new)] = self.domain.coerce(c)
        return CanonicalPoly(self, out)

    # -------------------------------------------------------- multiplication
    def _reduce_mono(self, m):
        """Canonical expansion of a monomial whose y-exponents are at most 2."""
        hit = self._reduced.get(m)
        if hit is not None:
            return hit
        n = self.n
        current = [(m, self._one_c)]
        for i in range(n):
            if m[n + i] != 2:
                continue
            nxt = []
            for mm, cc in current:
                stripped = list(mm)
                stripped[n + i] = 0
                for rm, rc in self._y2[i]:
                    nxt.append((tuple(a + b for a, b in zip(stripped, rm)), cc * rc))
            current = nxt
        acc = {}
        for mm, cc in current:
            if mm in acc:
                acc[mm] = acc[mm] + cc
            else:
                acc[mm] = cc
        hit = [(mm, cc) for mm, cc in acc.items() if not self._is_zero(cc)]
        self._reduced[m] = hit
        return hit

    def _mul_terms(self, a, b):
        n = self.n
        acc = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(u + v for u, v in zip(m1, m2))
                c = c1 * c2
                if 2 in m[n:]:
                    for mm, cc in self._reduce_mono(m):
                        v = c * cc
                        if mm in acc:
                            acc[mm] = acc[mm] + v
                        else:
                            acc[mm] = v
                elif m in acc:
                    acc[m] = acc[m] + c
                else:
                    acc[m] = c
        zero = self._is_zero
        return {m: c for m, c in acc.items() if not zero(c)}


class CanonicalPoly:
    """An element of a :class:`CoordinateRing` in canonical form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CoordinateRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _lift(self, other):
        if isinstance(other, CanonicalPoly):
            if other.ring is not self.ring:
                raise ValueError("polynomials belong to different coordinate rings")
            return other
        try:
            return self.ring.const(other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        zero = self.ring._is_zero
        acc = dict(self.terms)
        for m, c in other.terms.items():
            if m in acc:
                s = acc[m] + c
                if zero(s):
                    del acc[m]
                else:
                    acc[m] = s
            else:
                acc[m] = c
        return CanonicalPoly(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return CanonicalPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return CanonicalPoly(self.ring, self.ring._mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def scale(self, c):
        c = self.ring.domain.coerce(c)
        zero = self.ring._is_zero
        out = {}
        for m, v in self.terms.items():
            w = v * c
            if not zero(w):
                out[m] = w
        return CanonicalPoly(self.ring, out)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        zero = self.ring._zero_c
        for m in set(self.terms) | set(other.terms):
            if not (self.terms.get(m, zero) == other.terms.get(m, zero)):
                return False
        return True

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        n2 = 2 * self.ring.n
        return all(m == (0,) * n2 for m in self.terms)

    def coefficient(self, e, f):
        return self.terms.get(self.ring._mono(e, f), self.ring._zero_c)

    def split(self, m):
        n = self.ring.n
        return m[:n], m[n:]

    def degree(self) -> int:
        """Total degree in the basis monomials (x and y each count 1)."""
        return max((sum(m) for m in self.terms), default=-1)

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def to_records(self, fmt=str):
        """``[(e_vector, f_vector, coefficient_literal)]`` in sorted order."""
        out = []
        for m in sorted(self.terms):
            e, f = self.split(m)
            out.append((list(e), list(f), fmt(self.terms[m])))
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        n = self.ring.n
        fmt = getattr(self.ring.domain, "format", str)
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            vars_ = []
            for i in range(n):
                if m[i]:
                    vars_.append(f"x{i + 1}" + (f"^{m[i]}" if m[i] > 1 else ""))
                if m[n + i]:
                    vars_.append(f"y{i + 1}")
            mono = "*".join(vars_)
            ctext = fmt(c)
            parts.append(f"({ctext})*{mono}" if mono else f"({ctext})")
        return " + ".join(parts)


def proportional(a: CanonicalPoly, b: CanonicalPoly) -> bool:
    """True when a = c * b for a scalar c (both assumed nonzero)."""
    if not b.terms or not a.terms:
        return not a.terms and not b.terms
    if set(a.terms) != set(b.terms):
        return False
    m0 = next(iter(b.terms))
    ratio = a.terms[m0] / b.terms[m0]
    return a == b.scale(ratio)
