"""Exact arithmetic in the field Q(g, h, ...) of rational functions.

Every coefficient in the package is a ``Scalar``: a reduced fraction of
sparse multivariate polynomials over Q.  A monomial is a tuple of
(parameter name, exponent) pairs sorted by name; the empty tuple is the
constant monomial.  Canonical form: gcd(num, den) is a unit and den is
monic under a fixed monomial order, so two scalars are equal as rational
functions iff their representations are equal.

Parameter monomials are ordered degree-lexicographically with parameter
names compared alphabetically.  All paper presentations use single-letter
parameters declared in alphabetical order, so this coincides with
declaration order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Mapping

from .errors import DivisionByZero, MissingParameter, PoleAtPoint, ZeroDenominator

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by name, exponents > 0


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for name, e in m2:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def _mono_div(m1: Monomial, m2: Monomial):
    """m1 / m2, or None when not divisible."""
    exps = dict(m1)
    for name, e in m2:
        r = exps.get(name, 0) - e
        if r < 0:
            return None
        if r == 0:
            exps.pop(name, None)
        else:
            exps[name] = r
    return tuple(sorted(exps.items()))


def _mono_key(m: Monomial, names: tuple) -> tuple:
    # deglex: total degree first, then exponent vector over the given names
    exps = dict(m)
    return (sum(exps.values()), tuple(exps.get(n, 0) for n in names))


class ParamPoly:
    """Sparse polynomial over Q in named parameters."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms = {m: (c if isinstance(c, Fraction) else Fraction(c))
                      for m, c in (terms or {}).items() if c != 0}
        self._hash = None

    @classmethod
    def const(cls, c) -> "ParamPoly":
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "ParamPoly":
        return cls({((name, exp),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def const_value(self):
        """The Fraction value if constant, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def variables(self) -> set:
        return {name for m in self.terms for name, _ in m}

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def leading(self, names=None):
        """(monomial, coeff) largest under deglex over the given names."""
        if not self.terms:
            return (), Fraction(0)
        if names is None:
            names = tuple(sorted(self.variables()))
        m = max(self.terms, key=lambda mo: _mono_key(mo, names))
        return m, self.terms[m]

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return ParamPoly(terms)

    def __neg__(self) -> "ParamPoly":
        return ParamPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return self + (-other)

    def __mul__(self, other: "ParamPoly") -> "ParamPoly":
        if not self.terms or not other.terms:
            return ParamPoly()
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return ParamPoly(terms)

    def scale(self, c) -> "ParamPoly":
        c = Fraction(c)
        if not c:
            return ParamPoly()
        return ParamPoly({m: k * c for m, k in self.terms.items()})

    def __pow__(self, n: int) -> "ParamPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = ParamPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for name, e in m:
                if name not in assignment:
                    raise MissingParameter(name)
                v *= Fraction(assignment[name]) ** e
            total += v
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, ParamPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return "ParamPoly(%s)" % format_poly(self)


_POLY_ZERO = ParamPoly()
_POLY_ONE = ParamPoly.const(1)


# ---------------------------------------------------------------------------
# polynomial gcd (integer primitive pseudo-remainder sequences)
#
# gcd internals clear denominators and work on plain {monomial: int} dicts;
# Python int arithmetic avoids the per-operation normalization cost of
# Fraction and the classical coefficient blow-up of naive PRS is kept in
# check by taking primitive parts after every pseudo-remainder.
# ---------------------------------------------------------------------------

def _z_from_poly(p: ParamPoly) -> dict:
    if not p.terms:
        return {}
    scale = 1
    for c in p.terms.values():
        scale = scale * c.denominator // gcd(scale, c.denominator)
    out = {m: int(c * scale) for m, c in p.terms.items()}
    return _z_primitive(out)


def _z_primitive(a: dict) -> dict:
    if not a:
        return a
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            return dict(a)
    return {m: c // g for m, c in a.items()}


def _z_vars(a: dict) -> set:
    return {name for m in a for name, _ in m}


def _z_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _mono_mul(m1, m2)
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def _z_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) - c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _z_as_uni(a: dict, v: str) -> dict:
    buckets: dict = {}
    for m, c in a.items():
        exps = dict(m)
        d = exps.pop(v, 0)
        rest = tuple(sorted(exps.items()))
        bucket = buckets.setdefault(d, {})
        s = bucket.get(rest, 0) + c
        if s:
            bucket[rest] = s
        else:
            bucket.pop(rest, None)
    return {d: b for d, b in buckets.items() if b}


def _z_shift(a: dict, v: str, d: int) -> dict:
    if d == 0:
        return a
    mono = ((v, d),)
    return {_mono_mul(m, mono): c for m, c in a.items()}


def _z_divexact(a: dict, d: dict) -> dict:
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return {}
    if len(d) == 1 and () in d:
        k = d[()]
        return {m: c // k for m, c in a.items()}
    names = tuple(sorted(_z_vars(a) | _z_vars(d)))
    keys: dict = {}

    def key(mo):
        k = keys.get(mo)
        if k is None:
            k = keys[mo] = _mono_key(mo, names)
        return k

    dlead = max(d, key=key)
    dlc = d[dlead]
    quot: dict = {}
    rem = dict(a)
    while rem:
        m = max(rem, key=key)
        q = _mono_div(m, dlead)
        if q is None or rem[m] % dlc:
            raise ArithmeticError("not an exact polynomial divisor")
        c = rem[m] // dlc
        quot[q] = c
        for dm, dco in d.items():
            mm = _mono_mul(q, dm)
            s = rem.get(mm, 0) - c * dco
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    return quot


def _z_content_in(a: dict, v: str) -> dict:
    cont: dict = {}
    for coeff in _z_as_uni(a, v).values():
        cont = _z_gcd(cont, coeff)
        if len(cont) == 1 and cont.get((), 0) == 1:
            break
    return cont


def _z_gcd(a: dict, b: dict) -> dict:
    """gcd in Z[params] up to sign, inputs/outputs primitive."""
    if not a:
        return _z_primitive(b)
    if not b:
        return _z_primitive(a)
    names = sorted(_z_vars(a) | _z_vars(b))
    if not names:
        return {(): gcd(a[()], b[()])}
    v = names[0]

    def deg(p):
        return max((dict(m).get(v, 0) for m in p), default=0)

    cont_a = _z_content_in(a, v)
    cont_b = _z_content_in(b, v)
    f = _z_divexact(a, cont_a)
    g = _z_divexact(b, cont_b)
    c = _z_gcd(cont_a, cont_b)
    if deg(f) < deg(g):
        f, g = g, f
    while g:
        dg = deg(g)
        if dg == 0:
            # g is v-free and primitive, so gcd of primitive parts is trivial
            f = {(): 1}
            break
        lcg = _z_as_uni(g, v)[dg]
        r = f
        while r and deg(r) >= dg:
            dr = deg(r)
            lcr = _z_as_uni(r, v)[dr]
            r = _z_sub(_z_mul(r, lcg), _z_shift(_z_mul(g, lcr), v, dr - dg))
        f, g = g, _z_primitive(_z_divexact(r, _z_content_in(r, v)) if r else {})
    return _z_mul(c, _z_primitive(f))


def _monic(p: ParamPoly) -> ParamPoly:
    if p.is_zero():
        return p
    _, lc = p.leading()
    return p if lc == 1 else p.scale(Fraction(1) / lc)


def poly_gcd(p: ParamPoly, q: ParamPoly) -> ParamPoly:
    """gcd in Q[params], normalized monic; gcd(0, q) = monic(q)."""
    if p.is_zero():
        return _monic(q)
    if q.is_zero():
        return _monic(p)
    if not (p.variables() | q.variables()):
        return _POLY_ONE
    g = _z_gcd(_z_from_poly(p), _z_from_poly(q))
    return _monic(ParamPoly({m: Fraction(c) for m, c in g.items()}))


def poly_divexact(p: ParamPoly, d: ParamPoly) -> ParamPoly:
    """Exact quotient p/d; raises ArithmeticError when d does not divide p."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    dc = d.const_value()
    if dc is not None:
        return p.scale(Fraction(1) / dc)
    names = tuple(sorted(p.variables() | d.variables()))
    dlead, dlc = d.leading(names)
    quot: dict = {}
    rem = dict(p.terms)
    while rem:
        m = max(rem, key=lambda mo: _mono_key(mo, names))
        q = _mono_div(m, dlead)
        if q is None:
            raise ArithmeticError("not an exact polynomial divisor")
        c = rem[m] / dlc
        quot[q] = c
        for dm, dco in d.terms.items():
            mm = _mono_mul(q, dm)
            s = rem.get(mm, 0) - c * dco
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    return ParamPoly(quot)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class Scalar:
    """Reduced rational function num/den over Q in named parameters.

    Construct through :func:`normalized`, ``Scalar.const`` or
    ``Scalar.var``; the constructor trusts its arguments to be canonical.
    Values are immutable and hashable.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: ParamPoly, den: ParamPoly):
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, c) -> "Scalar":
        return cls(ParamPoly.const(c), _POLY_ONE)

    @classmethod
    def var(cls, name: str) -> "Scalar":
        return cls(ParamPoly.var(name), _POLY_ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den == _POLY_ONE and self.num == _POLY_ONE

    def const_value(self):
        """Fraction value when parameter-free, else None."""
        if self.den == _POLY_ONE:
            return self.num.const_value()
        return None

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def __add__(self, other: "Scalar") -> "Scalar":
        if self.den == _POLY_ONE and other.den == _POLY_ONE:
            return Scalar(self.num + other.num, _POLY_ONE)
        return normalized(self.num * other.den + other.num * self.den,
                          self.den * other.den)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, self.den)

    def __mul__(self, other: "Scalar") -> "Scalar":
        if self.den == _POLY_ONE and other.den == _POLY_ONE:
            return Scalar(self.num * other.num, _POLY_ONE)
        return normalized(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        if other.is_zero():
            raise DivisionByZero("division by the zero scalar")
        return normalized(self.num * other.den, self.den * other.num)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero scalar")
        return normalized(self.den, self.num)

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def eval(self, assignment: Mapping[str, Fraction]) -> Fraction:
        """Exact value at a rational point; raises PoleAtPoint/MissingParameter."""
        d = self.den.evaluate(assignment)
        if d == 0:
            raise PoleAtPoint("denominator %s vanishes at %s"
                              % (format_poly(self.den), dict(assignment)))
        return self.num.evaluate(assignment) / d

    def substitute(self, mapping: Mapping[str, "Scalar"]) -> "Scalar":
        """Image under a parameter substitution (must cover all parameters)."""
        for name in self.variables():
            if name not in mapping:
                raise MissingParameter(name)

        def image(poly: ParamPoly) -> "Scalar":
            total = ZERO
            for m, c in poly.terms.items():
                v = Scalar.const(c)
                for name, e in m:
                    v = v * mapping[name] ** e
                total = total + v
            return total

        den = image(self.den)
        if den.is_zero():
            raise PoleAtPoint("substitution sends denominator %s to zero"
                              % format_poly(self.den))
        return image(self.num) / den

    def __eq__(self, other) -> bool:
        return (isinstance(other, Scalar)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return "Scalar(%s)" % format_scalar(self)


ZERO = Scalar.const(0)
ONE = Scalar.const(1)


def normalized(num: ParamPoly, den: ParamPoly) -> Scalar:
    """Canonical reduced form of num/den; idempotent.

    gcd is cancelled and the denominator is scaled monic (so a constant
    denominator becomes exactly 1).
    """
    if den.is_zero():
        raise ZeroDenominator("denominator is the zero polynomial")
    if num.is_zero():
        return ZERO
    g = poly_gcd(num, den)
    if g != _POLY_ONE:
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    _, lc = den.leading()
    if lc != 1:
        inv = Fraction(1) / lc
        num = num.scale(inv)
        den = den.scale(inv)
    return Scalar(num, den)


def scalar(value) -> Scalar:
    """Coerce ints/Fractions/Scalars to Scalar."""
    if isinstance(value, Scalar):
        return value
    return Scalar.const(value)


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _format_mono(m: Monomial) -> str:
    return "*".join(name if e == 1 else "%s^%d" % (name, e) for name, e in m)


def format_poly(p: ParamPoly) -> str:
    if not p.terms:
        return "0"
    names = tuple(sorted(p.variables()))
    parts = []
    for m in sorted(p.terms, key=lambda mo: _mono_key(mo, names), reverse=True):
        c = p.terms[m]
        if not m:
            body = str(abs(c))
        elif abs(c) == 1:
            body = _format_mono(m)
        else:
            body = "%s*%s" % (abs(c), _format_mono(m))
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += " %s %s" % (sign, body)
    return out


def format_scalar(s: Scalar) -> str:
    if s.den == _POLY_ONE:
        return format_poly(s.num)
    return "(%s)/(%s)" % (format_poly(s.num), format_poly(s.den))
