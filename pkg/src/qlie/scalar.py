"""Exact arithmetic in the rational function field Q(s), with s = q**(1/2).

A :class:`Scalar` is stored in canonical form

    s**shift * N(s) / D(s)

where ``N`` and ``D`` are integer polynomials (tuples of coefficients, lowest
degree first) with nonzero constant terms, ``gcd(N, D) = 1`` over Z[s],
and ``D`` has a positive leading coefficient. Two scalars are equal iff their
canonical triples are identical, so ``==`` and ``hash`` are structural.

Polynomial GCDs use the subresultant remainder sequence, which keeps the
intermediate coefficients integral without blowing up.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Union

Poly = tuple  # tuple[int, ...], lowest degree first, no trailing zeros

__all__ = [
    "Scalar", "PoleError", "NotClassicalError", "ONE", "ZERO", "s", "q",
    "q_power", "qint", "parse_scalar",
]


class PoleError(ArithmeticError):
    """Raised when a scalar is evaluated at a zero of its denominator."""


class NotClassicalError(PoleError):
    """Raised when a scalar has no value at q = 1."""


# ---------------------------------------------------------------------------
# integer polynomial helpers

def _trim(a: list) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _pshift(a: Poly, k: int) -> Poly:
    return (0,) * k + a if a else ()


def _content(a: Poly) -> int:
    g = 0
    for c in a:
        g = igcd(g, c)
        if g == 1:
            break
    return g


def _pdiv_int(a: Poly, c: int) -> Poly:
    return tuple(x // c for x in a)


def _prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of a by b: lc(b)**(deg a - deg b + 1) * a mod b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, y in enumerate(b):
            r[i + shift] -= lr * y
        r.pop()
        _strip_list(r)
        e -= 1
    if e > 0:
        m = lb ** e
        r = [m * x for x in r]
    return tuple(r)


def _strip_list(r: list) -> None:
    while r and r[-1] == 0:
        r.pop()


def _pexquo(a: Poly, b: Poly) -> Poly:
    """Exact quotient a / b over Z[s]; raises if b does not divide a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    if len(b) == 1:
        c = b[0]
        out = []
        for x in a:
            qt, rm = divmod(x, c)
            if rm:
                raise ArithmeticError("inexact polynomial division")
            out.append(qt)
        return tuple(out)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    qt = [0] * (len(a) - db) if len(a) > db else []
    while r and len(r) - 1 >= db:
        c, rm = divmod(r[-1], lb)
        if rm:
            raise ArithmeticError("inexact polynomial division")
        k = len(r) - 1 - db
        qt[k] = c
        for i, y in enumerate(b):
            r[i + k] -= c * y
        _strip_list(r)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _trim(qt)


def _primitive(a: Poly) -> Poly:
    c = _content(a)
    if a and a[-1] < 0:
        c = -c
    return _pdiv_int(a, c) if c not in (0, 1) else a


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """GCD over Z[s] with positive leading coefficient (subresultant PRS)."""
    if not a:
        return _primitive(b) if b else ()
    if not b:
        return _primitive(a)
    ca, cb = _content(a), _content(b)
    c = igcd(ca, cb)
    if len(a) == 1 or len(b) == 1:
        return (c,)
    a = _pdiv_int(a, ca)
    b = _pdiv_int(b, cb)
    if len(a) < len(b):
        a, b = b, a
    g = h = 1
    while True:
        d = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            break
        if len(r) == 1:
            return (c,)
        a, b = b, _pdiv_int(r, g * h ** d)
        g = a[-1]
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = g ** d // h ** (d - 1)
    b = _primitive(b)
    return tuple(c * x for x in b) if c != 1 else b


def _low_zeros(a: Poly) -> int:
    k = 0
    while a[k] == 0:
        k += 1
    return k


# ---------------------------------------------------------------------------

_ONE_POLY = (1,)


class Scalar:
    """An element of Q(s), s = q**(1/2), in canonical form.

    Supports ``+ - * /``, integer powers, ``==`` and hashing. Integers and
    :class:`fractions.Fraction` are coerced automatically.
    """

    __slots__ = ("shift", "num", "den", "_hash")

    def __init__(self, value: Union[int, Fraction, "Scalar"] = 0):
        if isinstance(value, Scalar):
            self.shift, self.num, self.den = value.shift, value.num, value.den
        elif isinstance(value, Fraction):
            self.shift = 0
            self.num = (value.numerator,) if value.numerator else ()
            self.den = (value.denominator,)
        else:
            v = int(value)
            self.shift = 0
            self.num = (v,) if v else ()
            self.den = _ONE_POLY
        self._hash = None

    @classmethod
    def _raw(cls, shift: int, num: Poly, den: Poly) -> "Scalar":
        obj = object.__new__(cls)
        obj.shift = shift if num else 0
        obj.num = num
        obj.den = den if num else _ONE_POLY
        obj._hash = None
        return obj

    @classmethod
    def from_parts(cls, shift: int, num: Iterable[int], den: Iterable[int] = (1,)) -> "Scalar":
        """Build ``s**shift * num(s) / den(s)`` and bring it to canonical form."""
        return cls._normalize(shift, _trim(list(num)), _trim(list(den)))

    @classmethod
    def laurent(cls, terms: dict) -> "Scalar":
        """Build a Laurent polynomial from ``{s_exponent: integer coefficient}``."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo = min(terms)
        hi = max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = c
        return cls._raw(lo, tuple(coeffs), _ONE_POLY)

    @classmethod
    def _normalize(cls, shift: int, num: Poly, den: Poly) -> "Scalar":
        if not den:
            raise ZeroDivisionError("Scalar division by zero")
        if not num:
            return ZERO
        k = _low_zeros(num)
        if k:
            num = num[k:]
            shift += k
        k = _low_zeros(den)
        if k:
            den = den[k:]
            shift -= k
        if len(den) > 1 or den[0] != 1:
            g = poly_gcd(num, den)
            if g != _ONE_POLY:
                num = _pexquo(num, g)
                den = _pexquo(den, g)
            if den[-1] < 0:
                num = _pneg(num)
                den = _pneg(den)
        return cls._raw(shift, num, den)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_laurent(self) -> bool:
        return self.den == _ONE_POLY

    def is_integer(self) -> bool:
        return self.den == _ONE_POLY and self.shift == 0 and len(self.num) <= 1

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        e1, e2 = self.shift, other.shift
        e = min(e1, e2)
        if self.den == other.den:
            n = _padd(_pshift(self.num, e1 - e), _pshift(other.num, e2 - e))
            if self.den == _ONE_POLY:
                if not n:
                    return ZERO
                k = _low_zeros(n)
                return Scalar._raw(e + k, n[k:] if k else n, _ONE_POLY)
            return Scalar._normalize(e, n, self.den)
        g = poly_gcd(self.den, other.den)
        d1 = _pexquo(self.den, g)
        d2 = _pexquo(other.den, g)
        n = _padd(_pmul(_pshift(self.num, e1 - e), d2), _pmul(_pshift(other.num, e2 - e), d1))
        return Scalar._normalize(e, n, _pmul(self.den, d2))

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return Scalar._raw(self.shift, _pneg(self.num), self.den)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                if other == 0 or not self.num:
                    return ZERO
                if self.den == _ONE_POLY:
                    return Scalar._raw(self.shift, tuple(other * c for c in self.num), _ONE_POLY)
                other = Scalar(other)
            elif isinstance(other, Fraction):
                other = Scalar(other)
            else:
                return NotImplemented
        if not self.num or not other.num:
            return ZERO
        shift = self.shift + other.shift
        if self.den == _ONE_POLY and other.den == _ONE_POLY:
            return Scalar._raw(shift, _pmul(self.num, other.num), _ONE_POLY)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d2 != _ONE_POLY:
            g = poly_gcd(n1, d2)
            if g != _ONE_POLY:
                n1, d2 = _pexquo(n1, g), _pexquo(d2, g)
        if d1 != _ONE_POLY:
            g = poly_gcd(n2, d1)
            if g != _ONE_POLY:
                n2, d1 = _pexquo(n2, g), _pexquo(d1, g)
        n = _pmul(n1, n2)
        d = _pmul(d1, d2)
        if d[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return Scalar._raw(shift, n, d)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverse of zero Scalar")
        n, d = self.den, self.num
        if d[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return Scalar._raw(-self.shift, n, d)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return Scalar(other) * self.inv() if isinstance(other, (int, Fraction)) else NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shift, self.num, self.den))
        return self._hash

    def key(self) -> tuple:
        return (self.shift, self.num, self.den)

    def qconj(self) -> "Scalar":
        """q-conjugation s -> 1/s (so q -> 1/q)."""
        if not self.num:
            return self
        n = tuple(reversed(self.num))
        d = tuple(reversed(self.den))
        shift = -self.shift - (len(self.num) - 1) + (len(self.den) - 1)
        if d[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return Scalar._raw(shift, n, d)

    def eval(self, s0) -> Fraction:
        """Exact value at s = s0 (a nonzero rational)."""
        s0 = Fraction(s0)
        if s0 == 0:
            raise ValueError("cannot evaluate at s = 0")
        dv = _peval(self.den, s0)
        if dv == 0:
            raise PoleError(f"pole at s = {s0}")
        return s0 ** self.shift * _peval(self.num, s0) / dv

    def classical_limit(self) -> Fraction:
        """Value at q = 1 (s = 1)."""
        try:
            return self.eval(1)
        except PoleError:
            raise NotClassicalError(f"{self} has a pole at q = 1") from None

    def laurent_terms(self) -> dict:
        """``{s_exponent: coefficient}`` of the numerator Laurent polynomial."""
        return {self.shift + i: c for i, c in enumerate(self.num) if c}

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        num = _format_laurent({self.shift + i: c for i, c in enumerate(self.num) if c})
        if self.den == _ONE_POLY:
            return f"({num})"
        den = _format_laurent({i: c for i, c in enumerate(self.den) if c})
        return f"({num}) / ({den})"


def _peval(a: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _format_exp(e: int) -> str:
    return str(e // 2) if e % 2 == 0 else f"{e}/2"


def _format_laurent(terms: dict) -> str:
    if not terms:
        return "0"
    parts = []
    for i, e in enumerate(sorted(terms, reverse=True)):
        c = terms[e]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        elif a == 1:
            body = f"q^({_format_exp(e)})"
        else:
            body = f"{a}*q^({_format_exp(e)})"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


ZERO = Scalar._raw(0, (), _ONE_POLY)
ONE = Scalar._raw(0, (1,), _ONE_POLY)
s = Scalar._raw(1, (1,), _ONE_POLY)
q = Scalar._raw(2, (1,), _ONE_POLY)


def q_power(k) -> Scalar:
    """q**k for integer or half-integer k (int, Fraction, or float like 0.5)."""
    e = Fraction(k) * 2
    if e.denominator != 1:
        raise ValueError(f"q exponent {k} is not a half-integer")
    return Scalar._raw(int(e), (1,), _ONE_POLY)


def s_power(m: int) -> Scalar:
    return Scalar._raw(m, (1,), _ONE_POLY)


def qint(k: int) -> Scalar:
    """The q-integer (q**k - q**-k) / (q - 1/q)."""
    return (q_power(k) - q_power(-k)) / (q - q.inv())


# ---------------------------------------------------------------------------
# parsing

_TERM_RE = re.compile(
    r"\s*([+-])?\s*(?:(\d+)\s*(?:\*\s*q\^\(\s*(-?\d+(?:/2)?)\s*\))?|q\^\(\s*(-?\d+(?:/2)?)\s*\))"
)


def _parse_exp(text: str) -> int:
    if text.endswith("/2"):
        return int(text[:-2])
    return 2 * int(text)


def _parse_laurent(text: str) -> dict:
    text = text.strip()
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial at {text[pos:]!r}")
        sign, coeff, exp1, exp2 = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing sign in {text!r}")
        c = int(coeff) if coeff is not None else 1
        if sign == "-":
            c = -c
        if exp1 is not None:
            e = _parse_exp(exp1)
        elif exp2 is not None:
            e = _parse_exp(exp2)
        else:
            e = 0
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
        first = False
    return terms


def parse_scalar(text: str) -> Scalar:
    """Inverse of ``str(Scalar)``: ``"(<laurent>)"`` or ``"(<laurent>) / (<laurent>)"``."""
    text = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", text)
    if m:
        num, den = m.group(1), m.group(2)
    else:
        m = re.fullmatch(r"\((.*)\)", text)
        if not m:
            raise ValueError(f"not a scalar: {text!r}")
        num, den = m.group(1), "1"
    return Scalar.laurent(_parse_laurent(num)) / Scalar.laurent(_parse_laurent(den))
